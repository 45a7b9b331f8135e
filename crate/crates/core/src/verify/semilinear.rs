use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{timed, CheckResult, Outcome, Tier};
use crate::classalg::prime_divisors;
use crate::semilinear::{SemilinearElement, SemilinearSl2};
use crate::Result;

/// Searches for an involution `t ∈ PSL₂(3^r)` with `tτ` of order `2r`, where
/// `τ = e·σ⁻¹` has order `3r` and `e` is the lower unitriangular matrix.
pub fn three_r_outcome(r: u32, budget: u64, seed: u64) -> Result<Outcome> {
    if r.is_multiple_of(2) || prime_divisors(r as u128) != [r as u64] {
        return Ok(Outcome::skip("hypothesis: r is not an odd prime"));
    }
    let x = SemilinearSl2::new(3, r)?;
    if x.sl2_order() % r as u128 == 0 {
        return Ok(Outcome::skip(format!("hypothesis: r = {r} divides |SL2(3^{r})| = {}", x.sl2_order())));
    }
    let e = x.matrix([1, 0, 1, 1])?;
    let sigma_inv = SemilinearElement { matrix: [1, 0, 0, 1], twist: r - 1 };
    let tau = x.mul(&e, &sigma_inv);
    let bound = 4 * r as u64 + 1;
    let tau_order = x.projective_order(&tau, bound);
    if tau_order != Some(3 * r as u64) {
        return Ok(Outcome::fail("τ does not have order 3r").with("order", format!("{tau_order:?}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 1..=budget {
        let t = x.random_involution_lift(&mut rng);
        let tt = x.mul(&t, &tau);
        if x.projective_order(&tt, bound) != Some(2 * r as u64) {
            continue;
        }
        let ok = x.projective_order(&t, 3) == Some(2)
            && (1..2 * r as u64).all(|n| x.projective_order(&x.pow(&tt, n), 1) != Some(1))
            && x.projective_order(&x.pow(&tt, 2 * r as u64), 1) == Some(1);
        if !ok {
            return Ok(Outcome::fail("witness failed re-verification by powers").with("t", format!("{:?}", t.matrix)));
        }
        return Ok(Outcome::pass()
            .with("q", x.field().order())
            .with("order(tau)", 3 * r)
            .with("t", format!("{:?}", t.matrix))
            .with("order(t·tau)", 2 * r)
            .with("trials", trial));
    }
    Ok(Outcome::inconclusive(format!("no witness within {budget} trials")))
}

pub fn check_3r_to_2r(r: u32, budget: u64, seed: u64) -> CheckResult {
    timed(&format!("lemma-3.9-r{r}"), Tier::Fast, Some(seed), || three_r_outcome(r, budget, seed))
}
