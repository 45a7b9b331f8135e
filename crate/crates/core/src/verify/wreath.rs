use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::structure::{centralizes, elements, o_p_prime};
use super::{timed, CheckResult, Outcome, Status, Tier};
use crate::constructions::{alternating, cyclic, direct_product, symmetric, wreath_cyclic, Wreath};
use crate::named::frobenius21;
use crate::{ClassPartition, Group, Permutation, Result};

/// `(x^w x)^n` against `[s, t]` in `H ≀ Cₙ` with `w = (s, t⁻¹, 1, …, 1)`.
pub fn wreath_orders_outcome(w: &Wreath, s: &Permutation, t: &Permutation) -> Result<Outcome> {
    let n = w.blocks;
    let mut parts = vec![Permutation::identity(w.base_degree); n];
    parts[0] = s.clone();
    parts[1] = t.inverse();
    let wel = w.base_element(&parts)?;
    let x = w.top_cycle();
    let prod = x.conjugate_by(&wel).mul(&x).pow(n as i64);
    let lhs = prod.order();
    let ell = Permutation::commutator(s, t).order();
    Ok(Outcome::from_bool(lhs == ell, "order of (x^w x)^n differs from the order of [s,t]")
        .with("s", s)
        .with("t", t)
        .with("n", n)
        .with("order((x^w x)^n)", lhs)
        .with("order([s,t])", ell))
}

pub fn check_wreath_orders(h: &Group, s: &Permutation, t: &Permutation, n: usize) -> CheckResult {
    timed("lemma-2.1", Tier::Fast, None, || {
        if !h.is_member(s)? || !h.is_member(t)? {
            return Ok(Outcome::skip("s and t must lie in H"));
        }
        wreath_orders_outcome(&wreath_cyclic(h, n)?, s, t)
    })
}

fn wreath_order_corpus() -> Result<Vec<(&'static str, Group)>> {
    Ok(vec![
        ("sym:3", symmetric(3)?),
        ("alt:4", alternating(4)?),
        ("sym:4", symmetric(4)?),
        ("alt:5", alternating(5)?),
        ("name:Frob21", frobenius21()?),
        ("cyclic:4", cyclic(4)?),
        ("wreath(sym:2,2)", wreath_cyclic(&symmetric(2)?, 2)?.group),
    ])
}

/// `count` instances with `H` from a fixed corpus, `n ∈ 2..=6` and random `s, t`.
/// The identity is required for odd `n`; for even `n`, `x²` does not generate `C`
/// and mismatches are tallied as counterexamples rather than failures.
pub fn check_wreath_orders_random(count: usize, seed: u64) -> CheckResult {
    timed("lemma-2.1", Tier::Fast, Some(seed), || {
        let corpus = wreath_order_corpus()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut cache: Vec<Option<Wreath>> = vec![None; corpus.len() * 5];
        let (mut odd, mut even, mut nontrivial) = (0usize, 0usize, 0usize);
        let mut counterexamples = Vec::new();
        for i in 0..count {
            let hi = rng.gen_range(0..corpus.len());
            let n = rng.gen_range(2..=6usize);
            let (name, h) = &corpus[hi];
            let slot = &mut cache[hi * 5 + n - 2];
            if slot.is_none() {
                *slot = Some(wreath_cyclic(h, n)?);
            }
            let w = slot.as_ref().unwrap();
            let s = h.random_element(&mut rng);
            let t = h.random_element(&mut rng);
            let o = wreath_orders_outcome(w, &s, &t)?;
            if n % 2 == 0 {
                even += 1;
                if o.status != Status::Pass {
                    counterexamples.push(format!("H={name} n={n} s={s} t={t}"));
                }
                continue;
            }
            odd += 1;
            if o.status != Status::Pass {
                return Ok(o.with("instance", i).with("H", name));
            }
            if !Permutation::commutator(&s, &t).is_identity() {
                nontrivial += 1;
            }
        }
        let mut o = Outcome::pass()
            .with("odd-n instances", odd)
            .with("nontrivial commutators", nontrivial)
            .with("even-n instances", even)
            .with("even-n counterexamples", counterexamples.len());
        if let Some(c) = counterexamples.first() {
            o.push("first even-n counterexample", c);
        }
        Ok(o)
    })
}

/// For every `x ∈ P ∖ [P,t]`: `⟨xx^t⟩ ∩ [P,t] = 1` and `xx^t` centralizes an involution.
pub fn complements_outcome(g: &Group, t: &Permutation) -> Result<Outcome> {
    if !g.is_member(t)? || t.order() != 2 {
        return Ok(Outcome::skip("t is not an involution of G"));
    }
    let part = ClassPartition::new(g)?;
    let p = o_p_prime(&part, 2);
    if g.order() != 2 * p.order() {
        return Ok(Outcome::skip(format!("|G : O_2'(G)| = {} is not 2", g.order() / p.order())));
    }
    let p_elts = elements(&p)?;
    let comms: Vec<Permutation> = p_elts.iter().map(|x| Permutation::commutator(x, t)).filter(|c| !c.is_identity()).collect();
    let v = if comms.is_empty() { Group::trivial(g.degree()) } else { Group::new(comms, g.degree())? };
    if !v.is_abelian() {
        return Ok(Outcome::skip("[P,t] is not abelian"));
    }
    let involutions: Vec<Permutation> = elements(g)?.into_iter().filter(|s| s.order() == 2).collect();
    let mut eligible = 0usize;
    for x in p_elts.iter().filter(|x| !v.contains(x)) {
        eligible += 1;
        let y = x.mul(&x.conjugate_by(t));
        let k = y.order();
        if let Some(e) = (1..k).find(|&e| v.contains(&y.pow(e as i64))) {
            return Ok(Outcome::fail("a nontrivial power of xx^t lies in [P,t]").with("x", x).with("t", t).with("power", e));
        }
        if !involutions.iter().any(|s| centralizes(&y, std::slice::from_ref(s))) {
            return Ok(Outcome::fail("xx^t centralizes no involution").with("x", x).with("t", t));
        }
    }
    Ok(Outcome::pass().with("|P|", p.order()).with("|[P,t]|", v.order()).with("eligible x", eligible))
}

fn complement_instances() -> Result<Vec<(&'static str, Group)>> {
    let s3 = symmetric(3)?;
    Ok(vec![
        ("sym:3", s3.clone()),
        ("cyclic:3 x sym:3", direct_product(&cyclic(3)?, &s3)?),
        ("cyclic:5 x sym:3", direct_product(&cyclic(5)?, &s3)?),
        ("Frob21 x sym:3", direct_product(&frobenius21()?, &s3)?),
        ("wreath(cyclic:3,2)", wreath_cyclic(&cyclic(3)?, 2)?.group),
        ("wreath(cyclic:5,2)", wreath_cyclic(&cyclic(5)?, 2)?.group),
        ("sym:3 x sym:3", direct_product(&s3, &s3)?),
        ("alt:4", alternating(4)?),
    ])
}

/// Runs the complement check over every involution of each packaged instance.
pub fn check_complements() -> CheckResult {
    timed("lemma-2.2", Tier::Fast, None, || {
        let mut parts = Vec::new();
        for (name, g) in complement_instances()? {
            let mut per_t = Vec::new();
            for t in elements(&g)?.into_iter().filter(|t| t.order() == 2) {
                per_t.push((t.to_string(), complements_outcome(&g, &t)?));
                if per_t.last().unwrap().1.status == Status::Skip {
                    break;
                }
            }
            let o = Outcome::combine(per_t);
            let summary = Outcome { witnesses: Vec::new(), ..o.clone() };
            parts.push((name.to_string(), if o.status == Status::Fail { o } else { summary }));
        }
        Ok(Outcome::combine(parts))
    })
}

fn same_subgroup(a: &Group, b: &Group) -> bool {
    a.order() == b.order() && a.is_subgroup_of(b)
}

fn conjugate_group(k: &Group, g: &Permutation) -> Result<Group> {
    let gens: Vec<Permutation> = k.generators().iter().map(|x| x.conjugate_by(g)).collect();
    if gens.is_empty() {
        return Ok(k.clone());
    }
    Group::new(gens, k.degree())
}

struct ProdInvInstance {
    h: Group,
    w: Wreath,
    n1_gens: Vec<Permutation>,
    n1: Group,
}

impl ProdInvInstance {
    fn new(h: &Group, n: usize) -> Result<Self> {
        let w = wreath_cyclic(h, n)?;
        let d = h.degree();
        let n1_gens: Vec<Permutation> = h
            .generators()
            .iter()
            .map(|g| {
                let mut parts = vec![Permutation::identity(d); n];
                parts[0] = g.clone();
                w.base_element(&parts)
            })
            .collect::<Result<_>>()?;
        let n1 = Group::new(n1_gens.clone(), d * n)?;
        Ok(ProdInvInstance { h: h.clone(), w, n1_gens, n1 })
    }

    /// `C_G(N) = 1`, by enumeration of `G`.
    fn centralizer_of_base_trivial(&self) -> Result<bool> {
        let x = self.w.top_cycle();
        let n_gens: Vec<Permutation> = (0..self.w.blocks as i64)
            .flat_map(|i| self.n1_gens.iter().map(move |g| (g.clone(), i)))
            .map(|(g, i)| g.conjugate_by(&x.pow(i)))
            .collect();
        let mut trivial = true;
        self.w.group.for_each_element(crate::DEFAULT_ENUMERATION_CAP, |_, g| {
            if trivial && !g.is_identity() && centralizes(g, &n_gens) {
                trivial = false;
            }
        })?;
        Ok(trivial)
    }

    fn random_n1<R: Rng>(&self, rng: &mut R) -> Permutation {
        self.n1.random_element(rng)
    }

    fn outcome<R: Rng>(&self, rng: &mut R) -> Result<Outcome> {
        let n = self.w.blocks;
        let base = self.w.base_element(&(0..n).map(|_| self.h.random_element(rng)).collect::<Vec<_>>())?;
        let shift = rng.gen_range(1..n) as i64;
        let a = base.mul(&self.w.top_cycle().pow(shift));
        if self.w.top_shift(&a).is_none_or(|s| num_integer::gcd(s, n) != 1) {
            return Ok(Outcome::skip("<a> is not transitive on the factors"));
        }
        let b = a.pow(n as i64);
        let z = self.random_n1(rng);
        let bz = b.mul(&z);
        let mut m = 1u64;
        let mut y = bz.clone();
        while !centralizes(&y, &self.n1_gens) {
            y = y.mul(&bz);
            m += 1;
        }
        let az = a.mul(&z);
        let mut o = Outcome::from_bool(az.order() == n as u64 * m, "order(az) differs from n·m")
            .with("a", &a)
            .with("z", &z)
            .with("m", m)
            .with("order(az)", az.order());
        if o.status != Status::Pass {
            return Ok(o);
        }
        if z.is_identity() {
            return Ok(o);
        }
        let k = self.n1.normal_closure_unchecked(std::slice::from_ref(&z));
        if !same_subgroup(&conjugate_group(&k, &bz)?, &k) {
            return Ok(Outcome::skip("K is not normalized by bz"));
        }
        let mut orbit = 1usize;
        let mut cur = conjugate_group(&k, &az)?;
        while !same_subgroup(&cur, &k) {
            orbit += 1;
            cur = conjugate_group(&cur, &az)?;
        }
        if orbit != n {
            o = Outcome::fail("orbit of K under <az> has the wrong size").with("a", &a).with("z", &z);
        }
        Ok(o.with("|K|", k.order()).with("|K^<az>|", orbit))
    }
}

/// Random instances of `a = base · top^s`, `z ∈ N₁` in `H ≀ Cₙ` for centerless `H`:
/// `order(az) = n·m`, and the normal closure of `z` in `N₁` has an orbit of size `n`
/// under `⟨az⟩`.
pub fn check_prod_inv(count: usize, seed: u64) -> CheckResult {
    timed("lemma-2.4-2.5", Tier::Fast, Some(seed), || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut parts = Vec::new();
        for (name, h, n) in [("alt:4", alternating(4)?, 5), ("sym:3", symmetric(3)?, 3), ("alt:5", alternating(5)?, 2)] {
            let inst = ProdInvInstance::new(&h, n)?;
            if !inst.centralizer_of_base_trivial()? {
                parts.push((format!("wreath({name},{n})"), Outcome::skip("C_G(N) is not trivial")));
                continue;
            }
            let mut runs = Vec::new();
            for i in 0..count {
                runs.push((i.to_string(), inst.outcome(&mut rng)?));
            }
            let fails: Vec<_> = runs.iter().filter(|(_, o)| o.status == Status::Fail).cloned().collect();
            let orders: Vec<String> = runs.iter().filter_map(|(_, o)| o.witnesses.iter().find(|w| w.label == "m")).map(|w| w.value.clone()).collect();
            let o = if fails.is_empty() {
                Outcome::pass().with("instances", count).with("m values", orders.join(","))
            } else {
                Outcome::combine(fails)
            };
            parts.push((format!("wreath({name},{n})"), o));
        }
        Ok(Outcome::combine(parts))
    })
}
