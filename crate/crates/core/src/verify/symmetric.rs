use std::ops::RangeInclusive;

use super::structure::{elements, normal_complement_exists};
use super::{timed, CheckResult, Outcome, Tier};
use crate::constructions::{alternating, psl2, symmetric};
use crate::named::frobenius21;
use crate::{ClassPartition, Group, Permutation, Result};

/// Every `x ∈ Sym(n)` with `|Fix(x)| = t < n − 3` has `y ∈ Alt(n)` with
/// `n > |Fix(x x^y)| ≥ t + 1`.
pub fn sym_fix_outcome(n: usize) -> Result<Outcome> {
    if n < 5 {
        return Ok(Outcome::skip("n must be at least 5"));
    }
    let alt: Vec<(Permutation, Permutation)> = elements(&alternating(n)?)?.into_iter().map(|y| (y.inverse(), y)).collect();
    let mut checked = 0u64;
    let mut failure = None;
    symmetric(n)?.for_each_element(crate::DEFAULT_ENUMERATION_CAP, |_, x| {
        let t = x.num_fixed_points();
        if failure.is_some() || t + 3 >= n {
            return;
        }
        checked += 1;
        let ok = alt.iter().any(|(yi, y)| {
            let f = x.mul(&yi.mul(x).mul(y)).num_fixed_points();
            f < n && f > t
        });
        if !ok {
            failure = Some(x.clone());
        }
    })?;
    Ok(match failure {
        Some(x) => Outcome::fail("no y ∈ Alt(n) raises the fixed-point count").with("x", x),
        None => Outcome::pass().with("elements checked", checked),
    })
}

pub fn check_sym_fix(ns: RangeInclusive<usize>) -> CheckResult {
    timed("lemma-4.1", Tier::Fast, None, || {
        let parts = ns.map(|n| Ok((format!("n={n}"), sym_fix_outcome(n)?))).collect::<Result<Vec<_>>>()?;
        Ok(Outcome::combine(parts))
    })
}

/// Every nontrivial odd-order `x ∈ Alt(n)` has an involution `z ∈ Alt(n)` with
/// `4 | order(zx)`.
pub fn altfact_outcome(n: usize) -> Result<Outcome> {
    if !(6..=9).contains(&n) {
        return Ok(Outcome::skip("n must lie in 6..=9"));
    }
    let g = alternating(n)?;
    let involutions: Vec<Permutation> = elements(&g)?.into_iter().filter(|z| z.order() == 2).collect();
    let mut checked = 0u64;
    let mut failure = None;
    g.for_each_element(crate::DEFAULT_ENUMERATION_CAP, |_, x| {
        if failure.is_some() || x.is_identity() || x.order() % 2 == 0 {
            return;
        }
        checked += 1;
        if !involutions.iter().any(|z| z.mul(x).order() % 4 == 0) {
            failure = Some(x.clone());
        }
    })?;
    Ok(match failure {
        Some(x) => Outcome::fail("no involution z with 4 | order(zx)").with("x", x),
        None => Outcome::pass().with("elements checked", checked).with("involutions", involutions.len()),
    })
}

pub fn check_altfact(ns: RangeInclusive<usize>) -> CheckResult {
    timed("lemma-4.2", Tier::Fast, None, || {
        let parts = ns.map(|n| Ok((format!("n={n}"), altfact_outcome(n)?))).collect::<Result<Vec<_>>>()?;
        Ok(Outcome::combine(parts))
    })
}

/// Without a normal 2-complement, some commutator has even order.
pub fn commutator_even_outcome(g: &Group) -> Result<Outcome> {
    let part = ClassPartition::new(g)?;
    if normal_complement_exists(&part, 2) {
        return Ok(Outcome::skip("hypothesis: G has a normal 2-complement"));
    }
    let elts = elements(g)?;
    for x in &elts {
        for y in &elts {
            let c = Permutation::commutator(x, y);
            if c.order().is_multiple_of(2) {
                return Ok(Outcome::pass().with("x", x).with("y", y).with("order([x,y])", c.order()));
            }
        }
    }
    Ok(Outcome::fail("every commutator has odd order"))
}

pub fn check_commutator_even() -> CheckResult {
    timed("lemma-4.3", Tier::Fast, None, || {
        let instances = [
            ("alt:5", alternating(5)?),
            ("psl2:7", psl2(7)?),
            ("sym:4", symmetric(4)?),
            ("name:Frob21", frobenius21()?),
            ("sym:3", symmetric(3)?),
        ];
        let mut parts = Vec::new();
        for (name, g) in instances {
            parts.push((name.to_string(), commutator_even_outcome(&g)?));
        }
        Ok(Outcome::combine(parts))
    })
}
