use super::structure::{centralizes, elements, is_power_of_u128, o_p};
use super::{timed, CheckResult, Outcome, Status, Tier};
use crate::constructions::{cyclic, semilinear_affine};
use crate::{ClassPartition, Group, NormalSubset, Permutation, Result};

fn p_part(n: u128, p: u64) -> u128 {
    let mut out = 1;
    let mut n = n;
    while n.is_multiple_of(p as u128) {
        n /= p as u128;
        out *= p as u128;
    }
    out
}

fn is_elementary_abelian(q: &Group, p: u64) -> bool {
    q.is_abelian() && q.generators().iter().all(|g| g.order() == 1 || g.order() == p)
}

/// A Sylow `p`-subgroup containing `seed`, grown one `p`-element at a time.
fn sylow_containing(g: &Group, seed: &Group, p: u64) -> Result<Group> {
    let target = p_part(g.order(), p);
    let mut s = seed.clone();
    if s.order() == target {
        return Ok(s);
    }
    let candidates: Vec<Permutation> = elements(g)?.into_iter().filter(|x| is_power_of_u128(x.order() as u128, p)).collect();
    while s.order() < target {
        let mut grown = false;
        for x in candidates.iter().filter(|x| !s.contains(x)) {
            let mut gens = s.generators().to_vec();
            gens.push(x.clone());
            let t = Group::new(gens, g.degree())?;
            if is_power_of_u128(t.order(), p) {
                s = t;
                grown = true;
                break;
            }
        }
        if !grown {
            break;
        }
    }
    Ok(s)
}

/// Validates every hypothesis on `(G, p, w)` and then looks for a conjugate `c` of
/// `w` with `w·c` of order other than `p^{n+1}`.
pub fn jack3_outcome(g: &Group, p: u64, w: &Permutation) -> Result<Outcome> {
    if !g.is_member(w)? {
        return Ok(Outcome::skip("w is not in G"));
    }
    let part = ClassPartition::new(g)?;
    let q = o_p(&part, p);
    if !is_elementary_abelian(&q, p) {
        return Ok(Outcome::skip("hypothesis: O_p(G) is not elementary abelian"));
    }
    if !is_power_of_u128(w.order() as u128, p) {
        return Ok(Outcome::skip("hypothesis: w is not a p-element"));
    }
    let mut seed = q.generators().to_vec();
    seed.push(w.clone());
    let s = sylow_containing(g, &Group::new(seed, g.degree())?, p)?;
    if s.order() != p_part(g.order(), p) {
        return Ok(Outcome::skip("no Sylow p-subgroup containing w was found"));
    }
    let index = s.order() / q.order();
    let n = (0..).find(|&e| (p as u128).pow(e) == index).unwrap_or(0);
    if n == 0 {
        return Ok(Outcome::skip("hypothesis: |S : Q| = p^n with n ≥ 1 fails"));
    }
    let pn1 = (p as u128).pow(n - 1) as i64;
    if !elements(&s)?.iter().any(|x| !q.contains(&x.pow(pn1))) {
        return Ok(Outcome::skip("hypothesis: S/Q is not cyclic"));
    }
    let target = p.pow(n + 1);
    if w.order() != target {
        return Ok(Outcome::skip(format!("hypothesis: w has order {} rather than p^(n+1) = {target}", w.order())));
    }
    let mut kseeds = q.generators().to_vec();
    kseeds.extend(
        part.classes().iter().filter(|c| c.order % p != 0 && c.order > 1).map(|c| c.representative.clone()),
    );
    let k = g.normal_closure_unchecked(&kseeds);
    if g.order() / k.order() != index || !is_power_of_u128(s.order() / q.order(), p) || (k.order() / q.order()).is_multiple_of(p as u128) {
        return Ok(Outcome::skip("hypothesis: no normal p-complement K/Q in G/Q"));
    }
    if !k.derived_subgroup().is_subgroup_of(&q) {
        return Ok(Outcome::skip("hypothesis: K/Q is not abelian"));
    }
    let cqs: Vec<Permutation> =
        elements(&q)?.into_iter().filter(|x| !x.is_identity() && centralizes(x, s.generators())).collect();
    for x in &cqs {
        let c = part.class_of_member(x);
        if g.order() / part.classes()[c].size as u128 != s.order() {
            return Ok(Outcome::skip("hypothesis (2.1): some nontrivial X ≤ C_Q(S) has C_G(X) ≠ S").with("x", x));
        }
    }
    let wc = part.class_of_member(w);
    let base = Outcome::pass()
        .with("|Q|", q.order())
        .with("|S|", s.order())
        .with("n", n)
        .with("|C_Q(S)|", cqs.len() + 1)
        .with("w", w);
    let found = part.class_members(wc).find(|c| w.mul(c).order() != target);
    Ok(match found {
        Some(c) => base.with("conjugate", &c).with("order(w·conjugate)", w.mul(&c).order()),
        None => Outcome::fail("every product of two conjugates of w has order p^(n+1)").with("w", w),
    })
}

fn first_of_order(g: &Group, order: u64) -> Result<Option<Permutation>> {
    let mut found = None;
    g.for_each_element(crate::DEFAULT_ENUMERATION_CAP, |_, x| {
        if found.is_none() && x.order() == order {
            found = Some(x.clone());
        }
    })?;
    Ok(found)
}

pub fn check_jack3() -> CheckResult {
    timed("prop-2.9", Tier::Fast, None, || {
        let mut parts = Vec::new();
        for (name, g, p, ord) in [
            ("aff(3,3,13,3)", semilinear_affine(3, 3, 13, 3)?, 3, 9),
            ("aff(5,5,11,5)", semilinear_affine(5, 5, 11, 5)?, 5, 25),
            ("cyclic:9", cyclic(9)?, 3, 9),
        ] {
            let o = match first_of_order(&g, ord)? {
                Some(w) => jack3_outcome(&g, p, &w)?,
                None => Outcome::skip(format!("no element of order {ord}")),
            };
            parts.push((name.to_string(), o));
        }
        let expected_skip = parts[2].1.status == Status::Skip;
        let mut o = Outcome::combine(parts);
        if !expected_skip && o.status != Status::Fail {
            o = Outcome::fail("the hypothesis gate accepted a non-elementary-abelian O_p(G)");
        }
        Ok(o)
    })
}

/// `T = O₂(G)` an elementary abelian Sylow 2-subgroup, `G/T` Frobenius with
/// complement `H/T`, `|C_T(H)| = 2` and `N_G(C_T(H)) = H`; then for every odd-order
/// `x ∈ H^#`, `(x^G)²` has an element of even order.
pub fn even_order_square_outcome(g: &Group, h: &Group) -> Result<Outcome> {
    if !h.is_subgroup_of(g) {
        return Ok(Outcome::skip("H is not a subgroup of G"));
    }
    let part = ClassPartition::new(g)?;
    let t = o_p(&part, 2);
    if t.order() != p_part(g.order(), 2) || !is_elementary_abelian(&t, 2) {
        return Ok(Outcome::skip("hypothesis: O_2(G) is not an elementary abelian Sylow 2-subgroup"));
    }
    if !t.is_subgroup_of(h) || h.order() == t.order() || h.order() == g.order() {
        return Ok(Outcome::skip("hypothesis: T < H < G fails"));
    }
    let h_elts = elements(h)?;
    let mut frobenius = true;
    g.for_each_element(crate::DEFAULT_ENUMERATION_CAP, |_, x| {
        if frobenius && !h.contains(x) {
            let meet = h_elts.iter().filter(|y| h.contains(&y.conjugate_by(x))).count();
            frobenius = meet as u128 == t.order();
        }
    })?;
    if !frobenius {
        return Ok(Outcome::skip("hypothesis: G/T is not Frobenius with complement H/T"));
    }
    let cth: Vec<Permutation> =
        elements(&t)?.into_iter().filter(|x| !x.is_identity() && centralizes(x, h.generators())).collect();
    if cth.len() != 1 {
        return Ok(Outcome::skip("hypothesis: |C_T(H)| ≠ 2"));
    }
    let r = &cth[0];
    if g.order() / part.classes()[part.class_of_member(r)].size as u128 != h.order() {
        return Ok(Outcome::skip("hypothesis: N_G(C_T(H)) ≠ H"));
    }
    let odd: Vec<usize> = {
        let mut cs: Vec<usize> = h_elts
            .iter()
            .filter(|x| !x.is_identity() && x.order() % 2 == 1)
            .map(|x| part.class_of_member(x))
            .collect();
        cs.sort_unstable();
        cs.dedup();
        cs
    };
    let mut o = Outcome::pass().with("|T|", t.order()).with("|H|", h.order());
    for c in odd {
        let sq = part.class_product(c, c);
        let even: Vec<String> = part.names(&NormalSubset::from_classes(
            part.len(),
            sq.iter().filter(|&k| part.classes()[k].order % 2 == 0),
        ));
        let name = &part.classes()[c].name;
        if even.is_empty() {
            return Ok(Outcome::fail("K² has no element of even order").with("class", name));
        }
        o.push(format!("{name}² even classes"), even.join(","));
    }
    Ok(o)
}

pub fn check_even_order_square() -> CheckResult {
    timed("cor-3.4", Tier::Fast, None, || {
        let mut parts = Vec::new();
        for (name, p, k, m, f) in [("aff(2,3,7,3)", 2, 3, 7, 3), ("aff(2,5,31,5)", 2, 5, 31, 5)] {
            let g = semilinear_affine(p, k, m, f)?;
            let gens = g.generators();
            let mut hg = gens[..k as usize].to_vec();
            hg.push(gens[gens.len() - 1].clone());
            let h = g.subgroup(hg)?;
            parts.push((name.to_string(), even_order_square_outcome(&g, &h)?));
        }
        Ok(Outcome::combine(parts))
    })
}
