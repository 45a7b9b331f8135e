use super::structure::elements;
use super::{timed, CheckResult, Outcome, Status, Tier};
use crate::classalg::coset_structure;
use crate::constructions::{cyclic, pgammal2, pgl2, psigmal2, psl2};
use crate::named::psl3_2;
use crate::{ClassPartition, Group, Permutation, Result};

/// `PΓL₂(8)` with `L = PSL₂(8)` and `y ∉ L`: `D_{yL} = G∖L`, `(yL)² = y²L`,
/// `⟨yL⟩ = G` is not soluble and `yL` has an element of order 6.
pub fn check_pgammal2_8_coset() -> CheckResult {
    timed("example-1.2", Tier::Fast, None, || {
        let g = psigmal2(8, 3)?;
        let l = g.derived_subgroup();
        if l.order() != 504 {
            return Ok(Outcome::fail("derived subgroup is not PSL2(8)").with("|L|", l.order()));
        }
        let y = g.generators().iter().find(|x| !l.contains(x)).cloned().expect("G ≠ L");
        let view = coset_structure(&g, &l, &y)?;
        let mut gens = l.generators().to_vec();
        gens.push(y.clone());
        let span = Group::new(gens, g.degree())?;
        let p = &view.partition;
        let orders: Vec<String> = view.orders.iter().map(u64::to_string).collect();
        let ok = view.square_is_y2_coset()
            && view.closure_is_complement()
            && view.square.is_subset_of(&view.closure)
            && view.orders.contains(&6)
            && span.order() == g.order()
            && !span.is_soluble();
        Ok(Outcome::from_bool(ok, "coset structure differs")
            .with("y", &y)
            .with("yL classes", p.names(&view.coset).join(","))
            .with("(yL)^2 classes", p.names(&view.square).join(","))
            .with("y^2L classes", p.names(&view.square_coset).join(","))
            .with("D_K classes", p.names(&view.closure).join(","))
            .with("orders in yL", orders.join(","))
            .with("|<K>|", span.order())
            .with("<K> soluble", span.is_soluble()))
    })
}

/// Whether every coset `gP ≠ P` contains an involution.
pub fn coset_involutions_outcome(g: &Group, p: &Group) -> Result<Outcome> {
    if !p.is_subgroup_of(g) {
        return Err(crate::Error::NotSubgroup);
    }
    let p_elts = elements(p)?;
    let mut seen = vec![false; g.order() as usize];
    let mut cosets = 0u64;
    let mut failure = None;
    g.for_each_element(crate::DEFAULT_ENUMERATION_CAP, |r, a| {
        if seen[r as usize] || failure.is_some() {
            return;
        }
        cosets += 1;
        let mut has_involution = false;
        for x in &p_elts {
            let ax = a.mul(x);
            seen[g.rank_of_member(&ax) as usize] = true;
            has_involution |= ax.order() == 2;
        }
        if !has_involution && !p.contains(a) {
            failure = Some(a.clone());
        }
    })?;
    Ok(match failure {
        Some(a) => Outcome::fail("a coset other than P contains no involution").with("coset representative", a),
        None => Outcome::pass().with("index", cosets).with("|P|", p.order()),
    })
}

/// Turns an expected failure into a pass and anything else into a failure.
fn expect_failure(o: Outcome) -> Outcome {
    match o.status {
        Status::Fail => {
            let mut out = Outcome::pass().with("expected failure", o.reason.unwrap_or_default());
            out.witnesses.extend(o.witnesses);
            out
        }
        s => Outcome::fail(format!("expected a failure, got {s}")),
    }
}

pub fn check_coset_involutions() -> CheckResult {
    timed("cor-4.x", Tier::Fast, None, || {
        let l27 = psl2(7)?;
        let l32 = psl3_2()?;
        let c9 = cyclic(9)?;
        let c3 = c9.subgroup(vec![c9.generators()[0].pow(3)])?;
        let parts = vec![
            ("psl2:7 Borel".to_string(), coset_involutions_outcome(&l27, &l27.stabilizer(0)?)?),
            ("L3_2 point stabilizer".to_string(), coset_involutions_outcome(&l32, &l32.stabilizer(0)?)?),
            ("cyclic:9 over cyclic:3".to_string(), expect_failure(coset_involutions_outcome(&c9, &c3)?)),
        ];
        Ok(Outcome::combine(parts))
    })
}

/// For every pair of regular semisimple classes `L₁, L₂` and every nontrivial
/// semisimple class `g`: `g ∈ L₁L₂`.
pub fn gow_outcome(g: &Group, p: u64) -> Result<Outcome> {
    let part = ClassPartition::new(g)?;
    let cls = part.classes();
    let centralizer = |c: usize| g.order() / cls[c].size as u128;
    let semisimple: Vec<usize> = (1..part.len()).filter(|&c| cls[c].order % p != 0).collect();
    let regular: Vec<usize> = semisimple.iter().copied().filter(|&c| centralizer(c) % p as u128 != 0).collect();
    let excluded: Vec<&str> = (1..part.len()).filter(|c| !regular.contains(c)).map(|c| cls[c].name.as_str()).collect();
    let mut pairs = 0;
    for &a in &regular {
        for &b in &regular {
            pairs += 1;
            let prod = part.class_product(a, b);
            if let Some(&c) = semisimple.iter().find(|&&c| !prod.contains(c)) {
                return Ok(Outcome::fail("a semisimple class misses L1·L2")
                    .with("L1", &cls[a].name)
                    .with("L2", &cls[b].name)
                    .with("g", &cls[c].name));
            }
        }
    }
    let names = |v: &[usize]| v.iter().map(|&c| cls[c].name.clone()).collect::<Vec<_>>().join(",");
    Ok(Outcome::pass()
        .with("regular semisimple", names(&regular))
        .with("semisimple", names(&semisimple))
        .with("skipped as L1/L2", excluded.join(","))
        .with("pairs", pairs))
}

pub fn check_gow() -> CheckResult {
    timed("gow", Tier::Fast, None, || {
        Ok(Outcome::combine(vec![
            ("psl2:7".to_string(), gow_outcome(&psl2(7)?, 7)?),
            ("psl2:8".to_string(), gow_outcome(&psl2(8)?, 2)?),
        ]))
    })
}

/// `G`-classes (not `A`-classes) of the elements of a coset, as rank lists in `A`.
fn g_orbits(a: &Group, g: &Group, coset: &[u64]) -> Vec<Vec<u64>> {
    let mut seen = vec![false; a.order() as usize];
    let mut out = Vec::new();
    for &r in coset {
        if seen[r as usize] {
            continue;
        }
        seen[r as usize] = true;
        let mut orbit = vec![r];
        let mut i = 0;
        while i < orbit.len() {
            let x = a.unrank(orbit[i]);
            for s in g.generators() {
                let y = a.rank_of_member(&x.conjugate_by(s));
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        out.push(orbit);
    }
    out
}

/// Size of the `G`-conjugacy closure of `{x·c : c ∈ C}`, which is `C²`.
fn class_square_size(a: &Group, g: &Group, class: &[u64]) -> usize {
    let x = a.unrank(class[0]);
    let mut seen = vec![false; a.order() as usize];
    let mut stack: Vec<u64> = Vec::new();
    for &r in class {
        let y = a.rank_of_member(&x.mul(&a.unrank(r)));
        if !seen[y as usize] {
            seen[y as usize] = true;
            stack.push(y);
        }
    }
    let mut count = stack.len();
    while let Some(r) = stack.pop() {
        let z = a.unrank(r);
        for s in g.generators() {
            let y = a.rank_of_member(&z.conjugate_by(s));
            if !seen[y as usize] {
                seen[y as usize] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count
}

/// For each coset `αG` of the socle `G = A'` in `A`, some `x ∈ αG` with `(x^G)² = α²G`.
pub fn gt_witness_outcome(a: &Group) -> Result<Outcome> {
    let g = a.derived_subgroup();
    let index = (a.order() / g.order()) as usize;
    let mut reps: Vec<Permutation> = Vec::new();
    let mut cosets: Vec<Vec<u64>> = Vec::new();
    a.for_each_element(crate::DEFAULT_ENUMERATION_CAP, |r, x| {
        let slot = reps.iter().position(|y| g.contains(&x.mul(&y.inverse())));
        match slot {
            Some(i) => cosets[i].push(r),
            None => {
                reps.push(x.clone());
                cosets.push(vec![r]);
            }
        }
    })?;
    debug_assert_eq!(reps.len(), index);
    let mut o = Outcome::pass().with("|G|", g.order()).with("|A:G|", index);
    for (alpha, coset) in reps.iter().zip(&cosets) {
        let hit = g_orbits(a, &g, coset).into_iter().find(|c| class_square_size(a, &g, c) as u128 == g.order());
        match hit {
            Some(c) => o.push(format!("alpha={alpha}"), format!("x={} |x^G|={}", a.unrank(c[0]), c.len())),
            None => return Ok(Outcome::fail("no x in αG has (x^G)² = α²G").with("alpha", alpha)),
        }
    }
    Ok(o)
}

pub fn check_gt_witness() -> CheckResult {
    timed("lemma-1.9", Tier::Fast, None, || {
        let instances = [
            ("Alt5 in pgl2:5", pgl2(5)?),
            ("Alt6 in PGammaL2(9)", pgammal2(9)?),
            ("psl2:7 in pgl2:7", pgl2(7)?),
            ("psl2:8 in psigmal2:8,3", psigmal2(8, 3)?),
        ];
        let mut parts = Vec::new();
        for (name, a) in instances {
            parts.push((name.to_string(), gt_witness_outcome(&a)?));
        }
        Ok(Outcome::combine(parts))
    })
}
