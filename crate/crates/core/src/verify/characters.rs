use num_bigint::BigInt;
use num_rational::BigRational;

use super::structure::elements;
use super::{timed, CheckResult, Outcome, Tier};
use crate::chartab::CharacterTable;
use crate::classalg::prime_divisors;
use crate::constructions::{psigmal2, psl2_order};
use crate::named::{named_group, named_table};
use crate::{ClassPartition, NormalSubset, Permutation, Result};

fn aligned(name: &str) -> Result<(CharacterTable, ClassPartition, Vec<usize>)> {
    let table = named_table(name)?;
    let part = ClassPartition::new(&named_group(name)?)?;
    let assign = table.align(&part)?;
    Ok((table, part, assign))
}

/// Structure constants from the table formula against enumerated class products,
/// for every class triple.
pub fn structure_constants_outcome(name: &str) -> Result<Outcome> {
    let (table, part, assign) = aligned(name)?;
    let k = table.num_classes();
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                let from_table = table.class_mult_coefficient(i, j, l)?;
                let counted = part.structure_constant(assign[i], assign[j], assign[l]);
                if from_table != BigRational::from_integer(BigInt::from(counted)) {
                    return Ok(Outcome::fail("structure constant differs")
                        .with("triple", format!("{} {} {}", table.classes[i].name, table.classes[j].name, table.classes[l].name))
                        .with("table", from_table)
                        .with("enumerated", counted));
                }
            }
        }
    }
    Ok(Outcome::pass().with("classes", k).with("triples", k * k * k))
}

pub fn check_structure_constants(names: &[&str]) -> CheckResult {
    timed("structure-constants", Tier::Fast, None, || {
        let parts = names.iter().map(|n| Ok((n.to_string(), structure_constants_outcome(n)?))).collect::<Result<Vec<_>>>()?;
        Ok(Outcome::combine(parts))
    })
}

pub fn check_triple_identity(names: &[&str]) -> CheckResult {
    timed("lemma-3.1", Tier::Fast, None, || {
        let mut parts = Vec::new();
        for name in names {
            let (table, part, assign) = aligned(name)?;
            let ok = table.identity_check(&part, &assign)?;
            let k = table.num_classes();
            parts.push((
                name.to_string(),
                Outcome::from_bool(ok, "identity fails for some character and class pair")
                    .with("characters x pairs", k * k * k),
            ));
        }
        Ok(Outcome::combine(parts))
    })
}

/// `hj_test(a, b, c)` against `C_a C_b = C_c` computed by enumeration, for all
/// nontrivial triples.
pub fn check_hj_consistency(names: &[&str]) -> CheckResult {
    timed("lemma-hj", Tier::Fast, None, || {
        let mut parts = Vec::new();
        for name in names {
            let (table, part, assign) = aligned(name)?;
            let k = table.num_classes();
            let mut singles = 0;
            let mut outcome = None;
            'outer: for a in 1..k {
                for b in 1..k {
                    let prod = part.class_product(assign[a], assign[b]);
                    for c in 1..k {
                        let enumerated = prod.count() == 1 && prod.contains(assign[c]);
                        if table.hj_test(a, b, c)? != enumerated {
                            outcome = Some(Outcome::fail("character criterion disagrees with enumeration").with(
                                "triple",
                                format!("{} {} {}", table.classes[a].name, table.classes[b].name, table.classes[c].name),
                            ));
                            break 'outer;
                        }
                        singles += enumerated as usize;
                    }
                }
            }
            parts.push((name.to_string(), outcome.unwrap_or_else(|| Outcome::pass().with("single-class products", singles))));
        }
        Ok(Outcome::combine(parts))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AutoFamily {
    Psl2,
    Suzuki,
}

fn suzuki_order(q: u128) -> u128 {
    q * q * (q * q + 1) * (q - 1)
}

/// `(x^L)² = x²G` for every element `x ∉ G` of order `b`, with `L = G⟨x⟩`, plus
/// agreement with the table sums class by class.
pub fn check_coprime_auto_square(family: AutoFamily, q: u64, b: u64) -> CheckResult {
    let id = match family {
        AutoFamily::Psl2 => format!("prop-3.6-psl2-{q}-{b}"),
        AutoFamily::Suzuki => format!("prop-3.6-sz-{q}-{b}"),
    };
    timed(&id, Tier::Full, None, || {
        if prime_divisors(b as u128) != [b] {
            return Ok(Outcome::skip("hypothesis: b is not prime"));
        }
        let g_order = match family {
            AutoFamily::Psl2 => psl2_order(q),
            AutoFamily::Suzuki => suzuki_order(q as u128),
        };
        if g_order % b as u128 == 0 {
            return Ok(Outcome::skip(format!("hypothesis: b = {b} divides |G| = {g_order}")));
        }
        let (l, table_name) = match (family, q, b) {
            (AutoFamily::Psl2, 32, 5) => (psigmal2(32, 5)?, Some("SL2_32.5")),
            (AutoFamily::Psl2, _, _) => (psigmal2(q, b as u32)?, None),
            (AutoFamily::Suzuki, 8, 3) => (named_group("Sz8.3")?, Some("Sz8.3")),
            (AutoFamily::Suzuki, _, _) => return Ok(Outcome::skip("no packaged Suzuki extension")),
        };
        let g = l.derived_subgroup();
        if g.order() != g_order || l.order() != g_order * b as u128 {
            return Ok(Outcome::skip("L is not an extension of G of degree b"));
        }
        let part = ClassPartition::new(&l)?;
        let cls = part.classes();
        let in_coset = |c: usize, y2: &Permutation| g.contains(&cls[c].representative.mul(&y2.inverse()));
        let xs: Vec<usize> =
            (0..part.len()).filter(|&c| cls[c].order == b && !g.contains(&cls[c].representative)).collect();
        let mut o = Outcome::pass().with("|L|", l.order()).with("x classes", xs.iter().map(|&c| cls[c].name.clone()).collect::<Vec<_>>().join(","));
        for &x in &xs {
            let x2 = cls[x].representative.pow(2);
            let coset = NormalSubset::from_classes(part.len(), (0..part.len()).filter(|&c| in_coset(c, &x2)));
            let sq = part.class_product(x, x);
            if sq != coset {
                return Ok(Outcome::fail("(x^L)² differs from x²G")
                    .with("x", &cls[x].name)
                    .with("(x^L)^2", part.names(&sq).join(","))
                    .with("x^2G", part.names(&coset).join(",")));
            }
            o.push(format!("{} square", cls[x].name), part.names(&sq).join(","));
        }
        if let Some(tn) = table_name {
            let table = named_table(tn)?;
            let assign = table.align(&part)?;
            let mut back = vec![0; part.len()];
            for (t, &p) in assign.iter().enumerate() {
                back[p] = t;
            }
            let mut agreements = 0;
            for &x in &xs {
                let sq = part.class_product(x, x);
                for t in 0..part.len() {
                    let nonzero = !table.coset_square_sum(back[x], back[t])?.is_zero();
                    if nonzero != sq.contains(t) {
                        return Ok(Outcome::fail("table sum disagrees with enumeration")
                            .with("x", &cls[x].name)
                            .with("class", &cls[t].name));
                    }
                    agreements += 1;
                }
            }
            o.push("table agreements", agreements);
        }
        Ok(o)
    })
}

/// On `SL₂(32)⟨α⟩`: whenever `(dα)^G ⊆ t^G (cα)^G` for `c, d ∈ C_X(α)`, also
/// `(dα^n)^G ⊆ t^G (cα^n)^G` for `1 ≤ n < 5`.
pub fn check_galois_products() -> CheckResult {
    timed("cor-3.8", Tier::Full, None, || {
        let l = psigmal2(32, 5)?;
        let x = l.derived_subgroup();
        let alpha = l.generators().iter().find(|g| !x.contains(g) && g.order() == 5).cloned().expect("field automorphism");
        let c: Vec<Permutation> = elements(&x)?.into_iter().filter(|y| y.mul(&alpha) == alpha.mul(y)).collect();
        let part = ClassPartition::new(&l)?;
        let class = |g: &Permutation| part.class_of_member(g);
        let mut hypotheses = 0;
        for t in 0..part.len() {
            for ci in &c {
                for di in &c {
                    let ca = class(&ci.mul(&alpha));
                    if !part.class_product(t, ca).contains(class(&di.mul(&alpha))) {
                        continue;
                    }
                    hypotheses += 1;
                    for n in 2..5 {
                        let an = alpha.pow(n);
                        let target = class(&di.mul(&an));
                        if !part.class_product(t, class(&ci.mul(&an))).contains(target) {
                            return Ok(Outcome::fail("conclusion fails")
                                .with("t", &part.classes()[t].name)
                                .with("c", ci)
                                .with("d", di)
                                .with("n", n));
                        }
                    }
                }
            }
        }
        Ok(Outcome::pass().with("|C_X(alpha)|", c.len()).with("hypotheses satisfied", hypotheses))
    })
}
