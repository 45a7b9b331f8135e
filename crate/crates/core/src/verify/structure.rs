use crate::classalg::{is_power_of, ClassPartition};
use crate::{Group, Permutation, Result};

/// The subgroup generated by every class whose normal closure has an order
/// accepted by `admissible`; for a divisor-closed property this is the largest
/// normal subgroup with that property. Element orders and `C⁻¹C` are screened
/// first, since every element of an admissible normal subgroup has admissible order.
pub fn largest_normal_subgroup(p: &ClassPartition, admissible: impl Fn(u128) -> bool) -> Group {
    let g = p.group();
    let mut reps: Vec<Permutation> = Vec::new();
    let mut current = Group::trivial(g.degree());
    for c in 1..p.len() {
        let class = &p.classes()[c];
        if !admissible(class.order as u128) || current.contains(&class.representative) {
            continue;
        }
        let quotients = p.class_product(p.inverse_class(c), c);
        if !quotients.iter().all(|d| admissible(p.classes()[d].order as u128)) {
            continue;
        }
        if admissible(p.span(&crate::NormalSubset::from_classes(p.len(), [c])).order()) {
            reps.push(class.representative.clone());
            current = g.normal_closure_unchecked(&reps);
        }
    }
    current
}

pub(crate) fn o_p(p: &ClassPartition, prime: u64) -> Group {
    largest_normal_subgroup(p, |n| is_power_of_u128(n, prime))
}

pub(crate) fn o_p_prime(p: &ClassPartition, prime: u64) -> Group {
    largest_normal_subgroup(p, |n| n % prime as u128 != 0)
}

/// Whether `G` has a normal `p`-complement, i.e. `|G : O_{p'}(G)|` is a power of `p`.
pub fn normal_complement_exists(p: &ClassPartition, prime: u64) -> bool {
    let index = p.group().order() / o_p_prime(p, prime).order();
    is_power_of_u128(index, prime)
}

pub(crate) fn is_power_of_u128(n: u128, p: u64) -> bool {
    match u64::try_from(n) {
        Ok(n) => is_power_of(n, p),
        Err(_) => false,
    }
}

pub(crate) fn elements(g: &Group) -> Result<Vec<Permutation>> {
    let mut out = Vec::with_capacity(g.order() as usize);
    g.for_each_element(crate::DEFAULT_ENUMERATION_CAP, |_, x| out.push(x.clone()))?;
    Ok(out)
}

pub(crate) fn commutes(a: &Permutation, b: &Permutation) -> bool {
    a.mul(b) == b.mul(a)
}

pub(crate) fn centralizes(x: &Permutation, gens: &[Permutation]) -> bool {
    gens.iter().all(|g| commutes(x, g))
}
