//! Builders for the concrete groups used by the checks: symmetric, alternating
//! and cyclic groups, projective lines over finite fields, wreath products with
//! a regular cyclic top group, and one-dimensional semilinear affine groups.

use crate::error::{Error, Result};
use crate::ffield::{prime_power, FiniteField};
use crate::group::Group;
use crate::perm::Permutation;

pub fn symmetric(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidParameters("degree must be positive".into()));
    }
    if n == 1 {
        return Ok(Group::trivial(1));
    }
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    Group::new(vec![Permutation::from_images(&cycle)?, Permutation::from_images(&swap)?], n)
}

pub fn alternating(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidParameters("degree must be positive".into()));
    }
    if n < 3 {
        return Ok(Group::trivial(n));
    }
    let three: Vec<usize> = (0..n).map(|i| if i < 3 { (i + 1) % 3 } else { i }).collect();
    // (1,…,n) for odd n, (2,…,n) for even n
    let start = if n % 2 == 1 { 0 } else { 1 };
    let long: Vec<usize> = (0..n)
        .map(|i| if i < start { i } else if i + 1 == n { start } else { i + 1 })
        .collect();
    Group::new(vec![Permutation::from_images(&three)?, Permutation::from_images(&long)?], n)
}

pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidParameters("order must be positive".into()));
    }
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    Group::new(vec![Permutation::from_images(&cycle)?], n)
}

/// The projective line `{∞} ∪ GF(q)`: point 0 is `∞`, element label `a` is point `a + 1`.
#[derive(Clone, Debug)]
pub struct ProjectiveLine {
    field: FiniteField,
}

impl ProjectiveLine {
    pub fn new(q: u64) -> Result<ProjectiveLine> {
        Ok(ProjectiveLine { field: FiniteField::of_order(q)? })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn num_points(&self) -> usize {
        self.field.order() as usize + 1
    }

    /// Permutation induced by `x ↦ (a·x + b)/(c·x + d)`; `None` if singular.
    pub fn mobius(&self, a: u32, b: u32, c: u32, d: u32) -> Option<Permutation> {
        let f = &self.field;
        let det = f.sub(f.mul(a, d), f.mul(b, c));
        if det == 0 {
            return None;
        }
        let mut img = vec![0usize; self.num_points()];
        img[0] = if c == 0 { 0 } else { f.div(a, c).unwrap() as usize + 1 };
        for x in f.elements() {
            let num = f.add(f.mul(a, x), b);
            let den = f.add(f.mul(c, x), d);
            img[x as usize + 1] = match f.div(num, den) {
                Some(v) => v as usize + 1,
                None => 0,
            };
        }
        Some(Permutation::from_images_unchecked(&img))
    }

    /// Coordinate-wise `x ↦ x^(p^j)`, fixing `∞`.
    pub fn field_automorphism(&self, j: u32) -> Permutation {
        let f = &self.field;
        let mut img = vec![0usize; self.num_points()];
        for x in f.elements() {
            img[x as usize + 1] = f.frobenius_power(x, j) as usize + 1;
        }
        Permutation::from_images_unchecked(&img)
    }

    fn psl2_generators(&self) -> Vec<Permutation> {
        let f = &self.field;
        let w = f.generator();
        let minus_one = f.neg(1);
        vec![
            self.mobius(1, 1, 0, 1).unwrap(),
            self.mobius(f.mul(w, w), 0, 0, 1).unwrap(),
            self.mobius(0, minus_one, 1, 0).unwrap(),
        ]
    }
}

/// `PSL₂(q)` on the `q + 1` points of the projective line.
pub fn psl2(q: u64) -> Result<Group> {
    let line = ProjectiveLine::new(q)?;
    Group::new(line.psl2_generators(), line.num_points())
}

pub fn pgl2(q: u64) -> Result<Group> {
    let line = ProjectiveLine::new(q)?;
    let mut gens = line.psl2_generators();
    gens.push(line.mobius(line.field().generator(), 0, 0, 1).unwrap());
    Group::new(gens, line.num_points())
}

/// Generator of the Frobenius automorphism group of order `f` on the projective line.
pub fn field_automorphism_perm(q: u64, f: u32) -> Result<Permutation> {
    let line = ProjectiveLine::new(q)?;
    let k = line.field().degree();
    if f == 0 || k % f != 0 {
        return Err(Error::InvalidParameters(format!("{f} does not divide {k}")));
    }
    Ok(line.field_automorphism(k / f))
}

/// `PSL₂(q)` extended by the field automorphisms of order dividing `f`.
pub fn psigmal2(q: u64, f: u32) -> Result<Group> {
    let line = ProjectiveLine::new(q)?;
    let k = line.field().degree();
    if f == 0 || k % f != 0 {
        return Err(Error::InvalidParameters(format!("{f} does not divide {k}")));
    }
    let mut gens = line.psl2_generators();
    if f > 1 {
        gens.push(line.field_automorphism(k / f));
    }
    Group::new(gens, line.num_points())
}

/// `PΓL₂(q)`: `PGL₂(q)` extended by every field automorphism.
pub fn pgammal2(q: u64) -> Result<Group> {
    let line = ProjectiveLine::new(q)?;
    let mut gens = line.psl2_generators();
    gens.push(line.mobius(line.field().generator(), 0, 0, 1).unwrap());
    if line.field().degree() > 1 {
        gens.push(line.field_automorphism(1));
    }
    Group::new(gens, line.num_points())
}

/// `H ≀ Cₙ` acting imprimitively on `n` blocks of `H`'s points.
#[derive(Clone, Debug)]
pub struct Wreath {
    pub base_degree: usize,
    pub blocks: usize,
    pub group: Group,
}

impl Wreath {
    /// The base element acting as `h_i` on block `i`.
    pub fn base_element(&self, parts: &[Permutation]) -> Result<Permutation> {
        if parts.len() != self.blocks {
            return Err(Error::InvalidParameters(format!("expected {} components", self.blocks)));
        }
        let d = self.base_degree;
        let mut img = vec![0usize; d * self.blocks];
        for (i, h) in parts.iter().enumerate() {
            if h.degree() != d {
                return Err(Error::DegreeMismatch(h.degree(), d));
            }
            for j in 0..d {
                img[i * d + j] = i * d + h.image(j);
            }
        }
        Ok(Permutation::from_images_unchecked(&img))
    }

    /// Block `i` ↦ block `i + 1`; conjugation by it sends `(h₁,…,hₙ)` to `(hₙ,h₁,…,hₙ₋₁)`.
    pub fn top_cycle(&self) -> Permutation {
        let d = self.base_degree;
        let n = self.blocks;
        let img: Vec<usize> = (0..d * n).map(|pt| ((pt / d + 1) % n) * d + pt % d).collect();
        Permutation::from_images_unchecked(&img)
    }

    /// Splits a base-group element into its block components; `None` if it moves blocks.
    pub fn base_components(&self, g: &Permutation) -> Option<Vec<Permutation>> {
        let d = self.base_degree;
        (0..self.blocks)
            .map(|i| {
                let img: Vec<usize> = (0..d)
                    .map(|j| g.image(i * d + j))
                    .map(|pt| (pt / d == i).then_some(pt % d))
                    .collect::<Option<_>>()?;
                Some(Permutation::from_images_unchecked(&img))
            })
            .collect()
    }

    /// The block permutation induced by `g` as a shift `i ↦ i + s (mod n)`, if it is one.
    pub fn top_shift(&self, g: &Permutation) -> Option<usize> {
        let d = self.base_degree;
        let n = self.blocks;
        let s = (g.image(0) / d + n) % n;
        (0..n).all(|i| g.image(i * d) / d == (i + s) % n).then_some(s)
    }
}

pub fn wreath_cyclic(h: &Group, n: usize) -> Result<Wreath> {
    if n < 2 {
        return Err(Error::InvalidParameters("wreath product needs n ≥ 2".into()));
    }
    let d = h.degree();
    let mut w = Wreath { base_degree: d, blocks: n, group: Group::trivial(d * n) };
    let mut gens = Vec::new();
    for g in h.generators() {
        let mut parts = vec![Permutation::identity(d); n];
        parts[0] = g.clone();
        gens.push(w.base_element(&parts)?);
    }
    gens.push(w.top_cycle());
    w.group = Group::new(gens, d * n)?;
    Ok(w)
}

/// `A × B` on the disjoint union of the two point sets, `A` first.
pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
    let (da, db) = (a.degree(), b.degree());
    let embed = |g: &Permutation, shift: usize| {
        let img: Vec<usize> = (0..da + db)
            .map(|pt| if pt >= shift && pt < shift + g.degree() { shift + g.image(pt - shift) } else { pt })
            .collect();
        Permutation::from_images_unchecked(&img)
    };
    let gens = a.generators().iter().map(|g| embed(g, 0)).chain(b.generators().iter().map(|g| embed(g, da))).collect();
    Group::new(gens, da + db)
}

/// Maps `x ↦ a·x^φ + b` on `GF(p^k)` with `a` in the order-`m` subgroup and `φ`
/// in the order-`f` Frobenius subgroup. Points are field labels.
pub fn semilinear_affine(p: u64, k: u32, m: u64, f: u32) -> Result<Group> {
    let field = FiniteField::new(p, k)?;
    let q = field.order() as u64;
    if m == 0 || !(q - 1).is_multiple_of(m) {
        return Err(Error::InvalidParameters(format!("{m} does not divide {}", q - 1)));
    }
    if f == 0 || !k.is_multiple_of(f) {
        return Err(Error::InvalidParameters(format!("{f} does not divide {k}")));
    }
    let n = q as usize;
    let mut gens = Vec::new();
    let mut basis = 1u32;
    for _ in 0..k {
        let img: Vec<usize> = (0..n as u32).map(|x| field.add(x, basis) as usize).collect();
        gens.push(Permutation::from_images_unchecked(&img));
        basis *= p as u32;
    }
    if m > 1 {
        let a = field.exp(((q - 1) / m) as i64);
        let img: Vec<usize> = (0..n as u32).map(|x| field.mul(a, x) as usize).collect();
        gens.push(Permutation::from_images_unchecked(&img));
    }
    if f > 1 {
        let j = k / f;
        let img: Vec<usize> = (0..n as u32).map(|x| field.frobenius_power(x, j) as usize).collect();
        gens.push(Permutation::from_images_unchecked(&img));
    }
    Group::new(gens, n)
}

/// `|PSL₂(q)| = q(q²−1)/gcd(2, q−1)`.
pub fn psl2_order(q: u64) -> u128 {
    let q = q as u128;
    q * (q * q - 1) / if q % 2 == 1 { 2 } else { 1 }
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power(q).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_orders() {
        assert_eq!(symmetric(5).unwrap().order(), 120);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(alternating(6).unwrap().order(), 360);
        assert_eq!(cyclic(6).unwrap().order(), 6);
    }

    #[test]
    fn psl2_orders() {
        assert_eq!(psl2(8).unwrap().order(), 504);
        assert_eq!(psl2(7).unwrap().order(), 168);
        assert_eq!(psl2(9).unwrap().order(), 360);
        assert_eq!(psl2(32).unwrap().order(), psl2_order(32));
        assert_eq!(psl2(25).unwrap().order(), psl2_order(25));
        assert_eq!(pgl2(7).unwrap().order(), 336);
        assert_eq!(pgammal2(9).unwrap().order(), 1440);
        assert_eq!(psigmal2(8, 3).unwrap().order(), 1512);
        assert_eq!(psigmal2(32, 5).unwrap().order(), 163_680);
    }

    #[test]
    fn wreath_orders_and_rotation() {
        let s2 = symmetric(2).unwrap();
        let w = wreath_cyclic(&s2, 3).unwrap();
        assert_eq!(w.group.order(), 24);
        let x = w.top_cycle();
        assert_eq!(x.order(), 3);
        let s3 = symmetric(3).unwrap();
        let w = wreath_cyclic(&s3, 4).unwrap();
        let a = Permutation::parse("(1,2)", 3).unwrap();
        let b = Permutation::parse("(1,2,3)", 3).unwrap();
        let c = Permutation::parse("(2,3)", 3).unwrap();
        let id = Permutation::identity(3);
        let t = w.base_element(&[a.clone(), b.clone(), c.clone(), id.clone()]).unwrap();
        let rotated = t.conjugate_by(&w.top_cycle());
        assert_eq!(w.base_components(&rotated).unwrap(), vec![id, a, b, c]);
        assert_eq!(w.top_shift(&w.top_cycle()), Some(1));
        assert_eq!(w.top_shift(&t), Some(0));
    }

    #[test]
    fn semilinear_orders() {
        assert_eq!(semilinear_affine(3, 3, 13, 3).unwrap().order(), 1053);
        assert_eq!(semilinear_affine(2, 3, 7, 1).unwrap().order(), 56);
        assert_eq!(semilinear_affine(2, 3, 1, 1).unwrap().order(), 8);
        assert_eq!(semilinear_affine(2, 3, 7, 3).unwrap().order(), 168);
        assert!(semilinear_affine(3, 3, 5, 3).is_err());
        assert!(semilinear_affine(3, 3, 13, 2).is_err());
    }
}
