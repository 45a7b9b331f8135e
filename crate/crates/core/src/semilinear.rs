//! `SL₂(p^k)⟨σ⟩` with `σ` the Frobenius, as matrices paired with a Frobenius twist.
//!
//! `(M, a)·(N, b) = (M·σ^a(N), a + b mod k)`, where `σ` raises entries to the `p`-th power.

use rand::Rng;

use crate::ffield::FiniteField;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SemilinearElement {
    /// Row-major `[a, b, c, d]`.
    pub matrix: [u32; 4],
    pub twist: u32,
}

#[derive(Clone, Debug)]
pub struct SemilinearSl2 {
    field: FiniteField,
}

impl SemilinearSl2 {
    pub fn new(p: u64, k: u32) -> Result<SemilinearSl2> {
        Ok(SemilinearSl2 { field: FiniteField::new(p, k)? })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// `|SL₂(q)| = q(q²−1)`.
    pub fn sl2_order(&self) -> u128 {
        let q = self.field.order() as u128;
        q * (q * q - 1)
    }

    pub fn identity(&self) -> SemilinearElement {
        SemilinearElement { matrix: [1, 0, 0, 1], twist: 0 }
    }

    /// A matrix of determinant one, with entries given as field labels.
    pub fn matrix(&self, m: [u32; 4]) -> Result<SemilinearElement> {
        let q = self.field.order();
        if m.iter().any(|&x| x >= q) {
            return Err(Error::InvalidParameters("entry outside the field".into()));
        }
        if self.det(&m) != 1 {
            return Err(Error::InvalidParameters("determinant is not 1".into()));
        }
        Ok(SemilinearElement { matrix: m, twist: 0 })
    }

    pub fn frobenius(&self) -> SemilinearElement {
        SemilinearElement { matrix: [1, 0, 0, 1], twist: 1 % self.field.degree() }
    }

    pub fn det(&self, m: &[u32; 4]) -> u32 {
        let f = &self.field;
        f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2]))
    }

    pub fn trace(&self, x: &SemilinearElement) -> u32 {
        self.field.add(x.matrix[0], x.matrix[3])
    }

    pub fn mul(&self, x: &SemilinearElement, y: &SemilinearElement) -> SemilinearElement {
        let f = &self.field;
        let n = y.matrix.map(|e| f.frobenius_power(e, x.twist));
        let m = &x.matrix;
        let dot = |a: u32, b: u32, c: u32, d: u32| f.add(f.mul(a, b), f.mul(c, d));
        SemilinearElement {
            matrix: [
                dot(m[0], n[0], m[1], n[2]),
                dot(m[0], n[1], m[1], n[3]),
                dot(m[2], n[0], m[3], n[2]),
                dot(m[2], n[1], m[3], n[3]),
            ],
            twist: (x.twist + y.twist) % f.degree(),
        }
    }

    pub fn inverse(&self, x: &SemilinearElement) -> SemilinearElement {
        let f = &self.field;
        let k = f.degree();
        let m = &x.matrix;
        let adj = [m[3], f.neg(m[1]), f.neg(m[2]), m[0]];
        let back = (k - x.twist) % k;
        SemilinearElement { matrix: adj.map(|e| f.frobenius_power(e, back)), twist: back }
    }

    pub fn pow(&self, x: &SemilinearElement, mut e: u64) -> SemilinearElement {
        let mut acc = self.identity();
        let mut base = *x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn is_central(&self, x: &SemilinearElement) -> bool {
        let m = &x.matrix;
        x.twist == 0 && m[1] == 0 && m[2] == 0 && m[0] == m[3] && (m[0] == 1 || m[0] == self.field.neg(1))
    }

    /// Order of `x`, searching up to `bound`.
    pub fn order(&self, x: &SemilinearElement, bound: u64) -> Option<u64> {
        let mut y = *x;
        for n in 1..=bound {
            if y == self.identity() {
                return Some(n);
            }
            y = self.mul(&y, x);
        }
        None
    }

    /// Order of the image of `x` modulo `{±I}`.
    pub fn projective_order(&self, x: &SemilinearElement, bound: u64) -> Option<u64> {
        let mut y = *x;
        for n in 1..=bound {
            if self.is_central(&y) {
                return Some(n);
            }
            y = self.mul(&y, x);
        }
        None
    }

    /// A uniformly chosen trace-zero matrix of determinant one with nonzero
    /// upper-right entry; these have order 4 and project to involutions.
    pub fn random_involution_lift<R: Rng + ?Sized>(&self, rng: &mut R) -> SemilinearElement {
        let f = &self.field;
        let q = f.order();
        let a = rng.gen_range(0..q);
        let b = rng.gen_range(1..q);
        let c = f.div(f.neg(f.add(1, f.mul(a, a))), b).expect("b is nonzero");
        SemilinearElement { matrix: [a, b, c, f.neg(a)], twist: 0 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_laws() {
        let g = SemilinearSl2::new(3, 5).unwrap();
        let e = g.matrix([1, 0, 1, 1]).unwrap();
        let s = g.frobenius();
        assert_eq!(g.order(&s, 100), Some(5));
        assert_eq!(g.order(&e, 100), Some(3));
        let x = g.mul(&e, &g.inverse(&s));
        assert_eq!(g.mul(&x, &g.inverse(&x)), g.identity());
        assert_eq!(g.order(&x, 100), Some(15));
        let mut rng = rand::thread_rng();
        for _ in 0..20 {
            let t = g.random_involution_lift(&mut rng);
            assert_eq!(g.det(&t.matrix), 1);
            assert_eq!(g.order(&t, 10), Some(4));
            assert_eq!(g.projective_order(&t, 10), Some(2));
            let u = g.random_involution_lift(&mut rng);
            let lhs = g.mul(&g.mul(&t, &x), &u);
            let rhs = g.mul(&t, &g.mul(&x, &u));
            assert_eq!(lhs, rhs);
        }
    }
}
