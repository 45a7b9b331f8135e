//! Finite fields GF(p^k) for p^k ≤ 3^11, with packaged primitive polynomials.
//!
//! An element is labelled by `Σ c_i p^i` where `Σ c_i x^i` is its polynomial
//! representative. Multiplication goes through discrete-log tables built from
//! the class of `x`, which generates the multiplicative group because every
//! packaged polynomial is primitive.

use crate::error::{Error, Result};

pub const MAX_FIELD_ORDER: u64 = 177_147;

/// `(p, k, [c_0, …, c_{k-1}])`: the monic polynomial `x^k + Σ c_i x^i`,
/// lexicographically least primitive one for that field.
const PRIMITIVE_POLYNOMIALS: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (2, 5, &[1, 0, 1, 0, 0]),
    (2, 6, &[1, 1, 0, 0, 0, 0]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0]),
    (2, 9, &[1, 0, 0, 0, 1, 0, 0, 0, 0]),
    (2, 10, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0]),
    (2, 11, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0]),
    (2, 12, &[1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0]),
    (2, 13, &[1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0]),
    (2, 14, &[1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0]),
    (2, 15, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
    (2, 16, &[1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
    (2, 17, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
    (3, 2, &[2, 1]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 1, 0, 0]),
    (3, 5, &[1, 2, 0, 0, 0]),
    (3, 6, &[2, 1, 0, 0, 0, 0]),
    (3, 7, &[1, 2, 1, 0, 0, 0, 0]),
    (3, 8, &[2, 0, 0, 1, 0, 0, 0, 0]),
    (3, 9, &[1, 0, 1, 2, 0, 0, 0, 0, 0]),
    (3, 10, &[2, 1, 0, 1, 0, 0, 0, 0, 0, 0]),
    (3, 11, &[1, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0]),
    (5, 2, &[2, 1]),
    (5, 3, &[2, 3, 0]),
    (5, 4, &[2, 2, 1, 0]),
    (5, 5, &[2, 4, 0, 0, 0]),
    (5, 6, &[2, 1, 0, 0, 0, 0]),
    (5, 7, &[2, 3, 0, 0, 0, 0, 0]),
    (7, 2, &[3, 1]),
    (7, 3, &[2, 3, 0]),
    (7, 4, &[5, 3, 1, 0]),
    (7, 5, &[4, 1, 0, 0, 0]),
    (7, 6, &[5, 1, 3, 0, 0, 0]),
    (11, 2, &[7, 1]),
    (11, 3, &[4, 1, 0]),
    (11, 4, &[2, 1, 0, 0]),
    (11, 5, &[4, 1, 1, 0, 0]),
    (13, 2, &[2, 1]),
    (13, 3, &[6, 1, 0]),
    (13, 4, &[2, 1, 1, 0]),
    (17, 2, &[3, 1]),
    (17, 3, &[3, 1, 0]),
    (17, 4, &[11, 1, 0, 0]),
    (19, 2, &[2, 1]),
    (19, 3, &[4, 1, 0]),
    (19, 4, &[10, 2, 0, 0]),
    (23, 2, &[7, 1]),
    (23, 3, &[3, 1, 0]),
    (29, 2, &[3, 1]),
    (29, 3, &[11, 1, 0]),
    (31, 2, &[12, 1]),
    (31, 3, &[14, 1, 0]),
    (37, 2, &[5, 1]),
    (37, 3, &[13, 1, 0]),
    (41, 2, &[12, 1]),
    (41, 3, &[6, 1, 0]),
    (43, 2, &[3, 1]),
    (43, 3, &[14, 1, 0]),
    (47, 2, &[13, 1]),
    (47, 3, &[4, 1, 0]),
    (53, 2, &[5, 1]),
    (53, 3, &[5, 1, 0]),
    (59, 2, &[2, 1]),
    (61, 2, &[2, 1]),
    (67, 2, &[12, 1]),
    (71, 2, &[11, 1]),
    (73, 2, &[11, 1]),
    (79, 2, &[3, 1]),
    (83, 2, &[2, 1]),
    (89, 2, &[6, 1]),
    (97, 2, &[5, 1]),
    (101, 2, &[3, 1]),
    (103, 2, &[5, 1]),
    (107, 2, &[5, 1]),
    (109, 2, &[6, 1]),
    (113, 2, &[10, 1]),
    (127, 2, &[3, 1]),
    (131, 2, &[14, 1]),
    (137, 2, &[6, 1]),
    (139, 2, &[2, 1]),
    (149, 2, &[3, 1]),
    (151, 2, &[12, 1]),
    (157, 2, &[6, 1]),
    (163, 2, &[11, 1]),
    (167, 2, &[5, 1]),
    (173, 2, &[5, 1]),
    (179, 2, &[7, 1]),
    (181, 2, &[18, 1]),
    (191, 2, &[19, 1]),
    (193, 2, &[5, 1]),
    (197, 2, &[3, 1]),
    (199, 2, &[6, 1]),
];

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl FiniteField {
    pub fn new(p: u64, k: u32) -> Result<FiniteField> {
        let unsupported = Error::UnsupportedField { p, k };
        if !is_prime(p) || k == 0 {
            return Err(unsupported);
        }
        let q = p.checked_pow(k).filter(|&q| q <= MAX_FIELD_ORDER).ok_or(unsupported.clone())?;
        let (p, q) = (p as u32, q as u32);
        let modulus: Vec<u32> = if k == 1 {
            Vec::new()
        } else {
            PRIMITIVE_POLYNOMIALS
                .iter()
                .find(|&&(pp, kk, _)| pp == p && kk == k)
                .map(|&(_, _, c)| c.to_vec())
                .ok_or(unsupported)?
        };
        let mut field = FiniteField { p, k, q, modulus, exp: Vec::new(), log: Vec::new() };
        field.build_tables()?;
        Ok(field)
    }

    /// Order-q field, `q` a prime power.
    pub fn of_order(q: u64) -> Result<FiniteField> {
        let (p, k) = prime_power(q).ok_or(Error::UnsupportedField { p: q, k: 1 })?;
        FiniteField::new(p, k)
    }

    fn build_tables(&mut self) -> Result<()> {
        let n = (self.q - 1) as usize;
        let g = self.primitive_label();
        let mut exp = Vec::with_capacity(n);
        let mut log = vec![u32::MAX; self.q as usize];
        let mut cur = 1u32;
        for i in 0..n {
            if log[cur as usize] != u32::MAX {
                return Err(Error::InvalidParameters(format!(
                    "packaged polynomial for GF({}^{}) is not primitive",
                    self.p, self.k
                )));
            }
            log[cur as usize] = i as u32;
            exp.push(cur);
            cur = self.mul_slow(cur, g);
        }
        if cur != 1 {
            return Err(Error::InvalidParameters("generator order mismatch".into()));
        }
        self.exp = exp;
        self.log = log;
        Ok(())
    }

    fn primitive_label(&self) -> u32 {
        if self.k > 1 {
            return self.p; // the class of x
        }
        let p = self.p as u64;
        let factors = prime_factors(p - 1);
        (1..p)
            .find(|&g| factors.iter().all(|&r| pow_mod(g, (p - 1) / r, p) != 1))
            .unwrap_or(1) as u32
    }

    fn digits(&self, a: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.k as usize);
        let mut a = a;
        for _ in 0..self.k {
            d.push(a % self.p);
            a /= self.p;
        }
        d
    }

    fn encode_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        if self.k == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        let k = self.k as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * k - 1];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c != 0 {
                prod[d] = 0;
                for i in 0..k {
                    prod[d - k + i] = (prod[d - k + i] + (p - c) * self.modulus[i] as u64) % p;
                }
            }
        }
        let low: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
        self.encode_digits(&low)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Coefficients `c_0..c_{k-1}` of the defining polynomial below its leading term.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The cached generator of the multiplicative group.
    pub fn generator(&self) -> u32 {
        self.exp.get(1).copied().unwrap_or(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let d: Vec<u32> = self.digits(a).iter().map(|&c| (self.p - c) % self.p).collect();
        self.encode_digits(&d)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let e = (self.log[a as usize] + self.log[b as usize]) % n;
        self.exp[e as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(&self, a: u32, e: i64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n = (self.q - 1) as i64;
        let l = (self.log[a as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        self.exp[l as usize]
    }

    /// Discrete log to the cached generator; `None` for zero.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// `generator^e`.
    pub fn exp(&self, e: i64) -> u32 {
        let n = (self.q - 1) as i64;
        self.exp[e.rem_euclid(n) as usize]
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as i64)
    }

    /// `x ↦ x^(p^j)`.
    pub fn frobenius_power(&self, a: u32, j: u32) -> u32 {
        let mut x = a;
        for _ in 0..(j % self.k) {
            x = self.frobenius(x);
        }
        x
    }

    /// `x^(1 + p + … + p^(k-1))`, landing in the prime field.
    pub fn norm(&self, a: u32) -> u32 {
        let e = (self.q - 1) / (self.p - 1);
        self.pow(a, e as i64)
    }

    /// `x + x^p + … + x^(p^(k-1))`.
    pub fn trace(&self, a: u32) -> u32 {
        let mut t = 0;
        let mut x = a;
        for _ in 0..self.k {
            t = self.add(t, x);
            x = self.frobenius(x);
        }
        t
    }

    /// Embeds an integer through the prime field.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.p == 2 || self.log[a as usize].is_multiple_of(2)
    }
}

pub(crate) fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius_order_gf8() {
        let f = FiniteField::new(2, 3).unwrap();
        for x in f.elements() {
            assert_eq!(f.frobenius_power(x, 3), x);
        }
        assert!(f.elements().any(|x| f.frobenius(x) != x));
    }

    #[test]
    fn norm_gf27_onto_prime_field() {
        let f = FiniteField::new(3, 3).unwrap();
        assert_eq!(f.norm(1), 1);
        let mut image: Vec<u32> = f.elements().map(|x| f.norm(x)).collect();
        image.sort_unstable();
        image.dedup();
        assert_eq!(image, vec![0, 1, 2]);
    }

    #[test]
    fn gf243_field_identity() {
        let f = FiniteField::new(3, 5).unwrap();
        for x in (0..243).step_by(7) {
            assert_eq!(f.frobenius_power(x, 5), x);
            assert_eq!(f.pow(x, 243), x);
        }
    }

    #[test]
    fn field_axioms_small() {
        for &(p, k) in &[(2u64, 4u32), (3, 2), (5, 2), (7, 1), (13, 1)] {
            let f = FiniteField::new(p, k).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul_slow(a, b));
                    assert_eq!(f.add(a, b), f.add(b, a));
                }
            }
        }
    }

    #[test]
    fn every_packaged_polynomial_is_primitive() {
        for &(p, k, _) in PRIMITIVE_POLYNOMIALS {
            FiniteField::new(p as u64, k).unwrap();
        }
    }

    #[test]
    fn unsupported_fields() {
        assert!(FiniteField::new(4, 1).is_err());
        assert!(FiniteField::new(2, 18).is_err());
        assert!(FiniteField::new(3, 12).is_err());
    }
}
