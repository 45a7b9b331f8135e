//! Exact arithmetic in cyclotomic fields.
//!
//! A value is a sparse combination of powers of `ζ_n` over `ℚ`, kept in a canonical
//! basis: for each prime power `q = p^a` exactly dividing `n`, the `q`-component `c` of
//! an exponent must satisfy `⌊c/(q/p)⌋ ≠ 0` (odd `p`) or `c < q/2` (`p = 2`). Every
//! value is also shrunk to the smallest conductor whose field contains it, so equal
//! values have identical representations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Largest conductor any operation may produce.
pub const DEFAULT_CONDUCTOR_BOUND: u64 = 1 << 16;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u64,
    terms: BTreeMap<u64, BigRational>,
}

fn factor(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut q = 1;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

fn inverse_mod(a: u64, m: u64) -> u64 {
    let e = (a as i64).extended_gcd(&(m as i64));
    e.x.rem_euclid(m as i64) as u64
}

fn add_term(map: &mut BTreeMap<u64, BigRational>, e: u64, c: BigRational) {
    use std::collections::btree_map::Entry;
    match map.entry(e) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Rewrites every term into the canonical basis for conductor `n`.
fn canonicalize(n: u64, mut terms: BTreeMap<u64, BigRational>) -> BTreeMap<u64, BigRational> {
    for (p, q) in factor(n) {
        let cof = n / q;
        let inv = inverse_mod(cof % q, q);
        let step = q / p;
        let mut next = BTreeMap::new();
        for (e, c) in terms {
            let comp = (e % q) * inv % q;
            if p == 2 {
                if comp >= step {
                    add_term(&mut next, (e + n - step * cof % n) % n, -c);
                } else {
                    add_term(&mut next, e, c);
                }
            } else if comp < step {
                for i in 1..p {
                    add_term(&mut next, (e + i * step * cof) % n, -c.clone());
                }
            } else {
                add_term(&mut next, e, c);
            }
        }
        terms = next;
    }
    terms
}

impl Cyclotomic {
    fn build(n: u64, terms: BTreeMap<u64, BigRational>) -> Cyclotomic {
        let mut v = Cyclotomic { conductor: n, terms: canonicalize(n, terms) };
        v.shrink();
        v
    }

    pub fn zero() -> Cyclotomic {
        Cyclotomic { conductor: 1, terms: BTreeMap::new() }
    }

    pub fn one() -> Cyclotomic {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Cyclotomic {
        let mut terms = BTreeMap::new();
        add_term(&mut terms, 0, q);
        Cyclotomic { conductor: 1, terms }
    }

    pub fn from_integer(n: i64) -> Cyclotomic {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u64, k: i64) -> Result<Cyclotomic> {
        Self::from_terms(n, [(k, BigRational::one())])
    }

    /// `Σ c·ζ_n^e`.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(n: u64, terms: I) -> Result<Cyclotomic> {
        if n == 0 {
            return Err(Error::InvalidParameters("conductor must be positive".into()));
        }
        if n > DEFAULT_CONDUCTOR_BOUND {
            return Err(Error::ConductorOverflow(n, DEFAULT_CONDUCTOR_BOUND));
        }
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            add_term(&mut map, e.rem_euclid(n as i64) as u64, c);
        }
        Ok(Self::build(n, map))
    }

    /// The smallest `n` with the value in `ℚ(ζ_n)`.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Canonical terms `(exponent, coefficient)` over `ζ_conductor`.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match self.conductor {
            1 => Some(self.terms.get(&0).cloned().unwrap_or_else(BigRational::zero)),
            _ => None,
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    /// Rewrites the value over `ζ_m` for a multiple `m` of the conductor. The result is
    /// an unreduced term map; callers canonicalize after combining.
    fn lifted(&self, m: u64) -> BTreeMap<u64, BigRational> {
        let f = m / self.conductor;
        self.terms.iter().map(|(&e, c)| (e * f % m, c.clone())).collect()
    }

    fn common(&self, other: &Cyclotomic) -> Result<u64> {
        let m = self.conductor.lcm(&other.conductor);
        if m > DEFAULT_CONDUCTOR_BOUND {
            return Err(Error::ConductorOverflow(m, DEFAULT_CONDUCTOR_BOUND));
        }
        Ok(m)
    }

    pub fn checked_add(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let m = self.common(other)?;
        let mut t = self.lifted(m);
        for (e, c) in other.lifted(m) {
            add_term(&mut t, e, c);
        }
        Ok(Self::build(m, t))
    }

    pub fn checked_mul(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        if self.is_zero() || other.is_zero() {
            return Ok(Cyclotomic::zero());
        }
        if let Some(q) = self.to_rational() {
            return Ok(other.scale(&q));
        }
        if let Some(q) = other.to_rational() {
            return Ok(self.scale(&q));
        }
        let m = self.common(other)?;
        let (a, b) = (self.lifted(m), other.lifted(m));
        let mut t = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                add_term(&mut t, (ea + eb) % m, ca * cb);
            }
        }
        Ok(Self::build(m, t))
    }

    pub fn scale(&self, q: &BigRational) -> Cyclotomic {
        if q.is_zero() {
            return Cyclotomic::zero();
        }
        Cyclotomic { conductor: self.conductor, terms: self.terms.iter().map(|(&e, c)| (e, c * q)).collect() }
    }

    /// Image under `ζ ↦ ζ⁻¹`.
    pub fn complex_conjugate(&self) -> Cyclotomic {
        self.galois(-1)
    }

    /// Image under `ζ ↦ ζ^k` for `k` coprime to the conductor.
    pub fn galois(&self, k: i64) -> Cyclotomic {
        let n = self.conductor;
        let k = k.rem_euclid(n as i64) as u64;
        let t = self.terms.iter().map(|(&e, c)| (e * k % n, c.clone())).collect();
        Self::build(n, t)
    }

    /// Moves the value into the smallest cyclotomic field containing it.
    fn shrink(&mut self) {
        'outer: loop {
            let n = self.conductor;
            if n == 1 {
                return;
            }
            if self.terms.is_empty() {
                self.conductor = 1;
                return;
            }
            for (p, q) in factor(n) {
                let m = n / p;
                if p == 2 && q == 2 {
                    // ℚ(ζ_2m) = ℚ(ζ_m) for odd m; canonical exponents are even here.
                    let t = self.terms.iter().map(|(&e, c)| (e / 2 % m, c.clone())).collect();
                    *self = Cyclotomic { conductor: m, terms: canonicalize(m, t) };
                    continue 'outer;
                }
                if q > p {
                    if self.terms.keys().all(|e| e % p == 0) {
                        let t = self.terms.iter().map(|(&e, c)| (e / p, c.clone())).collect();
                        *self = Cyclotomic { conductor: m, terms: canonicalize(m, t) };
                        continue 'outer;
                    }
                    continue;
                }
                // p exactly divides n: the value descends iff, for each choice of the
                // other components, the p-component coefficients are all equal.
                let cof = m;
                let inv = inverse_mod(cof % p, p);
                let mut groups: BTreeMap<u64, Vec<(u64, &BigRational)>> = BTreeMap::new();
                for (&e, c) in &self.terms {
                    let comp = (e % p) * inv % p;
                    let key = (e + n - comp * cof % n) % n;
                    groups.entry(key).or_default().push((comp, c));
                }
                let descends = groups.values().all(|g| g.len() as u64 == p - 1 && g.iter().all(|(_, c)| *c == g[0].1));
                if descends {
                    let t = groups.iter().map(|(&key, g)| (key / p % m, -g[0].1.clone())).collect();
                    *self = Cyclotomic { conductor: m, terms: canonicalize(m, t) };
                    continue 'outer;
                }
            }
            return;
        }
    }

    /// Numerical value, for display and sanity checks only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        self.terms.iter().fold((0.0, 0.0), |(re, im), (&e, c)| {
            let a = 2.0 * std::f64::consts::PI * e as f64 / n;
            let v = rational_to_f64(c);
            (re + v * a.cos(), im + v * a.sin())
        })
    }
}

fn rational_to_f64(q: &BigRational) -> f64 {
    let n: f64 = q.numer().to_string().parse().unwrap_or(f64::NAN);
    let d: f64 = q.denom().to_string().parse().unwrap_or(f64::NAN);
    n / d
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;

    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_add(rhs).expect("conductor bound exceeded")
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;

    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_add(&-rhs).expect("conductor bound exceeded")
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;

    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_mul(rhs).expect("conductor bound exceeded")
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational() {
            return write!(f, "{q}");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else if i > 0 { "+" } else { "" };
            let a = c.abs();
            let coef = if a.is_one() { String::new() } else { format!("{a}*") };
            write!(f, "{sign}{coef}z{}^{e}", self.conductor)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k).unwrap()
    }

    #[test]
    fn root_relations() {
        assert_eq!(&z(3, 1) + &z(3, 2), Cyclotomic::from_integer(-1));
        assert_eq!(&z(5, 1) * &z(5, 4), Cyclotomic::one());
        let s = [1, 2, 3, 4].iter().fold(Cyclotomic::zero(), |acc, &k| &acc + &z(5, k));
        assert_eq!(s, Cyclotomic::from_integer(-1));
        assert_eq!(z(4, 2), Cyclotomic::from_integer(-1));
        assert_eq!(z(6, 1), -&z(3, 2));
    }

    #[test]
    fn shrinks_to_minimal_conductor() {
        assert_eq!(z(15, 5).conductor(), 3);
        assert_eq!(z(12, 3).conductor(), 4);
        assert_eq!(z(10, 2).conductor(), 5);
        let r5 = &(&z(5, 1) + &z(5, 4)) - &(&z(5, 2) + &z(5, 3));
        assert_eq!((&r5 * &r5).to_integer(), Some(BigInt::from(5)));
        let mixed = &z(7, 1) + &z(9, 1);
        assert_eq!(mixed.conductor(), 63);
        assert_eq!((&mixed - &z(9, 1)), z(7, 1));
    }

    #[test]
    fn conjugation() {
        let i = z(4, 1);
        assert_eq!(i.complex_conjugate(), -&i);
        assert_eq!((&i * &i.complex_conjugate()), Cyclotomic::one());
    }
}
