//! Permutations on `0..d`, composed left to right.
//!
//! `p.compose(&q)` applies `p` first, then `q`, so `i^(pq) = (i^p)^q`.
//! Conjugation follows the same convention: `x^w = w⁻¹ x w`.
//! Degrees up to 255 store one byte per image; larger degrees use two.

use std::fmt;
use std::hash::{Hash, Hasher};

use num_integer::Integer;

use crate::error::{Error, Result};

pub const MAX_NARROW_DEGREE: usize = 255;
pub const MAX_DEGREE: usize = u16::MAX as usize;

#[derive(Clone, PartialEq, Eq)]
enum Images {
    Narrow(Box<[u8]>),
    Wide(Box<[u16]>),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Permutation {
    images: Images,
}

impl Hash for Permutation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.images {
            Images::Narrow(v) => v.hash(state),
            Images::Wide(v) => v.hash(state),
        }
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} too large");
        let images = if degree <= MAX_NARROW_DEGREE {
            Images::Narrow((0..degree).map(|i| i as u8).collect())
        } else {
            Images::Wide((0..degree).map(|i| i as u16).collect())
        };
        Permutation { images }
    }

    /// Builds a permutation from its image array, checking bijectivity.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let d = images.len();
        if d > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(d));
        }
        let mut seen = vec![false; d];
        for &i in images {
            if i >= d || seen[i] {
                return Err(Error::NotBijection);
            }
            seen[i] = true;
        }
        Ok(Self::from_images_unchecked(images))
    }

    pub(crate) fn from_images_unchecked(images: &[usize]) -> Self {
        let d = images.len();
        let images = if d <= MAX_NARROW_DEGREE {
            Images::Narrow(images.iter().map(|&i| i as u8).collect())
        } else {
            Images::Wide(images.iter().map(|&i| i as u16).collect())
        };
        Permutation { images }
    }

    /// Product of cycles written with 1-based points, e.g. `"(1,2,3)(4,5)"`.
    /// Cycles are applied left to right, so `"(1,2)(2,3)"` sends 1→3, 2→1, 3→2.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(degree));
        }
        let mut acc = Self::identity(degree);
        let bytes = text.as_bytes();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Err(Error::Parse { pos, msg: "empty input".into() });
        }
        while pos < bytes.len() {
            if bytes[pos] != b'(' {
                return Err(Error::Parse { pos, msg: "expected '('".into() });
            }
            pos += 1;
            skip_ws(&mut pos);
            let mut cycle: Vec<usize> = Vec::new();
            if pos < bytes.len() && bytes[pos] == b')' {
                pos += 1;
                skip_ws(&mut pos);
                continue;
            }
            loop {
                skip_ws(&mut pos);
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(Error::Parse { pos, msg: "expected a point".into() });
                }
                let point: usize = text[start..pos]
                    .parse()
                    .map_err(|_| Error::Parse { pos: start, msg: "point too large".into() })?;
                if point == 0 || point > degree {
                    return Err(Error::PointOutOfRange { point, degree });
                }
                if cycle.contains(&(point - 1)) {
                    return Err(Error::RepeatedPoint(point));
                }
                cycle.push(point - 1);
                skip_ws(&mut pos);
                match bytes.get(pos) {
                    Some(b',') => pos += 1,
                    Some(b')') => {
                        pos += 1;
                        break;
                    }
                    _ => return Err(Error::Parse { pos, msg: "expected ',' or ')'".into() }),
                }
            }
            skip_ws(&mut pos);
            let mut img: Vec<usize> = (0..degree).collect();
            for (k, &a) in cycle.iter().enumerate() {
                img[a] = cycle[(k + 1) % cycle.len()];
            }
            acc = acc.mul(&Self::from_images_unchecked(&img));
        }
        Ok(acc)
    }

    pub fn degree(&self) -> usize {
        match &self.images {
            Images::Narrow(v) => v.len(),
            Images::Wide(v) => v.len(),
        }
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        match &self.images {
            Images::Narrow(v) => v[i] as usize,
            Images::Wide(v) => v[i] as usize,
        }
    }

    pub fn images(&self) -> Vec<usize> {
        (0..self.degree()).map(|i| self.image(i)).collect()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.degree()).all(|i| self.image(i) == i)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.mul(other))
    }

    /// Unchecked product for internal hot paths; panics on degree mismatch.
    #[inline]
    pub(crate) fn mul(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        let images = match (&self.images, &other.images) {
            (Images::Narrow(a), Images::Narrow(b)) => Images::Narrow(a.iter().map(|&i| b[i as usize]).collect()),
            (Images::Wide(a), Images::Wide(b)) => Images::Wide(a.iter().map(|&i| b[i as usize]).collect()),
            _ => unreachable!("equal degrees share a storage width"),
        };
        Permutation { images }
    }

    pub(crate) fn mul_into(&self, other: &Permutation, out: &mut Permutation) {
        match (&self.images, &other.images, &mut out.images) {
            (Images::Narrow(a), Images::Narrow(b), Images::Narrow(o)) => {
                for (dst, &i) in o.iter_mut().zip(a.iter()) {
                    *dst = b[i as usize];
                }
            }
            (Images::Wide(a), Images::Wide(b), Images::Wide(o)) => {
                for (dst, &i) in o.iter_mut().zip(a.iter()) {
                    *dst = b[i as usize];
                }
            }
            _ => panic!("degree mismatch"),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let images = match &self.images {
            Images::Narrow(v) => {
                let mut inv = vec![0u8; v.len()];
                for (i, &j) in v.iter().enumerate() {
                    inv[j as usize] = i as u8;
                }
                Images::Narrow(inv.into())
            }
            Images::Wide(v) => {
                let mut inv = vec![0u16; v.len()];
                for (i, &j) in v.iter().enumerate() {
                    inv[j as usize] = i as u16;
                }
                Images::Wide(inv.into())
            }
        };
        Permutation { images }
    }

    /// `w⁻¹ · self · w`.
    pub fn conjugate_by(&self, w: &Permutation) -> Permutation {
        w.inverse().mul(self).mul(w)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    pub fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
        a.inverse().mul(&b.inverse()).mul(a).mul(b)
    }

    pub fn pow(&self, exp: i64) -> Permutation {
        let order = self.order();
        let e = (exp as i128).rem_euclid(order as i128) as u64;
        // Images of the e-th power read straight off the cycles.
        let mut out = vec![0usize; self.degree()];
        for cycle in self.cycles_with_fixed() {
            let len = cycle.len();
            let shift = (e % len as u64) as usize;
            for (k, &a) in cycle.iter().enumerate() {
                out[a] = cycle[(k + shift) % len];
            }
        }
        Self::from_images_unchecked(&out)
    }

    /// All cycles including fixed points, each starting at its smallest point.
    fn cycles_with_fixed(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.image(start);
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.image(j);
            }
            out.push(cycle);
        }
        out
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.cycles_with_fixed().into_iter().filter(|c| c.len() > 1).collect()
    }

    /// Cycle lengths including fixed points, in descending order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles_with_fixed().iter().map(|c| c.len()).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut ord: u64 = 1;
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut j = start;
            loop {
                seen[j] = true;
                len += 1;
                j = self.image(j);
                if j == start {
                    break;
                }
            }
            ord = ord.lcm(&len);
        }
        ord
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.image(i) == i).collect()
    }

    pub fn num_fixed_points(&self) -> usize {
        (0..self.degree()).filter(|&i| self.image(i) == i).count()
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        (0..self.degree()).find(|&i| self.image(i) != i)
    }

    pub fn largest_moved_point(&self) -> Option<usize> {
        (0..self.degree()).rev().find(|&i| self.image(i) != i)
    }

    /// Disjoint-cycle notation with 1-based points; the identity prints as `()`.
    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            s.push_str(&pts.join(","));
            s.push(')');
        }
        s
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({})", self.cycle_string())
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| (0..self.degree()).map(|i| self.image(i)).cmp((0..other.degree()).map(|i| other.image(i))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, d: usize) -> Permutation {
        Permutation::parse(s, d).unwrap()
    }

    #[test]
    fn parse_reads_cycles() {
        assert_eq!(p("(1,2,3)(4,5)", 5).images(), vec![1, 2, 0, 4, 3]);
        assert!(p("()", 4).is_identity());
        assert_eq!(p("( 1 , 2 )", 3).images(), vec![1, 0, 2]);
    }

    #[test]
    fn parse_composes_left_to_right() {
        // 1→3, 2→1, 3→2
        assert_eq!(p("(1,2)(2,3)", 3).images(), vec![2, 0, 1]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Permutation::parse("(1,2", 3), Err(Error::Parse { .. })));
        assert!(matches!(Permutation::parse("1,2)", 3), Err(Error::Parse { .. })));
        assert!(matches!(Permutation::parse("", 3), Err(Error::Parse { .. })));
        assert!(matches!(Permutation::parse("(1,4)", 3), Err(Error::PointOutOfRange { point: 4, degree: 3 })));
        assert!(matches!(Permutation::parse("(0,1)", 3), Err(Error::PointOutOfRange { .. })));
        assert!(matches!(Permutation::parse("(1,2,1)", 3), Err(Error::RepeatedPoint(1))));
    }

    #[test]
    fn basic_invariants() {
        let x = p("(1,2,3)(4,5)", 5);
        assert_eq!(x.order(), 6);
        assert_eq!(x.cycle_type(), vec![3, 2]);
        assert_eq!(p("(1,2,3)", 3).inverse(), p("(1,3,2)", 3));
        assert_eq!(p("(1,2)", 5).fixed_points(), vec![2, 3, 4]);
        assert_eq!(Permutation::identity(4).to_string(), "()");
        assert_eq!(x.to_string(), "(1,2,3)(4,5)");
    }

    #[test]
    fn compose_degree_mismatch() {
        assert_eq!(p("(1,2)", 2).compose(&p("(1,2)", 3)), Err(Error::DegreeMismatch(2, 3)));
    }

    #[test]
    fn wide_storage_matches_narrow() {
        let a = p("(1,2,3)(250,300)", 300);
        assert_eq!(a.order(), 6);
        assert_eq!(a.mul(&a.inverse()), Permutation::identity(300));
        assert_eq!(a.pow(3).cycles(), vec![vec![249, 299]]);
    }

    #[test]
    fn pow_and_conjugation() {
        let x = p("(1,2,3,4,5)", 5);
        assert_eq!(x.pow(2), x.mul(&x));
        assert_eq!(x.pow(-1), x.inverse());
        let w = p("(1,2)", 5);
        assert_eq!(x.conjugate_by(&w), p("(1,3,4,5,2)", 5));
        // w⁻¹ x w maps i^w ↦ (i^x)^w
        let c = x.conjugate_by(&w);
        for i in 0..5 {
            assert_eq!(c.image(w.image(i)), w.image(x.image(i)));
        }
    }
}
