//! Permutation groups backed by a stabilizer chain (deterministic Schreier–Sims).
//!
//! Elements of a built group are addressed by a *rank* in `0..order`: the
//! mixed-radix number formed by the transversal indices met while sifting.
//! Ranks give the enumeration order and a dense key for per-element tables.

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest group order that may be walked element by element unless overridden.
pub const DEFAULT_ENUMERATION_CAP: u128 = 50_000_000;

/// Rule for picking the base point of a new chain level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BaseRule {
    /// Smallest point moved by the element that opened the level.
    #[default]
    SmallestMoved,
    /// Largest point moved by that element.
    LargestMoved,
}

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    position: Vec<u32>,
    transversal: Vec<Permutation>,
    transversal_inv: Vec<Permutation>,
}

const ABSENT: u32 = u32::MAX;

impl Level {
    fn new(base_point: usize, degree: usize) -> Self {
        let mut position = vec![ABSENT; degree];
        position[base_point] = 0;
        Level {
            base_point,
            gens: Vec::new(),
            orbit: vec![base_point],
            position,
            transversal: vec![Permutation::identity(degree)],
            transversal_inv: vec![Permutation::identity(degree)],
        }
    }
}

#[derive(Clone, Debug)]
struct StabChain {
    degree: usize,
    rule: BaseRule,
    levels: Vec<Level>,
}

impl StabChain {
    fn new(degree: usize, rule: BaseRule, base_prefix: &[usize]) -> Self {
        let levels = base_prefix.iter().map(|&b| Level::new(b, degree)).collect();
        StabChain { degree, rule, levels }
    }

    /// Sifts `h` starting at `from`; returns the residue and the level where it stopped.
    fn sift(&self, mut h: Permutation, from: usize) -> (Permutation, usize) {
        for l in from..self.levels.len() {
            let level = &self.levels[l];
            let beta = h.image(level.base_point);
            let pos = level.position[beta];
            if pos == ABSENT {
                return (h, l);
            }
            h = h.mul(&level.transversal_inv[pos as usize]);
        }
        (h, self.levels.len())
    }

    /// Adds `g` if it is not already a member. Returns true when the group grew.
    fn add_element(&mut self, g: &Permutation) -> bool {
        let (res, l) = self.sift(g.clone(), 0);
        if res.is_identity() {
            return false;
        }
        self.insert(0, l, res);
        true
    }

    /// Adds a residue that fixes the base points before `to` as a strong
    /// generator of every level in `from..=to`, deepest first.
    fn insert(&mut self, from: usize, to: usize, res: Permutation) {
        for m in (from + 1..=to).rev() {
            self.add_generator(m, res.clone());
        }
        self.add_generator(from, res);
    }

    fn add_generator(&mut self, lvl: usize, g: Permutation) {
        if lvl == self.levels.len() {
            let b = match self.rule {
                BaseRule::SmallestMoved => g.smallest_moved_point(),
                BaseRule::LargestMoved => g.largest_moved_point(),
            }
            .expect("nonidentity residue");
            self.levels.push(Level::new(b, self.degree));
        }
        self.levels[lvl].gens.push(g);
        let new_gen = self.levels[lvl].gens.len() - 1;
        let old_len = self.levels[lvl].orbit.len();
        for j in 0..old_len {
            self.schreier_step(lvl, j, new_gen);
        }
        let mut j = old_len;
        while j < self.levels[lvl].orbit.len() {
            for s in 0..self.levels[lvl].gens.len() {
                self.schreier_step(lvl, j, s);
            }
            j += 1;
        }
    }

    fn schreier_step(&mut self, lvl: usize, j: usize, s: usize) {
        let level = &self.levels[lvl];
        let beta = level.orbit[j];
        let gen = &level.gens[s];
        let gamma = gen.image(beta);
        let pos = level.position[gamma];
        if pos == ABSENT {
            let u = level.transversal[j].mul(gen);
            let level = &mut self.levels[lvl];
            level.position[gamma] = level.orbit.len() as u32;
            level.orbit.push(gamma);
            level.transversal_inv.push(u.inverse());
            level.transversal.push(u);
            return;
        }
        let h = level.transversal[j].mul(gen).mul(&level.transversal_inv[pos as usize]);
        if h.is_identity() {
            return;
        }
        let (res, l) = self.sift(h, lvl + 1);
        if !res.is_identity() {
            self.insert(lvl + 1, l, res);
        }
    }

    fn order(&self) -> Option<u128> {
        self.levels
            .iter()
            .try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
    }
}

/// An immutable permutation group with its stabilizer chain.
#[derive(Clone, Debug)]
pub struct Group {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: u128,
}

impl Group {
    /// Builds the group generated by `generators` on `degree` points.
    pub fn new(generators: Vec<Permutation>, degree: usize) -> Result<Group> {
        Self::with_base(generators, degree, BaseRule::SmallestMoved, &[])
    }

    /// Builds with an explicit base-point rule and an optional fixed base prefix.
    pub fn with_base(
        generators: Vec<Permutation>,
        degree: usize,
        rule: BaseRule,
        base_prefix: &[usize],
    ) -> Result<Group> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(g.degree(), degree));
            }
        }
        if let Some(&b) = base_prefix.iter().find(|&&b| b >= degree) {
            return Err(Error::PointOutOfRange { point: b + 1, degree });
        }
        let mut chain = StabChain::new(degree, rule, base_prefix);
        for g in &generators {
            chain.add_element(g);
        }
        let order = chain.order().ok_or_else(|| Error::InvalidParameters("group order exceeds 2^128".into()))?;
        Ok(Group { degree, generators, chain, order })
    }

    pub fn trivial(degree: usize) -> Group {
        Group::new(Vec::new(), degree).expect("trivial group")
    }

    /// Parses each generator from 1-based cycle notation.
    pub fn from_cycles(gens: &[&str], degree: usize) -> Result<Group> {
        let perms = gens.iter().map(|s| Permutation::parse(s, degree)).collect::<Result<Vec<_>>>()?;
        Group::new(perms, degree)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.base_point).collect()
    }

    /// Orbit lengths along the chain; their product is the order.
    pub fn transversal_lengths(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// All strong generators, deduplicated.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for l in &self.chain.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn is_member(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch(p.degree(), self.degree));
        }
        let (res, l) = self.chain.sift(p.clone(), 0);
        Ok(l == self.chain.levels.len() && res.is_identity())
    }

    pub(crate) fn contains(&self, p: &Permutation) -> bool {
        self.is_member(p).unwrap_or(false)
    }

    /// Rank of a member; `None` when `p` is not in the group.
    pub fn rank(&self, p: &Permutation) -> Option<u64> {
        if p.degree() != self.degree {
            return None;
        }
        let mut h = p.clone();
        let mut rank: u64 = 0;
        let mut radix: u64 = 1;
        for level in &self.chain.levels {
            let beta = h.image(level.base_point);
            let pos = level.position[beta];
            if pos == ABSENT {
                return None;
            }
            rank += radix * pos as u64;
            radix *= level.orbit.len() as u64;
            h = h.mul(&level.transversal_inv[pos as usize]);
        }
        h.is_identity().then_some(rank)
    }

    /// Rank of an element known to lie in the group. Only base images are tracked,
    /// so the cost is quadratic in the base length rather than linear in the degree.
    pub fn rank_of_member(&self, p: &Permutation) -> u64 {
        let imgs: Vec<usize> = self.chain.levels.iter().map(|l| p.image(l.base_point)).collect();
        self.rank_of_base_images(imgs)
    }

    /// Base points, in chain order.
    pub(crate) fn base_points(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.base_point).collect()
    }

    /// Rank of the member whose images of the base points are `imgs`.
    pub(crate) fn rank_of_base_images(&self, mut imgs: Vec<usize>) -> u64 {
        let levels = &self.chain.levels;
        let mut rank: u64 = 0;
        let mut radix: u64 = 1;
        for (l, level) in levels.iter().enumerate() {
            let pos = level.position[imgs[l]];
            debug_assert!(pos != ABSENT, "not a member");
            rank += radix * pos as u64;
            radix *= level.orbit.len() as u64;
            let inv = &level.transversal_inv[pos as usize];
            for img in imgs.iter_mut().skip(l + 1) {
                *img = inv.image(*img);
            }
        }
        rank
    }

    /// Inverse of [`Group::rank`].
    pub fn unrank(&self, mut rank: u64) -> Permutation {
        let mut digits = Vec::with_capacity(self.chain.levels.len());
        for level in &self.chain.levels {
            let n = level.orbit.len() as u64;
            digits.push((rank % n) as usize);
            rank /= n;
        }
        let mut g = self.identity();
        for (level, &d) in self.chain.levels.iter().zip(&digits).rev() {
            g = g.mul(&level.transversal[d]);
        }
        g
    }

    /// Stream over all elements in rank order, refusing groups larger than `cap`.
    pub fn enumerate_elements(&self, cap: u128) -> Result<ElementStream<'_>> {
        if self.order > cap {
            return Err(Error::CapExceeded { order: self.order, cap });
        }
        Ok(ElementStream::new(self))
    }

    /// Calls `f(rank, element)` for every element in rank order without allocating per element.
    pub fn for_each_element<F: FnMut(u64, &Permutation)>(&self, cap: u128, mut f: F) -> Result<()> {
        if self.order > cap {
            return Err(Error::CapExceeded { order: self.order, cap });
        }
        let levels = &self.chain.levels;
        let k = levels.len();
        if k == 0 {
            f(0, &self.identity());
            return Ok(());
        }
        let mut digits = vec![0usize; k];
        // prefix[l] = u_{k-1} ⋯ u_l ; prefix[k] = identity
        let mut prefix: Vec<Permutation> = vec![self.identity(); k + 1];
        for l in (0..k).rev() {
            let (head, tail) = prefix.split_at_mut(l + 1);
            tail[0].mul_into(&levels[l].transversal[0], &mut head[l]);
        }
        let mut rank: u64 = 0;
        loop {
            f(rank, &prefix[0]);
            rank += 1;
            let mut l = 0;
            loop {
                if l == k {
                    return Ok(());
                }
                digits[l] += 1;
                if digits[l] < levels[l].orbit.len() {
                    break;
                }
                digits[l] = 0;
                l += 1;
            }
            for m in (0..=l).rev() {
                let (head, tail) = prefix.split_at_mut(m + 1);
                tail[0].mul_into(&levels[m].transversal[digits[m]], &mut head[m]);
            }
        }
    }

    pub fn random_element<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = self.identity();
        for level in self.chain.levels.iter().rev() {
            let d = rng.gen_range(0..level.orbit.len());
            g = g.mul(&level.transversal[d]);
        }
        g
    }

    /// The subgroup generated by `gens`, which must lie in `self`.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<Group> {
        for g in &gens {
            if !self.is_member(g)? {
                return Err(Error::NotMember);
            }
        }
        Group::new(gens, self.degree)
    }

    pub fn is_subgroup_of(&self, other: &Group) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Whether `self` is normalized by every generator of `ambient`.
    pub fn is_normal_in(&self, ambient: &Group) -> bool {
        self.is_subgroup_of(ambient)
            && self
                .generators
                .iter()
                .all(|n| ambient.generators.iter().all(|g| self.contains(&n.conjugate_by(g))))
    }

    /// Smallest normal subgroup of `self` containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Result<Group> {
        for s in seeds {
            if !self.is_member(s)? {
                return Err(Error::NotMember);
            }
        }
        Ok(self.normal_closure_unchecked(seeds))
    }

    pub(crate) fn normal_closure_unchecked(&self, seeds: &[Permutation]) -> Group {
        let mut chain = StabChain::new(self.degree, BaseRule::SmallestMoved, &[]);
        let mut gens: Vec<Permutation> = Vec::new();
        for s in seeds {
            if chain.add_element(s) {
                gens.push(s.clone());
            }
        }
        let mut i = 0;
        while i < gens.len() {
            for g in &self.generators {
                let c = gens[i].conjugate_by(g);
                if chain.add_element(&c) {
                    gens.push(c);
                }
            }
            i += 1;
        }
        let order = chain.order().expect("subgroup order fits");
        Group { degree: self.degree, generators: gens, chain, order }
    }

    /// `[G, G]`: the normal closure of the generator commutators.
    pub fn derived_subgroup(&self) -> Group {
        let mut comms = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let c = Permutation::commutator(a, b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure_unchecked(&comms)
    }

    /// `G = G⁰ ≥ G¹ ≥ …`, stopping at the first perfect term.
    pub fn derived_series(&self) -> Vec<Group> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            if last.order == 1 {
                break;
            }
            let next = last.derived_subgroup();
            if next.order == last.order {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn is_soluble(&self) -> bool {
        self.derived_series().last().map(|g| g.order == 1).unwrap_or(true)
    }

    /// Stabilizer of `point`, taken from a chain rebuilt with `point` first in the base.
    pub fn stabilizer(&self, point: usize) -> Result<Group> {
        if point >= self.degree {
            return Err(Error::PointOutOfRange { point: point + 1, degree: self.degree });
        }
        let g = Group::with_base(self.strong_generators(), self.degree, BaseRule::SmallestMoved, &[point])?;
        let gens: Vec<Permutation> = g
            .chain
            .levels
            .iter()
            .skip(1)
            .flat_map(|l| l.gens.iter().cloned())
            .filter(|p| p.image(point) == point)
            .collect();
        Group::new(gens, self.degree)
    }

    /// Orbit of `point`, sorted.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut queue = vec![point];
        seen[point] = true;
        let mut i = 0;
        while i < queue.len() {
            let a = queue[i];
            for g in &self.generators {
                let b = g.image(a);
                if !seen[b] {
                    seen[b] = true;
                    queue.push(b);
                }
            }
            i += 1;
        }
        queue.sort_unstable();
        queue
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }
}

/// Every element of a group exactly once, in rank order.
pub struct ElementStream<'a> {
    group: &'a Group,
    digits: Vec<usize>,
    prefix: Vec<Permutation>,
    done: bool,
    yielded: u128,
}

impl<'a> ElementStream<'a> {
    fn new(group: &'a Group) -> Self {
        let levels = &group.chain.levels;
        let k = levels.len();
        let mut prefix = vec![group.identity(); k + 1];
        for l in (0..k).rev() {
            prefix[l] = prefix[l + 1].mul(&levels[l].transversal[0]);
        }
        ElementStream { group, digits: vec![0; k], prefix, done: false, yielded: 0 }
    }

    pub fn yielded(&self) -> u128 {
        self.yielded
    }
}

impl Iterator for ElementStream<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let out = self.prefix[0].clone();
        self.yielded += 1;
        let levels = &self.group.chain.levels;
        let k = levels.len();
        let mut l = 0;
        loop {
            if l == k {
                self.done = true;
                return Some(out);
            }
            self.digits[l] += 1;
            if self.digits[l] < levels[l].orbit.len() {
                break;
            }
            self.digits[l] = 0;
            l += 1;
        }
        for m in (0..=l).rev() {
            self.prefix[m] = self.prefix[m + 1].mul(&levels[m].transversal[self.digits[m]]);
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rem = (self.group.order - self.yielded) as usize;
        (rem, Some(rem))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn alt5() -> Group {
        Group::from_cycles(&["(1,2,3)", "(3,4,5)"], 5).unwrap()
    }

    fn frob21() -> Group {
        Group::from_cycles(&["(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"], 7).unwrap()
    }

    fn sym4() -> Group {
        Group::from_cycles(&["(1,2,3,4)", "(1,2)"], 4).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(alt5().order(), 60);
        assert_eq!(frob21().order(), 21);
        assert_eq!(sym4().order(), 24);
        assert_eq!(Group::trivial(3).order(), 1);
    }

    #[test]
    fn membership() {
        let a5 = alt5();
        assert!(!a5.is_member(&Permutation::parse("(1,2)", 5).unwrap()).unwrap());
        assert!(a5.is_member(&Permutation::identity(5)).unwrap());
        let f = frob21();
        assert!(f.is_member(&Permutation::parse("(1,2,3,4,5,6,7)", 7).unwrap()).unwrap());
        assert!(a5.is_member(&Permutation::identity(6)).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let f = frob21();
        assert_eq!(f.enumerate_elements(DEFAULT_ENUMERATION_CAP).unwrap().count(), 21);
        let a5 = alt5();
        let elts: Vec<_> = a5.enumerate_elements(DEFAULT_ENUMERATION_CAP).unwrap().collect();
        let distinct: HashSet<_> = elts.iter().cloned().collect();
        assert_eq!(distinct.len(), 60);
        assert_eq!(elts.iter().filter(|p| p.order() == 2).count(), 15);
    }

    #[test]
    fn enumeration_cap_refuses() {
        let s12 = Group::from_cycles(&["(1,2,3,4,5,6,7,8,9,10,11,12)", "(1,2)"], 12).unwrap();
        assert_eq!(s12.order(), 479_001_600);
        assert!(matches!(
            s12.enumerate_elements(DEFAULT_ENUMERATION_CAP),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn rank_roundtrip_and_stream_order() {
        let g = sym4();
        let mut n = 0;
        g.for_each_element(1000, |r, p| {
            assert_eq!(g.rank(p), Some(r));
            assert_eq!(g.rank_of_member(p), r);
            assert_eq!(&g.unrank(r), p);
            n += 1;
        })
        .unwrap();
        assert_eq!(n, 24);
        let streamed: Vec<_> = g.enumerate_elements(1000).unwrap().collect();
        for (r, p) in streamed.iter().enumerate() {
            assert_eq!(g.rank(p), Some(r as u64));
        }
    }

    #[test]
    fn derived_series_sym4_and_alt5() {
        let orders: Vec<u128> = sym4().derived_series().iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![24, 12, 4, 1]);
        assert!(sym4().is_soluble());
        let orders: Vec<u128> = alt5().derived_series().iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![60]);
        assert!(!alt5().is_soluble());
    }

    #[test]
    fn frobenius_kernel_is_normal_closure() {
        let f = frob21();
        let y = Permutation::parse("(1,2,3,4,5,6,7)", 7).unwrap();
        let n = f.normal_closure(&[y]).unwrap();
        assert_eq!(n.order(), 7);
        assert!(n.is_normal_in(&f));
    }

    #[test]
    fn stabilizer_orders() {
        let s5 = Group::from_cycles(&["(1,2,3,4,5)", "(1,2)"], 5).unwrap();
        let st = s5.stabilizer(2).unwrap();
        assert_eq!(st.order(), 24);
        assert!(st.generators().iter().all(|g| g.image(2) == 2));
    }

    #[test]
    fn base_rules_agree_on_order() {
        let gens = frob21().generators().to_vec();
        let a = Group::with_base(gens.clone(), 7, BaseRule::LargestMoved, &[]).unwrap();
        assert_eq!(a.order(), 21);
        let b = Group::with_base(gens, 7, BaseRule::SmallestMoved, &[4]).unwrap();
        assert_eq!(b.order(), 21);
        assert_eq!(b.base()[0], 4);
    }
}
