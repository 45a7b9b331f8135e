//! Class search in `G = (2≀3)≀5`.
//!
//! Elements are held as `(h₀,…,h₄; s)`, the base element acting as `hᵢ` on block `i`
//! followed by the block shift `i ↦ i + s`. Classes are named by exact invariants:
//! for `s ≠ 0` the `H`-class of `h₀h_s h_{2s} h_{3s} h_{4s}`, for `s = 0` the
//! rotation-minimal tuple of `H`-classes.

use std::collections::{BTreeMap, BTreeSet};

use super::structure::elements;
use super::{timed, CheckResult, Outcome, Tier};
use crate::constructions::{symmetric, wreath_cyclic, Wreath};
use crate::{ClassPartition, Permutation, Result};

const BLOCKS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WreathElement {
    pub parts: [u8; BLOCKS],
    pub shift: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassKey {
    Shift { shift: u8, class: u8 },
    Base([u8; BLOCKS]),
}

pub struct WreathClassSearch {
    outer: Wreath,
    h_elements: Vec<Permutation>,
    h_mul: Vec<u8>,
    h_inv: Vec<u8>,
    h_class: Vec<u8>,
    h_class_names: Vec<String>,
    h_class_members: Vec<Vec<u8>>,
    h_identity: u8,
    budget: u64,
    products: u64,
}

impl WreathClassSearch {
    pub fn new(budget: u64) -> Result<WreathClassSearch> {
        let h = wreath_cyclic(&symmetric(2)?, 3)?.group;
        let outer = wreath_cyclic(&h, BLOCKS)?;
        let part = ClassPartition::new(&h)?;
        let h_elements = elements(&h)?;
        let n = h_elements.len();
        let index = |p: &Permutation| h.rank_of_member(p) as u8;
        let mut h_mul = vec![0u8; n * n];
        for (a, x) in h_elements.iter().enumerate() {
            for (b, y) in h_elements.iter().enumerate() {
                h_mul[a * n + b] = index(&x.mul(y));
            }
        }
        let h_inv = h_elements.iter().map(|x| index(&x.inverse())).collect();
        let h_class: Vec<u8> = h_elements.iter().map(|x| part.class_of_member(x) as u8).collect();
        let mut h_class_members = vec![Vec::new(); part.len()];
        for (i, &c) in h_class.iter().enumerate() {
            h_class_members[c as usize].push(i as u8);
        }
        Ok(WreathClassSearch {
            h_identity: index(&Permutation::identity(h.degree())),
            h_class_names: part.classes().iter().map(|c| c.name.clone()).collect(),
            outer,
            h_elements,
            h_mul,
            h_inv,
            h_class,
            h_class_members,
            budget,
            products: 0,
        })
    }

    pub fn group_order(&self) -> u128 {
        self.outer.group.order()
    }

    pub fn products(&self) -> u64 {
        self.products
    }

    fn hm(&self, a: u8, b: u8) -> u8 {
        self.h_mul[a as usize * self.h_elements.len() + b as usize]
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement { parts: [self.h_identity; BLOCKS], shift: 0 }
    }

    pub fn mul(&self, x: &WreathElement, y: &WreathElement) -> WreathElement {
        let mut parts = [0u8; BLOCKS];
        for (i, p) in parts.iter_mut().enumerate() {
            *p = self.hm(x.parts[i], y.parts[(i + x.shift as usize) % BLOCKS]);
        }
        WreathElement { parts, shift: (x.shift + y.shift) % BLOCKS as u8 }
    }

    pub fn pow(&self, x: &WreathElement, e: u64) -> WreathElement {
        (0..e).fold(self.identity(), |acc, _| self.mul(&acc, x))
    }

    pub fn order(&self, x: &WreathElement) -> u64 {
        let mut y = *x;
        let mut n = 1;
        while y != self.identity() {
            y = self.mul(&y, x);
            n += 1;
        }
        n
    }

    pub fn to_permutation(&self, x: &WreathElement) -> Result<Permutation> {
        let parts: Vec<Permutation> = x.parts.iter().map(|&p| self.h_elements[p as usize].clone()).collect();
        let top = self.outer.top_cycle().pow(x.shift as i64);
        Ok(self.outer.base_element(&parts)?.mul(&top))
    }

    pub fn key(&self, x: &WreathElement) -> ClassKey {
        if x.shift != 0 {
            let s = x.shift as usize;
            let cycle = (0..BLOCKS).fold(self.h_identity, |acc, k| self.hm(acc, x.parts[k * s % BLOCKS]));
            return ClassKey::Shift { shift: x.shift, class: self.h_class[cycle as usize] };
        }
        let classes = x.parts.map(|p| self.h_class[p as usize]);
        ClassKey::Base((0..BLOCKS).map(|r| rotate(&classes, r)).min().expect("five rotations"))
    }

    pub fn name(&self, key: &ClassKey) -> String {
        match key {
            ClassKey::Shift { shift, class } => format!("s{shift}:{}", self.h_class_names[*class as usize]),
            ClassKey::Base(t) => {
                let names: Vec<&str> = t.iter().map(|&c| self.h_class_names[c as usize].as_str()).collect();
                format!("[{}]", names.join(","))
            }
        }
    }

    pub fn representative(&self, key: &ClassKey) -> WreathElement {
        match *key {
            ClassKey::Shift { shift, class } => {
                let mut parts = [self.h_identity; BLOCKS];
                parts[0] = self.h_class_members[class as usize][0];
                WreathElement { parts, shift }
            }
            ClassKey::Base(t) => WreathElement { parts: t.map(|c| self.h_class_members[c as usize][0]), shift: 0 },
        }
    }

    /// Every member of the class, each exactly once.
    pub fn members(&self, key: &ClassKey) -> Vec<WreathElement> {
        let n = self.h_elements.len() as u8;
        let mut out = Vec::new();
        match *key {
            ClassKey::Shift { shift, class } => {
                let s = shift as usize;
                for code in 0..(n as u32).pow(BLOCKS as u32 - 1) {
                    let mut parts = [0u8; BLOCKS];
                    let mut c = code;
                    for p in parts.iter_mut().skip(1) {
                        *p = (c % n as u32) as u8;
                        c /= n as u32;
                    }
                    let rest = (1..BLOCKS).fold(self.h_identity, |acc, k| self.hm(acc, parts[k * s % BLOCKS]));
                    let rest_inv = self.h_inv[rest as usize];
                    for &x in &self.h_class_members[class as usize] {
                        parts[0] = self.hm(x, rest_inv);
                        out.push(WreathElement { parts, shift });
                    }
                }
            }
            ClassKey::Base(t) => {
                let rotations: BTreeSet<[u8; BLOCKS]> = (0..BLOCKS).map(|r| rotate(&t, r)).collect();
                for pattern in rotations {
                    let mut stack = vec![(0usize, [0u8; BLOCKS])];
                    while let Some((i, parts)) = stack.pop() {
                        if i == BLOCKS {
                            out.push(WreathElement { parts, shift: 0 });
                            continue;
                        }
                        for &m in &self.h_class_members[pattern[i] as usize] {
                            let mut next = parts;
                            next[i] = m;
                            stack.push((i + 1, next));
                        }
                    }
                }
            }
        }
        out
    }

    /// Classes of `x·y` for a fixed `x` in the first class and `y` over the second;
    /// `None` once the product budget is spent.
    pub fn class_product(&mut self, a: &ClassKey, b: &ClassKey) -> Option<BTreeSet<ClassKey>> {
        let x = self.representative(a);
        let ys = self.members(b);
        if self.products + ys.len() as u64 > self.budget {
            return None;
        }
        self.products += ys.len() as u64;
        Some(ys.iter().map(|y| self.key(&self.mul(&x, y))).collect())
    }

    /// `D_K` for a union of classes: the classes of all generating powers.
    pub fn closure(&self, keys: &[ClassKey]) -> BTreeSet<ClassKey> {
        let mut out = BTreeSet::new();
        for k in keys {
            let x = self.representative(k);
            let n = self.order(&x);
            let mut y = self.identity();
            for e in 1..n {
                y = self.mul(&y, &x);
                if num_integer::gcd(e, n) == 1 {
                    out.insert(self.key(&y));
                }
            }
        }
        out
    }

    /// All class keys whose representatives have the given order, split by shift.
    pub fn classes_of_order(&self, order: u64) -> Vec<ClassKey> {
        let nc = self.h_class_names.len() as u8;
        let mut keys = BTreeSet::new();
        for shift in 1..BLOCKS as u8 {
            for class in 0..nc {
                keys.insert(ClassKey::Shift { shift, class });
            }
        }
        let mut code = [0u8; BLOCKS];
        loop {
            keys.insert(ClassKey::Base((0..BLOCKS).map(|r| rotate(&code, r)).min().expect("rotations")));
            let Some(i) = code.iter().position(|&c| c + 1 < nc) else { break };
            code[i] += 1;
            code[..i].fill(0);
        }
        keys.into_iter().filter(|k| self.order(&self.representative(k)) == order).collect()
    }

    /// Searches classes `I` of order 15 and `J` of order 3 with `(I ∪ J)² ⊆ D_{I∪J}`,
    /// then reports `|G : ⟨I ∪ J⟩|` for each hit.
    pub fn run(&mut self) -> Result<Outcome> {
        let is = self.classes_of_order(15);
        let js = self.classes_of_order(3);
        let mut squares: BTreeMap<ClassKey, BTreeSet<ClassKey>> = BTreeMap::new();
        for k in is.iter().chain(&js) {
            match self.class_product(k, k) {
                Some(p) => squares.insert(*k, p),
                None => return Ok(self.exhausted(&is, &js)),
            };
        }
        let mut hits = Vec::new();
        let mut index_two = Vec::new();
        for i in &is {
            for j in &js {
                let d = self.closure(&[*i, *j]);
                if !squares[i].is_subset(&d) || !squares[j].is_subset(&d) {
                    continue;
                }
                let Some(ij) = self.class_product(i, j) else { return Ok(self.exhausted(&is, &js)) };
                if !ij.is_subset(&d) {
                    continue;
                }
                let gens = [self.to_permutation(&self.representative(i))?, self.to_permutation(&self.representative(j))?];
                let span = self.outer.group.normal_closure(&gens)?;
                let index = self.group_order() / span.order();
                hits.push((*i, *j, index));
                if index == 2 {
                    index_two.push((*i, *j));
                }
            }
        }
        let base = Outcome::pass()
            .with("|G|", self.group_order())
            .with("order-15 classes", is.len())
            .with("order-3 classes", js.len())
            .with("K^2 in D_K pairs", hits.len())
            .with("index-2 pairs", index_two.len())
            .with("products", self.products);
        match index_two.first() {
            Some((i, j)) => Ok(base.with("I", self.name(i)).with("J", self.name(j)).with("|G:<K>|", 2)),
            None => {
                let mut o = Outcome::fail("no I ∪ J with K² ⊆ D_K has index 2");
                o.witnesses = base.witnesses;
                for (i, j, idx) in hits.iter().take(5) {
                    o.push(format!("{} ∪ {}", self.name(i), self.name(j)), format!("index {idx}"));
                }
                Ok(o)
            }
        }
    }

    fn exhausted(&self, is: &[ClassKey], js: &[ClassKey]) -> Outcome {
        Outcome::inconclusive(format!("product budget of {} exhausted", self.budget))
            .with("order-15 classes", is.len())
            .with("order-3 classes", js.len())
            .with("products", self.products)
    }
}

fn rotate(t: &[u8; BLOCKS], r: usize) -> [u8; BLOCKS] {
    std::array::from_fn(|i| t[(i + r) % BLOCKS])
}

pub fn check_wreath_class_search(budget: u64) -> CheckResult {
    timed("example-1.4", Tier::Slow, None, || WreathClassSearch::new(budget)?.run())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn random(_: &WreathClassSearch, rng: &mut ChaCha8Rng) -> WreathElement {
        WreathElement { parts: std::array::from_fn(|_| rng.gen_range(0..24)), shift: rng.gen_range(0..5) }
    }

    #[test]
    fn encoding_matches_permutations() {
        let s = WreathClassSearch::new(u64::MAX).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let (x, y) = (random(&s, &mut rng), random(&s, &mut rng));
            let px = s.to_permutation(&x).unwrap();
            assert!(s.outer.group.is_member(&px).unwrap());
            assert_eq!(s.to_permutation(&s.mul(&x, &y)).unwrap(), px.mul(&s.to_permutation(&y).unwrap()));
            assert_eq!(s.order(&x), px.order());
        }
    }

    #[test]
    fn keys_are_conjugation_invariant_and_members_exact() {
        let s = WreathClassSearch::new(u64::MAX).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let (x, w) = (random(&s, &mut rng), random(&s, &mut rng));
            let wi = (0..s.order(&w) - 1).fold(s.identity(), |acc, _| s.mul(&acc, &w));
            assert_eq!(s.key(&x), s.key(&s.mul(&s.mul(&wi, &x), &w)));
        }
        let is = s.classes_of_order(15);
        let js = s.classes_of_order(3);
        assert_eq!(is.len(), 8);
        assert_eq!(js.len(), 50);
        for k in [is[0], js[0], js[49]] {
            let members = s.members(&k);
            let set: HashSet<WreathElement> = members.iter().copied().collect();
            assert_eq!(set.len(), members.len());
            assert!(members.iter().all(|m| s.key(m) == k));
            assert_eq!(conjugacy_orbit(&s, s.representative(&k)), set);
        }
    }

    fn conjugacy_orbit(s: &WreathClassSearch, x: WreathElement) -> HashSet<WreathElement> {
        let mut gens = vec![WreathElement { parts: [s.h_identity; BLOCKS], shift: 1 }];
        for h in 0..24u8 {
            let mut parts = [s.h_identity; BLOCKS];
            parts[0] = h;
            gens.push(WreathElement { parts, shift: 0 });
        }
        let inv: Vec<WreathElement> = gens.iter().map(|w| s.pow(w, s.order(w) - 1)).collect();
        let mut seen = HashSet::from([x]);
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            for (w, wi) in gens.iter().zip(&inv) {
                let z = s.mul(&s.mul(wi, &y), w);
                if seen.insert(z) {
                    stack.push(z);
                }
            }
        }
        seen
    }
}
