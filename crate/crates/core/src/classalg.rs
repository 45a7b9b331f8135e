//! Conjugacy classes, normal subsets and the expansion calculus `K² ⊆ D_K`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_integer::Integer;
use serde::Serialize;

use crate::group::Group;
use crate::perm::Permutation;
use crate::{Error, Result};

/// Largest group order for which the rank-indexed class table is materialized.
pub const DEFAULT_CLASS_CAP: u128 = 1_000_000;

/// Default limit on the number of odd-order classes in a subset audit.
pub const DEFAULT_SEARCH_BOUND: usize = 22;

const UNASSIGNED: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub name: String,
    pub representative: Permutation,
    pub size: u64,
    pub order: u64,
}

/// A union of conjugacy classes, stored as a bit mask over class indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalSubset {
    words: Vec<u64>,
    len: usize,
}

impl NormalSubset {
    pub fn empty(num_classes: usize) -> Self {
        NormalSubset { words: vec![0; num_classes.div_ceil(64)], len: num_classes }
    }

    pub fn full(num_classes: usize) -> Self {
        let mut s = Self::empty(num_classes);
        (0..num_classes).for_each(|i| s.insert(i));
        s
    }

    pub fn from_classes<I: IntoIterator<Item = usize>>(num_classes: usize, classes: I) -> Self {
        let mut s = Self::empty(num_classes);
        for c in classes {
            s.insert(c);
        }
        s
    }

    pub fn num_classes(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, c: usize) {
        assert!(c < self.len, "class index out of range");
        self.words[c / 64] |= 1 << (c % 64);
    }

    pub fn remove(&mut self, c: usize) {
        assert!(c < self.len, "class index out of range");
        self.words[c / 64] &= !(1 << (c % 64));
    }

    pub fn contains(&self, c: usize) -> bool {
        c < self.len && self.words[c / 64] >> (c % 64) & 1 == 1
    }

    pub fn union_with(&mut self, other: &NormalSubset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn union(&self, other: &NormalSubset) -> NormalSubset {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &NormalSubset) -> NormalSubset {
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        NormalSubset { words, len: self.len }
    }

    pub fn difference(&self, other: &NormalSubset) -> NormalSubset {
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect();
        NormalSubset { words, len: self.len }
    }

    pub fn complement(&self) -> NormalSubset {
        Self::full(self.len).difference(self)
    }

    pub fn is_subset_of(&self, other: &NormalSubset) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Number of classes in the union.
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&c| self.contains(c))
    }
}

/// The conjugacy classes of an enumerable group with a rank-indexed lookup table.
pub struct ClassPartition {
    group: Group,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<u32>,
    members: Vec<Vec<u32>>,
    inverse: Vec<usize>,
    power_maps: BTreeMap<u64, Vec<usize>>,
    galois: Vec<NormalSubset>,
    products: Vec<OnceLock<Vec<u64>>>,
}

impl fmt::Debug for ClassPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClassPartition")
            .field("order", &self.group.order())
            .field("classes", &self.classes.iter().map(|c| &c.name).collect::<Vec<_>>())
            .finish()
    }
}

/// `0 → A`, `25 → Z`, `26 → AA`.
fn class_letters(mut i: usize) -> String {
    let mut s = Vec::new();
    loop {
        s.push(b'A' + (i % 26) as u8);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).unwrap()
}

pub(crate) fn prime_divisors(mut n: u128) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p: u128 = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p as u64);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}

pub(crate) fn is_power_of(mut n: u64, p: u64) -> bool {
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

impl ClassPartition {
    pub fn new(group: &Group) -> Result<Self> {
        Self::with_cap(group, DEFAULT_CLASS_CAP)
    }

    /// Computes the classes by conjugation closure in rank order. The first
    /// unassigned rank seen opens a new class and supplies its representative.
    pub fn with_cap(group: &Group, cap: u128) -> Result<Self> {
        let n = group.order();
        if n > cap || n > u32::MAX as u128 {
            return Err(Error::CapExceeded { order: n, cap });
        }
        let n = n as usize;
        let gens: Vec<&Permutation> = group.generators().iter().filter(|g| !g.is_identity()).collect();
        let base = group.base_points();
        let preimages: Vec<Vec<usize>> = gens
            .iter()
            .map(|g| {
                let gi = g.inverse();
                base.iter().map(|&b| gi.image(b)).collect()
            })
            .collect();
        let mut class_of = vec![UNASSIGNED; n];
        let mut members: Vec<Vec<u32>> = Vec::new();
        for r in 0..n {
            if class_of[r] != UNASSIGNED {
                continue;
            }
            let id = members.len() as u32;
            class_of[r] = id;
            let mut queue = vec![r as u32];
            let mut i = 0;
            while i < queue.len() {
                let x = group.unrank(queue[i] as u64);
                for (g, pre) in gens.iter().zip(&preimages) {
                    let imgs = pre.iter().map(|&b| g.image(x.image(b))).collect();
                    let ry = group.rank_of_base_images(imgs) as usize;
                    if class_of[ry] == UNASSIGNED {
                        class_of[ry] = id;
                        queue.push(ry as u32);
                    }
                }
                i += 1;
            }
            queue.sort_unstable();
            members.push(queue);
        }

        let reps: Vec<Permutation> = members.iter().map(|m| group.unrank(m[0] as u64)).collect();
        let orders: Vec<u64> = reps.iter().map(|r| r.order()).collect();
        let mut perm: Vec<usize> = (0..members.len()).collect();
        perm.sort_by_key(|&c| (orders[c], members[c].len(), c));
        let mut new_index = vec![0u32; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            new_index[old] = new as u32;
        }
        for c in class_of.iter_mut() {
            *c = new_index[*c as usize];
        }
        let mut members_sorted = vec![Vec::new(); perm.len()];
        for (old, m) in members.into_iter().enumerate() {
            members_sorted[new_index[old] as usize] = m;
        }

        let mut letter_count: BTreeMap<u64, usize> = BTreeMap::new();
        let classes: Vec<ConjugacyClass> = perm
            .iter()
            .map(|&old| {
                let order = orders[old];
                let k = letter_count.entry(order).or_insert(0);
                let name = format!("{order}{}", class_letters(*k));
                *k += 1;
                ConjugacyClass {
                    name,
                    representative: reps[old].clone(),
                    size: members_sorted[new_index[old] as usize].len() as u64,
                    order,
                }
            })
            .collect();

        let k = classes.len();
        let mut part = ClassPartition {
            group: group.clone(),
            classes,
            class_of,
            members: members_sorted,
            inverse: Vec::new(),
            power_maps: BTreeMap::new(),
            galois: Vec::new(),
            products: (0..k * k).map(|_| OnceLock::new()).collect(),
        };
        part.inverse = (0..k).map(|c| part.power_class(c, -1)).collect();
        for p in prime_divisors(group.order()) {
            let map = (0..k).map(|c| part.power_class(c, p as i64)).collect();
            part.power_maps.insert(p, map);
        }
        part.galois = (0..k)
            .map(|c| {
                let o = part.classes[c].order;
                let mut s = NormalSubset::empty(k);
                for e in 1..=o.max(1) {
                    if e.gcd(&o) == 1 {
                        s.insert(part.power_class(c, e as i64));
                    }
                }
                s
            })
            .collect();
        Ok(part)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, c: usize) -> Result<&ConjugacyClass> {
        self.classes.get(c).ok_or(Error::InvalidClass(c))
    }

    pub fn class_index(&self, name: &str) -> Result<usize> {
        self.classes
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| Error::UnknownClassName(name.to_string()))
    }

    /// Class of an arbitrary permutation; errors if it is not in the group.
    pub fn class_of(&self, g: &Permutation) -> Result<usize> {
        self.group.rank(g).map(|r| self.class_of[r as usize] as usize).ok_or(Error::NotMember)
    }

    /// Class of an element known to lie in the group.
    pub fn class_of_member(&self, g: &Permutation) -> usize {
        self.class_of[self.group.rank_of_member(g) as usize] as usize
    }

    /// Class of the element with the given rank.
    pub fn class_of_rank(&self, rank: u64) -> usize {
        self.class_of[rank as usize] as usize
    }

    pub fn class_members(&self, c: usize) -> impl Iterator<Item = Permutation> + '_ {
        self.members[c].iter().map(move |&r| self.group.unrank(r as u64))
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse[c]
    }

    /// Class of `rep(c)^e`.
    pub fn power_class(&self, c: usize, e: i64) -> usize {
        self.class_of_member(&self.classes[c].representative.pow(e))
    }

    /// Power maps for every prime dividing the group order.
    pub fn power_maps(&self) -> &BTreeMap<u64, Vec<usize>> {
        &self.power_maps
    }

    /// `D_x` for `x` in class `c`: the classes of all generators of `⟨x⟩`.
    pub fn rational_class(&self, c: usize) -> &NormalSubset {
        &self.galois[c]
    }

    pub fn empty_subset(&self) -> NormalSubset {
        NormalSubset::empty(self.len())
    }

    pub fn subset(&self, names: &[&str]) -> Result<NormalSubset> {
        let mut s = self.empty_subset();
        for n in names {
            s.insert(self.class_index(n.trim())?);
        }
        Ok(s)
    }

    pub fn names(&self, k: &NormalSubset) -> Vec<String> {
        k.iter().map(|c| self.classes[c].name.clone()).collect()
    }

    pub fn element_count(&self, k: &NormalSubset) -> u128 {
        k.iter().map(|c| self.classes[c].size as u128).sum()
    }

    /// Classes of odd element order, including the identity class.
    pub fn odd_classes(&self) -> NormalSubset {
        NormalSubset::from_classes(self.len(), (0..self.len()).filter(|&c| self.classes[c].order % 2 == 1))
    }

    /// Entry `k` counts the pairs `(x, y) ∈ C_i × C_j` with `xy ∈ C_k`.
    /// One factor is held at its representative while the smaller class is scanned.
    pub fn class_product_counts(&self, i: usize, j: usize) -> &[u64] {
        let k = self.len();
        self.products[i * k + j].get_or_init(|| {
            let (ci, cj) = (&self.classes[i], &self.classes[j]);
            let mut counts = vec![0u64; k];
            if ci.size <= cj.size {
                let y = &cj.representative;
                for x in self.class_members(i) {
                    counts[self.class_of_member(&x.mul(y))] += 1;
                }
                for c in counts.iter_mut() {
                    *c *= cj.size;
                }
            } else {
                let x = &ci.representative;
                for y in self.class_members(j) {
                    counts[self.class_of_member(&x.mul(&y))] += 1;
                }
                for c in counts.iter_mut() {
                    *c *= ci.size;
                }
            }
            counts
        })
    }

    /// `a_ijk`: for fixed `z ∈ C_k`, the number of `(x, y) ∈ C_i × C_j` with `xy = z`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> u64 {
        self.class_product_counts(i, j)[k] / self.classes[k].size
    }

    /// Classes meeting `C_i · C_j`.
    pub fn class_product(&self, i: usize, j: usize) -> NormalSubset {
        let counts = self.class_product_counts(i, j);
        NormalSubset::from_classes(self.len(), (0..self.len()).filter(|&c| counts[c] > 0))
    }

    /// `D_K`; the identity class closes to itself.
    pub fn rational_closure(&self, k: &NormalSubset) -> NormalSubset {
        let mut d = self.empty_subset();
        for c in k.iter() {
            d.union_with(&self.galois[c]);
        }
        d
    }

    /// Classes meeting `{mn | m ∈ K, n ∈ L}`.
    pub fn normal_set_product(&self, k: &NormalSubset, l: &NormalSubset) -> NormalSubset {
        let mut out = self.empty_subset();
        for i in k.iter() {
            for j in l.iter() {
                out.union_with(&self.class_product(i, j));
            }
        }
        out
    }

    /// `K^n` as a union of classes.
    pub fn normal_set_power(&self, k: &NormalSubset, n: u32) -> NormalSubset {
        let mut acc = k.clone();
        for _ in 1..n {
            acc = self.normal_set_product(&acc, k);
        }
        acc
    }

    pub fn expansion_check(&self, k: &NormalSubset) -> ExpansionVerdict {
        let sq = self.normal_set_product(k, k);
        let d = self.rational_closure(k);
        let violating = sq.difference(&d).iter().next();
        ExpansionVerdict { holds: violating.is_none(), violating_class: violating, square: sq, closure: d }
    }

    /// `⟨K⟩`, the normal closure of the class representatives.
    pub fn span(&self, k: &NormalSubset) -> Group {
        let reps: Vec<Permutation> = k
            .iter()
            .map(|c| self.classes[c].representative.clone())
            .filter(|r| !r.is_identity())
            .collect();
        self.group.normal_closure_unchecked(&reps)
    }

    fn square_classes(&self, k: &NormalSubset) -> NormalSubset {
        NormalSubset::from_classes(self.len(), k.iter().map(|c| self.power_class(c, 2)))
    }

    fn record(&self, k: &NormalSubset, report: &mut AuditReport) {
        let span = self.span(k);
        let entry = AuditEntry { classes: self.names(k), span_order: span.order(), soluble: span.is_soluble() };
        if !entry.soluble {
            report.violations.push(entry.clone());
        }
        report.satisfying_subsets.push(entry);
    }

    /// Enumerates every union of odd-order classes, keeps those satisfying the
    /// predicate and records the order and solubility of each span.
    pub fn odd_subset_audit(&self, predicate: AuditPredicate, bound: usize) -> Result<AuditReport> {
        let odd: Vec<usize> = self.odd_classes().iter().collect();
        if odd.len() > bound {
            return Err(Error::SearchBound { count: odd.len(), bound });
        }
        let mut report = AuditReport {
            group: String::new(),
            order: self.group.order(),
            predicate: predicate.to_string(),
            odd_classes: odd.iter().map(|&c| self.classes[c].name.clone()).collect(),
            subsets_examined: 0,
            satisfying_subsets: Vec::new(),
            violations: Vec::new(),
        };
        if let AuditPredicate::PowerUnion(n) = predicate {
            for &c in &odd {
                report.subsets_examined += 1;
                let k = NormalSubset::from_classes(self.len(), [c]);
                let pw = self.normal_set_power(&k, n);
                let classes: Vec<usize> = pw.iter().collect();
                let ok = match classes.as_slice() {
                    [d] => self.inverse[*d] == *d,
                    [d, e] => self.inverse[*d] == *e,
                    _ => false,
                };
                if ok {
                    self.record(&k, &mut report);
                }
            }
            return Ok(report);
        }
        let m = odd.len();
        let prods: Vec<Vec<NormalSubset>> =
            (0..m).map(|a| (0..m).map(|b| self.class_product(odd[a], odd[b])).collect()).collect();
        let acc = vec![self.empty_subset(); m];
        let state = AuditState { k: self.empty_subset(), sq: self.empty_subset(), d: self.empty_subset() };
        self.audit_visit(&odd, &prods, predicate, state, 0, &acc, &mut report);
        Ok(report)
    }

    #[allow(clippy::too_many_arguments)]
    fn audit_visit(
        &self,
        odd: &[usize],
        prods: &[Vec<NormalSubset>],
        predicate: AuditPredicate,
        st: AuditState,
        next: usize,
        acc: &[NormalSubset],
        report: &mut AuditReport,
    ) {
        report.subsets_examined += 1;
        let holds = match predicate {
            AuditPredicate::Expansion => st.sq.is_subset_of(&st.d),
            AuditPredicate::SquareSet => st.sq == self.square_classes(&st.k),
            AuditPredicate::PPower(p) => {
                st.k.iter().all(|c| self.classes[c].order == p)
                    && st.sq.iter().all(|c| is_power_of(self.classes[c].order, p))
            }
            AuditPredicate::PowerUnion(_) => unreachable!(),
        };
        if holds {
            self.record(&st.k, report);
        }
        for a in next..odd.len() {
            let c = odd[a];
            let mut k = st.k.clone();
            k.insert(c);
            let mut sq = st.sq.union(&acc[a]);
            sq.union_with(&prods[a][a]);
            let d = st.d.union(&self.galois[c]);
            let child_acc: Vec<NormalSubset> =
                (0..odd.len()).map(|b| if b > a { acc[b].union(&prods[a][b]) } else { NormalSubset::default() }).collect();
            self.audit_visit(odd, prods, predicate, AuditState { k, sq, d }, a + 1, &child_acc, report);
        }
    }

    /// For an odd-order class `C`: whether `C²` has an even-order class, and for each
    /// involution class a `d ∈ C` with `t·d` of order 4, if one exists.
    pub fn involution_coset_probe(&self, c: usize) -> Result<ProbeResult> {
        let class = self.class(c)?;
        if class.order % 2 == 0 {
            return Err(Error::NotOddClass(class.name.clone()));
        }
        let sq = self.class_product(c, c);
        let even_class = sq.iter().find(|&k| self.classes[k].order.is_multiple_of(2));
        let mut witnesses = Vec::new();
        let mut involution_classes = Vec::new();
        for (ti, t) in self.classes.iter().enumerate().filter(|(_, t)| t.order == 2) {
            involution_classes.push(t.name.clone());
            if let Some(d) = self.class_members(c).find(|d| t.representative.mul(d).order() == 4) {
                witnesses.push(ProbeWitness {
                    involution_class: self.classes[ti].name.clone(),
                    involution: t.representative.to_string(),
                    element: d.to_string(),
                });
            }
        }
        Ok(ProbeResult {
            class: class.name.clone(),
            square_has_even: even_class.is_some(),
            even_class: even_class.map(|k| self.classes[k].name.clone()),
            involution_classes,
            witnesses,
        })
    }
}

struct AuditState {
    k: NormalSubset,
    sq: NormalSubset,
    d: NormalSubset,
}

#[derive(Clone, Debug)]
pub struct ExpansionVerdict {
    pub holds: bool,
    pub violating_class: Option<usize>,
    pub square: NormalSubset,
    pub closure: NormalSubset,
}

/// Which property a union of odd-order classes must satisfy to be reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditPredicate {
    /// `K² ⊆ D_K`.
    Expansion,
    /// `K² = {x² | x ∈ K}`.
    SquareSet,
    /// `K` a single class with `K^n = D ∪ D⁻¹` for a class `D`.
    PowerUnion(u32),
    /// Every class of `K` has order `p` and every member of `K²` is a `p`-element.
    PPower(u64),
}

impl fmt::Display for AuditPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AuditPredicate::Expansion => write!(f, "expansion"),
            AuditPredicate::SquareSet => write!(f, "square-set"),
            AuditPredicate::PowerUnion(n) => write!(f, "power-union:{n}"),
            AuditPredicate::PPower(p) => write!(f, "p-power:{p}"),
        }
    }
}

impl FromStr for AuditPredicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameters(format!("unknown predicate {s:?}"));
        match s.split_once(':') {
            None if s == "expansion" => Ok(AuditPredicate::Expansion),
            None if s == "square-set" => Ok(AuditPredicate::SquareSet),
            Some(("power-union", n)) => match n.parse::<u32>() {
                Ok(n) if n >= 2 => Ok(AuditPredicate::PowerUnion(n)),
                _ => Err(bad()),
            },
            Some(("p-power", p)) => match p.parse::<u64>() {
                Ok(p) if prime_divisors(p as u128) == [p] => Ok(AuditPredicate::PPower(p)),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AuditEntry {
    pub classes: Vec<String>,
    pub span_order: u128,
    pub soluble: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub group: String,
    pub order: u128,
    pub predicate: String,
    pub odd_classes: Vec<String>,
    pub subsets_examined: u64,
    pub satisfying_subsets: Vec<AuditEntry>,
    pub violations: Vec<AuditEntry>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ProbeWitness {
    pub involution_class: String,
    pub involution: String,
    pub element: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeResult {
    pub class: String,
    pub square_has_even: bool,
    pub even_class: Option<String>,
    pub involution_classes: Vec<String>,
    pub witnesses: Vec<ProbeWitness>,
}

/// The coset `yL` of a normal subgroup viewed through the class partition of `G`.
#[derive(Debug)]
pub struct CosetView {
    pub partition: ClassPartition,
    /// Classes meeting `yL`.
    pub coset: NormalSubset,
    /// Whether every class meeting `yL` lies inside it.
    pub coset_is_normal: bool,
    /// Classes meeting `y²L`.
    pub square_coset: NormalSubset,
    /// Classes meeting `(yL)²`, from class products.
    pub square: NormalSubset,
    /// `D_{yL}`.
    pub closure: NormalSubset,
    /// Classes lying inside `L`.
    pub subgroup: NormalSubset,
    /// Element orders occurring in `yL`.
    pub orders: BTreeSet<u64>,
}

impl CosetView {
    pub fn square_is_y2_coset(&self) -> bool {
        self.square == self.square_coset
    }

    pub fn closure_is_complement(&self) -> bool {
        self.closure == self.subgroup.complement()
    }
}

pub fn coset_structure(g: &Group, l: &Group, y: &Permutation) -> Result<CosetView> {
    if !l.is_subgroup_of(g) {
        return Err(Error::NotSubgroup);
    }
    if !l.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    if !g.is_member(y)? {
        return Err(Error::NotMember);
    }
    let partition = ClassPartition::new(g)?;
    let k = partition.len();
    let yi = y.inverse();
    let y2i = y.pow(-2);
    let mut in_coset = vec![0u64; k];
    let mut coset = NormalSubset::empty(k);
    let mut square_coset = NormalSubset::empty(k);
    let mut in_l = vec![0u64; k];
    let mut orders = BTreeSet::new();
    g.for_each_element(u128::MAX, |r, x| {
        let c = partition.class_of_rank(r);
        if l.contains(&yi.mul(x)) {
            coset.insert(c);
            in_coset[c] += 1;
            orders.insert(x.order());
        }
        if l.contains(&y2i.mul(x)) {
            square_coset.insert(c);
        }
        if l.contains(x) {
            in_l[c] += 1;
        }
    })?;
    let coset_is_normal = coset.iter().all(|c| in_coset[c] == partition.classes[c].size);
    let subgroup = NormalSubset::from_classes(k, (0..k).filter(|&c| in_l[c] == partition.classes[c].size));
    let square = partition.normal_set_product(&coset, &coset);
    let closure = partition.rational_closure(&coset);
    Ok(CosetView { partition, coset, coset_is_normal, square_coset, square, closure, subgroup, orders })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letters() {
        assert_eq!(class_letters(0), "A");
        assert_eq!(class_letters(25), "Z");
        assert_eq!(class_letters(26), "AA");
        assert_eq!(class_letters(27), "AB");
    }

    #[test]
    fn predicate_round_trip() {
        for s in ["expansion", "square-set", "power-union:3", "p-power:5"] {
            assert_eq!(s.parse::<AuditPredicate>().unwrap().to_string(), s);
        }
        assert!("p-power:6".parse::<AuditPredicate>().is_err());
        assert!("power-union:1".parse::<AuditPredicate>().is_err());
    }

    #[test]
    fn alt5_classes() {
        let g = Group::from_cycles(&["(1,2,3)", "(3,4,5)"], 5).unwrap();
        let p = ClassPartition::new(&g).unwrap();
        let names: Vec<_> = p.classes().iter().map(|c| (c.name.as_str(), c.size)).collect();
        assert_eq!(names, [("1A", 1), ("2A", 15), ("3A", 20), ("5A", 12), ("5B", 12)]);
        let five = p.subset(&["5A"]).unwrap();
        assert_eq!(p.names(&p.rational_closure(&five)), ["5A", "5B"]);
    }
}
