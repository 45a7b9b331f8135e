use std::collections::{BTreeSet, HashSet, VecDeque};

use clexp::{ClassPartition, Group, NormalSubset, Permutation};
use proptest::prelude::*;

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

/// Every element reachable from the generators, by breadth-first closure.
fn closure(gens: &[Permutation], degree: usize) -> HashSet<Vec<usize>> {
    let id = Permutation::identity(degree);
    let mut seen = HashSet::from([id.images()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(g).unwrap();
            if seen.insert(y.images()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_and_powers(p in perm(9), q in perm(9)) {
        let id = Permutation::identity(9);
        prop_assert_eq!(p.compose(&p.inverse()).unwrap(), id.clone());
        prop_assert_eq!(p.pow(p.order() as i64), id.clone());
        prop_assert_eq!(p.pow(-1), p.inverse());
        let pq = p.compose(&q).unwrap();
        prop_assert_eq!(pq.inverse(), q.inverse().compose(&p.inverse()).unwrap());
        let lcm = p.cycle_type().into_iter().fold(1u64, |a, l| a / gcd(a, l as u64) * l as u64);
        prop_assert_eq!(p.order(), lcm);
    }

    #[test]
    fn cycle_notation_round_trips(p in perm(12)) {
        prop_assert_eq!(Permutation::parse(&p.cycle_string(), 12).unwrap(), p);
    }

    #[test]
    fn conjugation_preserves_cycle_type(p in perm(8), w in perm(8)) {
        let c = p.conjugate_by(&w);
        prop_assert_eq!(c.cycle_type(), p.cycle_type());
        prop_assert_eq!(c, w.inverse().compose(&p).unwrap().compose(&w).unwrap());
    }

    #[test]
    fn order_and_membership_match_closure(a in perm(7), b in perm(7), probe in perm(7)) {
        let gens = vec![a, b];
        let g = Group::new(gens.clone(), 7).unwrap();
        let all = closure(&gens, 7);
        prop_assert_eq!(g.order(), all.len() as u128);
        prop_assert_eq!(g.is_member(&probe).unwrap(), all.contains(&probe.images()));
        let ranks: BTreeSet<u64> = all
            .iter()
            .map(|v| g.rank_of_member(&Permutation::from_images(v).unwrap()))
            .collect();
        prop_assert_eq!(ranks.len(), all.len());
        for r in [0, g.order() as u64 / 2, g.order() as u64 - 1] {
            prop_assert_eq!(g.rank_of_member(&g.unrank(r)), r);
        }
    }

    #[test]
    fn classes_partition_the_group(a in perm(6), b in perm(6)) {
        let g = Group::new(vec![a.clone(), b.clone()], 6).unwrap();
        let part = ClassPartition::new(&g).unwrap();
        let total: u128 = part.classes().iter().map(|c| c.size as u128).sum();
        prop_assert_eq!(total, g.order());
        for c in 0..part.len() {
            let x = part.class_members(c).next().unwrap();
            for h in [&a, &b] {
                prop_assert_eq!(part.class_of_member(&x.conjugate_by(h)), c);
            }
            prop_assert_eq!(part.class_members(c).count() as u64, part.classes()[c].size);
        }
    }

    #[test]
    fn rational_closure_laws(a in perm(6), b in perm(6), bits in any::<u64>()) {
        let g = Group::new(vec![a, b], 6).unwrap();
        let part = ClassPartition::new(&g).unwrap();
        let n = part.len();
        let k = NormalSubset::from_classes(n, (0..n).filter(|c| bits >> c & 1 == 1));
        let d = part.rational_closure(&k);
        prop_assert!(k.is_subset_of(&d));
        prop_assert_eq!(part.rational_closure(&d), d.clone());
        for c in d.iter() {
            let x = part.class_members(c).next().unwrap();
            let o = x.order();
            let generates_k = (1..=o as i64)
                .filter(|&e| gcd(e as u64, o) == 1)
                .any(|e| k.contains(part.class_of_member(&x.pow(e))));
            prop_assert!(generates_k);
        }
    }

    #[test]
    fn solubility_matches_derived_series(a in perm(5), b in perm(5)) {
        let g = Group::new(vec![a, b], 5).unwrap();
        let series = g.derived_series();
        let last = series.last().unwrap();
        prop_assert_eq!(g.is_soluble(), last.order() == 1);
        // A subgroup of Sym(5) is insoluble exactly when it contains Alt(5).
        prop_assert_eq!(g.is_soluble(), !g.order().is_multiple_of(60));
    }
}
