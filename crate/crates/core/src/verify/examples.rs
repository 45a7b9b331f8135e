use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::structure::elements;
use super::{timed, CheckResult, Outcome, Tier};
use crate::classalg::AuditPredicate;
use crate::named::named_group;
use crate::{ClassPartition, Group, GroupSpec, NormalSubset, Result};

const CORPUS_SPECS: &[&str] = &[
    "sym:1", "sym:2", "sym:3", "sym:4", "sym:5",
    "alt:3", "alt:4", "alt:5",
    "cyclic:1", "cyclic:2", "cyclic:4", "cyclic:6", "cyclic:9", "cyclic:12", "cyclic:15",
    "psl2:2", "psl2:3", "psl2:4", "psl2:5", "psl2:7",
    "pgl2:3", "pgl2:4", "pgl2:5",
    "psigmal2:4,2",
    "wreath(sym:2,2)", "wreath(sym:2,3)", "wreath(cyclic:2,4)", "wreath(cyclic:3,2)",
    "wreath(cyclic:4,2)", "wreath(cyclic:5,2)", "wreath(cyclic:3,3)", "wreath(sym:3,2)",
    "aff(2,2,3,1)", "aff(2,2,3,2)", "aff(5,1,4,1)", "aff(7,1,3,1)", "aff(7,1,6,1)",
    "aff(2,3,7,1)", "aff(2,3,7,3)", "aff(3,2,8,1)", "aff(3,2,8,2)", "aff(3,2,4,2)",
    "aff(11,1,10,1)", "aff(13,1,12,1)",
    "name:Frob21", "name:Sym4", "name:Alt5", "name:L3_2", "name:L2_7",
];

/// Groups of order at most 200 built from GroupSpec strings, with their specs.
pub fn corpus() -> Result<Vec<(String, Group)>> {
    let mut out = Vec::new();
    for s in CORPUS_SPECS {
        let g = s.parse::<GroupSpec>()?.build()?;
        if g.order() <= 200 {
            out.push((s.to_string(), g));
        }
    }
    Ok(out)
}

/// Frob21: some `K = 3X ∪ 7Y` satisfies `K² ⊆ D_K = G∖{1}` and spans a soluble `G`.
pub fn check_frobenius_audit() -> CheckResult {
    timed("example-1.3", Tier::Fast, None, || {
        let g = named_group("Frob21")?;
        let part = ClassPartition::new(&g)?;
        let report = part.odd_subset_audit(AuditPredicate::Expansion, 20)?;
        let nontrivial = NormalSubset::full(part.len()).difference(&part.subset(&["1A"])?);
        let hit = report.satisfying_subsets.iter().find(|e| {
            let k = part.subset(&e.classes.iter().map(String::as_str).collect::<Vec<_>>()).expect("names from the audit");
            let orders: Vec<u64> = k.iter().map(|c| part.classes()[c].order).collect();
            orders.len() == 2 && orders.contains(&3) && orders.contains(&7) && part.rational_closure(&k) == nontrivial
        });
        let mut o = match hit {
            Some(e) if e.soluble && e.span_order == g.order() => {
                Outcome::pass().with("K", e.classes.join(",")).with("|<K>|", e.span_order).with("soluble", e.soluble)
            }
            Some(e) => Outcome::fail("span of K is not a soluble G").with("K", e.classes.join(",")),
            None => Outcome::fail("no K = 3X ∪ 7Y with D_K = G∖{1} satisfies K² ⊆ D_K"),
        };
        o.push("subsets examined", report.subsets_examined);
        if !report.violations.is_empty() {
            o = Outcome::fail("non-soluble span").with("K", report.violations[0].classes.join(","));
        }
        Ok(o)
    })
}

/// Alt(5): each order-5 class squares onto the odd-order classes, and the expansion
/// audit holds only for `∅` and `{1A}`.
pub fn check_alt5_odd_square() -> CheckResult {
    timed("alt5-odd-square", Tier::Fast, None, || {
        let part = ClassPartition::new(&named_group("Alt5")?)?;
        let odd = part.odd_classes();
        let mut o = Outcome::pass().with("odd classes", part.names(&odd).join(","));
        for c in (0..part.len()).filter(|&c| part.classes()[c].order == 5) {
            let sq = part.class_product(c, c);
            let name = &part.classes()[c].name;
            if sq != odd {
                return Ok(Outcome::fail("square differs from the odd-order classes")
                    .with("class", name)
                    .with("square", part.names(&sq).join(",")));
            }
            o.push(format!("{name}^2"), part.names(&sq).join(","));
        }
        let report = part.odd_subset_audit(AuditPredicate::Expansion, 20)?;
        let mut found: Vec<Vec<String>> = report.satisfying_subsets.iter().map(|e| e.classes.clone()).collect();
        found.sort();
        let expected = vec![Vec::<String>::new(), vec!["1A".to_string()]];
        o.push("subsets examined", report.subsets_examined);
        o.push("satisfying", format!("{found:?}"));
        if found != expected || !report.violations.is_empty() {
            return Ok(Outcome::fail("audit result differs from {∅, {1A}}").with("satisfying", format!("{found:?}")));
        }
        Ok(o)
    })
}

/// The `p`-power predicate audited for violations (non-soluble spans).
pub fn check_p_power_audit() -> CheckResult {
    timed("theorem-2.6-audit", Tier::Fast, None, || {
        let instances: [(&str, &[u64]); 5] = [
            ("name:Alt5", &[3, 5]),
            ("psl2:7", &[3, 7]),
            ("name:Frob21", &[3, 7]),
            ("aff(2,3,7,3)", &[3, 7]),
            ("sym:4", &[3]),
        ];
        let mut parts = Vec::new();
        for (spec, primes) in instances {
            let part = ClassPartition::new(&spec.parse::<GroupSpec>()?.build()?)?;
            for &p in primes {
                let report = part.odd_subset_audit(AuditPredicate::PPower(p), 20)?;
                let o = match report.violations.first() {
                    Some(v) => Outcome::fail("non-soluble span").with("K", v.classes.join(",")),
                    None => Outcome::pass()
                        .with("satisfying", report.satisfying_subsets.len())
                        .with("examined", report.subsets_examined),
                };
                parts.push((format!("{spec} p={p}"), o));
            }
        }
        Ok(Outcome::combine(parts))
    })
}

/// Class products taken from every pair of elements.
fn brute_products(g: &Group, part: &ClassPartition) -> Result<Vec<Vec<NormalSubset>>> {
    let elts = elements(g)?;
    let cls: Vec<usize> = elts.iter().map(|x| part.class_of_member(x)).collect();
    let n = part.len();
    let mut out = vec![vec![NormalSubset::empty(n); n]; n];
    for (x, &cx) in elts.iter().zip(&cls) {
        for (y, &cy) in elts.iter().zip(&cls) {
            out[cx][cy].insert(part.class_of_member(&x.mul(y)));
        }
    }
    Ok(out)
}

fn subset_laws(part: &ClassPartition, k: &NormalSubset, l: &NormalSubset) -> Option<&'static str> {
    let d = part.rational_closure(k);
    if part.rational_closure(&d) != d {
        return Some("D_K is not idempotent");
    }
    if !k.is_subset_of(&d) {
        return Some("K is not contained in D_K");
    }
    if part.normal_set_product(k, l) != part.normal_set_product(l, k) {
        return Some("KL ≠ LK");
    }
    None
}

pub fn corpus_outcome(spec: &str, g: &Group, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let part = ClassPartition::new(g)?;
    let n = part.len();
    let brute = brute_products(g, &part)?;
    for i in 0..n {
        for j in 0..n {
            if part.class_product(i, j) != brute[i][j] {
                return Ok(Outcome::fail("class product differs from the element-pair product")
                    .with("classes", format!("{} {}", part.classes()[i].name, part.classes()[j].name)));
            }
        }
    }
    let subset = |bits: u64| NormalSubset::from_classes(n, (0..n).filter(|&c| bits >> c & 1 == 1));
    let mut pairs: Vec<(NormalSubset, NormalSubset)> = Vec::new();
    if n <= 12 {
        for bits in 0..1u64 << n {
            let k = subset(bits);
            let l = subset(bits.rotate_left(1) & ((1 << n) - 1));
            pairs.push((k, l));
        }
    } else {
        for i in 0..n {
            for j in 0..n {
                pairs.push((NormalSubset::from_classes(n, [i]), NormalSubset::from_classes(n, [j])));
            }
        }
        let random = |rng: &mut ChaCha8Rng| NormalSubset::from_classes(n, (0..n).filter(|_| rng.gen_bool(0.5)));
        for _ in 0..512 {
            let k = random(rng);
            let l = random(rng);
            pairs.push((k, l));
        }
    }
    for (k, l) in &pairs {
        if let Some(msg) = subset_laws(&part, k, l) {
            return Ok(Outcome::fail(msg).with("group", spec).with("K", part.names(k).join(",")).with("L", part.names(l).join(",")));
        }
    }
    Ok(Outcome::pass().with("order", g.order()).with("classes", n).with("subsets", pairs.len()))
}

pub fn check_classalg_corpus(seed: u64) -> CheckResult {
    timed("classalg-corpus", Tier::Fast, Some(seed), || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut parts = Vec::new();
        for (spec, g) in corpus()? {
            parts.push((spec.clone(), corpus_outcome(&spec, &g, &mut rng)?));
        }
        Ok(Outcome::combine(parts))
    })
}

/// For each nontrivial odd-order class `C`: (i) `C²` meets an even-order class and
/// (ii) some involution `t` has `tC` meeting order 4. For `J1`, (ii) is expected to
/// fail for at least one class.
pub fn probe_outcome(name: &str) -> Result<Outcome> {
    let part = ClassPartition::new(&named_group(name)?)?;
    let exceptional = name == "J1";
    let mut o = Outcome::pass();
    let mut empty_ii = Vec::new();
    for c in part.odd_classes().iter().filter(|&c| c != 0) {
        let r = part.involution_coset_probe(c)?;
        if !r.square_has_even {
            return Ok(Outcome::fail("(i) fails: C² has no element of even order").with("class", &r.class));
        }
        let ii = match r.witnesses.first() {
            Some(w) => format!("t={} d={}", w.involution, w.element),
            None => {
                empty_ii.push(r.class.clone());
                "none".to_string()
            }
        };
        o.push(format!("{} (i)", r.class), r.even_class.unwrap_or_default());
        o.push(format!("{} (ii)", r.class), ii);
    }
    o.push("empty (ii)", empty_ii.join(","));
    if exceptional && empty_ii.is_empty() {
        return Ok(Outcome::fail("every class of J1 has a (ii) witness"));
    }
    if !exceptional && !empty_ii.is_empty() {
        return Ok(Outcome::fail("(ii) fails").with("classes", empty_ii.join(",")));
    }
    Ok(o)
}

pub fn check_probe(name: &str) -> CheckResult {
    timed(&format!("lemma-4.9-{name}"), Tier::Fast, None, || probe_outcome(name))
}
