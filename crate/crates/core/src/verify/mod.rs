//! Executable checks of computational claims about class products, each
//! returning a structured verdict with witnesses.

mod characters;
mod cosets;
mod examples;
mod plocal;
mod semilinear;
mod structure;
mod symmetric;
mod wreath;
mod wreath_example;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::{Error, Result};

pub use characters::{
    check_coprime_auto_square, check_galois_products, check_hj_consistency, check_triple_identity, check_structure_constants,
    AutoFamily,
};
pub use cosets::{check_coset_involutions, check_pgammal2_8_coset, check_gow, check_gt_witness};
pub use examples::{check_alt5_odd_square, check_classalg_corpus, check_frobenius_audit, check_probe, check_p_power_audit, corpus};
pub use plocal::{check_even_order_square, check_jack3};
pub use semilinear::check_3r_to_2r;
pub use structure::{largest_normal_subgroup, normal_complement_exists};
pub use symmetric::{check_altfact, check_commutator_even, check_sym_fix};
pub use wreath::{check_complements, check_prod_inv, check_wreath_orders, check_wreath_orders_random};
pub use wreath_example::{check_wreath_class_search, WreathClassSearch};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Fast,
    Full,
    Slow,
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::Fast => "fast",
            Tier::Full => "full",
            Tier::Slow => "slow",
        })
    }
}

impl FromStr for Tier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tier> {
        match s {
            "fast" => Ok(Tier::Fast),
            "full" => Ok(Tier::Full),
            "slow" => Ok(Tier::Slow),
            _ => Err(Error::InvalidParameters(format!("unknown tier {s:?}"))),
        }
    }
}

/// `Inconclusive` marks an exhausted search budget, which is not a disproof.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    pub tier: Tier,
    pub witnesses: Vec<Witness>,
    pub elapsed_ms: u64,
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn witness(&self, label: &str) -> Option<&str> {
        self.witnesses.iter().find(|w| w.label == label).map(|w| w.value.as_str())
    }
}

/// Verdict of a check body before timing and registration data are attached.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub witnesses: Vec<Witness>,
    pub reason: Option<String>,
}

impl Outcome {
    pub fn new(status: Status) -> Outcome {
        Outcome { status, witnesses: Vec::new(), reason: None }
    }

    pub fn pass() -> Outcome {
        Outcome::new(Status::Pass)
    }

    pub fn fail(reason: impl Into<String>) -> Outcome {
        Outcome { reason: Some(reason.into()), ..Outcome::new(Status::Fail) }
    }

    pub fn skip(reason: impl Into<String>) -> Outcome {
        Outcome { reason: Some(reason.into()), ..Outcome::new(Status::Skip) }
    }

    pub fn inconclusive(reason: impl Into<String>) -> Outcome {
        Outcome { reason: Some(reason.into()), ..Outcome::new(Status::Inconclusive) }
    }

    pub fn from_bool(ok: bool, reason: impl Into<String>) -> Outcome {
        if ok {
            Outcome::pass()
        } else {
            Outcome::fail(reason)
        }
    }

    pub fn with(mut self, label: impl Into<String>, value: impl ToString) -> Outcome {
        self.witnesses.push(Witness { label: label.into(), value: value.to_string() });
        self
    }

    pub fn push(&mut self, label: impl Into<String>, value: impl ToString) {
        self.witnesses.push(Witness { label: label.into(), value: value.to_string() });
    }

    /// Folds sub-verdicts: any fail fails, otherwise any inconclusive, otherwise
    /// pass if anything passed, otherwise skip.
    pub fn combine(parts: Vec<(String, Outcome)>) -> Outcome {
        let rank = |s: Status| match s {
            Status::Fail => 3,
            Status::Inconclusive => 2,
            Status::Pass => 1,
            Status::Skip => 0,
        };
        let worst = parts.iter().map(|(_, o)| o.status).max_by_key(|&s| rank(s)).unwrap_or(Status::Skip);
        let mut out = Outcome::new(worst);
        let mut reasons = Vec::new();
        for (label, o) in parts {
            out.push(format!("{label}.status"), o.status);
            if let Some(r) = &o.reason {
                reasons.push(format!("{label}: {r}"));
            }
            for w in o.witnesses {
                out.push(format!("{label}.{}", w.label), w.value);
            }
        }
        if !reasons.is_empty() && worst != Status::Pass {
            out.reason = Some(reasons.join("; "));
        }
        out
    }
}

/// Runs a check body, converting errors into failures that carry the error text.
pub fn timed(id: &str, tier: Tier, seed: Option<u64>, body: impl FnOnce() -> Result<Outcome>) -> CheckResult {
    let start = Instant::now();
    let outcome = body().unwrap_or_else(|e| Outcome::fail(format!("error: {e}")).with("error", e));
    CheckResult {
        id: id.to_string(),
        status: outcome.status,
        tier,
        witnesses: outcome.witnesses,
        elapsed_ms: start.elapsed().as_millis() as u64,
        seed,
        reason: outcome.reason,
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Product budget for the wreath-product class search.
    pub search_budget: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 1, search_budget: 2_000_000_000 }
    }
}

type Runner = fn(&SuiteOptions) -> CheckResult;

/// Every registered check, in report order.
pub fn registry() -> Vec<(&'static str, Tier, Runner)> {
    vec![
        ("example-1.2", Tier::Fast, |_| check_pgammal2_8_coset()),
        ("example-1.3", Tier::Fast, |_| check_frobenius_audit()),
        ("alt5-odd-square", Tier::Fast, |_| check_alt5_odd_square()),
        ("theorem-2.6-audit", Tier::Fast, |_| check_p_power_audit()),
        ("classalg-corpus", Tier::Fast, |o| check_classalg_corpus(o.seed)),
        ("lemma-2.1", Tier::Fast, |o| check_wreath_orders_random(100, o.seed)),
        ("lemma-2.2", Tier::Fast, |_| check_complements()),
        ("lemma-2.4-2.5", Tier::Fast, |o| check_prod_inv(20, o.seed)),
        ("prop-2.9", Tier::Fast, |_| check_jack3()),
        ("structure-constants", Tier::Fast, |_| check_structure_constants(&["Frob21", "Sym4", "Alt5", "PGammaL2_8"])),
        ("lemma-3.1", Tier::Fast, |_| check_triple_identity(&["Alt5", "Frob21"])),
        ("lemma-hj", Tier::Fast, |_| check_hj_consistency(&["Frob21", "Sym4", "Alt5", "PGammaL2_8"])),
        ("cor-3.4", Tier::Fast, |_| check_even_order_square()),
        ("prop-3.6-skip", Tier::Fast, |_| check_coprime_auto_square(AutoFamily::Psl2, 8, 3)),
        ("lemma-3.9-r3", Tier::Fast, |o| check_3r_to_2r(3, 1_000_000, o.seed)),
        ("lemma-3.9-r5", Tier::Fast, |o| check_3r_to_2r(5, 1_000_000, o.seed)),
        ("lemma-4.1", Tier::Fast, |_| check_sym_fix(5..=8)),
        ("lemma-4.2", Tier::Fast, |_| check_altfact(6..=9)),
        ("lemma-4.3", Tier::Fast, |_| check_commutator_even()),
        ("cor-4.x", Tier::Fast, |_| check_coset_involutions()),
        ("gow", Tier::Fast, |_| check_gow()),
        ("lemma-1.9", Tier::Fast, |_| check_gt_witness()),
        ("lemma-4.9-M11", Tier::Fast, |_| check_probe("M11")),
        ("lemma-4.9-J1", Tier::Full, |_| check_probe("J1")),
        ("prop-3.6-SL2_32", Tier::Full, |_| check_coprime_auto_square(AutoFamily::Psl2, 32, 5)),
        ("prop-3.6-Sz8", Tier::Full, |_| check_coprime_auto_square(AutoFamily::Suzuki, 8, 3)),
        ("structure-constants-large", Tier::Full, |_| check_structure_constants(&["M11", "Sz8.3", "SL2_32.5", "J1"])),
        ("cor-3.8", Tier::Full, |_| check_galois_products()),
        ("lemma-3.9-r7", Tier::Slow, |o| check_3r_to_2r(7, 1_000_000, o.seed)),
        ("example-1.4", Tier::Slow, |o| check_wreath_class_search(o.search_budget)),
    ]
}

/// Runs every check registered at `tier` or below, in registry order.
pub fn run_suite(tier: Tier, options: &SuiteOptions) -> Vec<CheckResult> {
    registry().into_iter().filter(|(_, t, _)| *t <= tier).map(|(id, t, run)| labelled(id, t, run, options)).collect()
}

fn labelled(id: &str, tier: Tier, run: Runner, options: &SuiteOptions) -> CheckResult {
    let mut r = run(options);
    r.id = id.to_string();
    r.tier = tier;
    r
}

/// Runs one registered check by id.
pub fn run_check(id: &str, options: &SuiteOptions) -> Result<CheckResult> {
    registry()
        .into_iter()
        .find(|(i, _, _)| *i == id)
        .map(|(i, t, run)| labelled(i, t, run, options))
        .ok_or_else(|| Error::InvalidParameters(format!("unknown check {id:?}")))
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Tier,
    pub version: String,
    pub seed: u64,
    pub checksums: Vec<Checksum>,
    pub checks: Vec<CheckResult>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Checksum {
    pub file: String,
    pub sha256: String,
}

impl SuiteReport {
    pub fn new(suite: Tier, seed: u64, checks: Vec<CheckResult>) -> SuiteReport {
        let checksums = crate::named::data_checksums()
            .into_iter()
            .map(|(file, sha256)| Checksum { file, sha256 })
            .collect();
        SuiteReport { suite, version: crate::VERSION.to_string(), seed, checksums, checks }
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    /// Zeroes the timings so that reports of identical runs compare byte for byte.
    pub fn without_timings(mut self) -> SuiteReport {
        for c in &mut self.checks {
            c.elapsed_ms = 0;
        }
        self
    }
}
