//! One line per acceptance criterion. Exits non-zero if any criterion fails;
//! an exhausted search budget is reported as inconclusive and does not fail.

use std::process::ExitCode;
use std::time::Duration;

use clexp::verify::{run_check, CheckResult, Status, SuiteOptions};

struct Criterion {
    number: u32,
    title: &'static str,
    checks: &'static [&'static str],
    limit: Duration,
}

const MIN: u64 = 60;

const CRITERIA: &[Criterion] = &[
    Criterion { number: 1, title: "Frob21 audit", checks: &["example-1.3"], limit: Duration::from_secs(1) },
    Criterion { number: 2, title: "Alt(5) odd-class square and audit", checks: &["alt5-odd-square"], limit: Duration::from_secs(1) },
    Criterion { number: 3, title: "PGammaL2(8) coset square", checks: &["example-1.2"], limit: Duration::from_secs(10) },
    Criterion {
        number: 4,
        title: "involution coset probes on M11 and J1",
        checks: &["lemma-4.9-M11", "lemma-4.9-J1"],
        limit: Duration::from_secs(30 * MIN),
    },
    Criterion {
        number: 5,
        title: "coprime automorphism squares on SL2(32).5 and Sz(8).3",
        checks: &["prop-3.6-SL2_32", "prop-3.6-Sz8"],
        limit: Duration::from_secs(30 * MIN),
    },
    Criterion { number: 6, title: "order 3r to 2r witness at r = 5", checks: &["lemma-3.9-r5"], limit: Duration::from_secs(5 * MIN) },
    Criterion {
        number: 7,
        title: "property suites",
        checks: &[
            "lemma-2.1",
            "lemma-2.2",
            "lemma-2.4-2.5",
            "prop-2.9",
            "lemma-4.1",
            "lemma-4.2",
            "lemma-4.3",
            "cor-4.x",
            "gow",
            "structure-constants",
            "lemma-3.1",
            "classalg-corpus",
        ],
        limit: Duration::from_secs(5 * MIN),
    },
    Criterion { number: 8, title: "wreath product (2 wr 3) wr 5 search", checks: &["example-1.4"], limit: Duration::MAX },
];

fn verdict(results: &[CheckResult], elapsed: Duration, limit: Duration) -> (Status, String) {
    if let Some(r) = results.iter().find(|r| r.status == Status::Fail) {
        return (Status::Fail, format!("{}: {}", r.id, r.reason.as_deref().unwrap_or("failed")));
    }
    if let Some(r) = results.iter().find(|r| r.status == Status::Inconclusive) {
        return (Status::Inconclusive, format!("{}: {}", r.id, r.reason.as_deref().unwrap_or("budget exhausted")));
    }
    if let Some(r) = results.iter().find(|r| r.status == Status::Skip) {
        return (Status::Fail, format!("{} skipped: {}", r.id, r.reason.as_deref().unwrap_or("")));
    }
    if elapsed > limit {
        return (Status::Fail, format!("took {elapsed:?}, limit {limit:?}"));
    }
    (Status::Pass, format!("{} ms", elapsed.as_millis()))
}

fn main() -> ExitCode {
    let options = SuiteOptions::default();
    let mut failed = false;
    for c in CRITERIA {
        let results: Vec<CheckResult> = c.checks.iter().map(|id| run_check(id, &options).expect("registered check")).collect();
        let elapsed = Duration::from_millis(results.iter().map(|r| r.elapsed_ms).sum());
        let (status, detail) = verdict(&results, elapsed, c.limit);
        failed |= status == Status::Fail;
        let label = match status {
            Status::Pass => "PASS",
            Status::Inconclusive => "INCONCLUSIVE",
            _ => "FAIL",
        };
        println!("criterion {}: {label} - {} ({detail})", c.number, c.title);
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
