//! Acceptance criteria: one PASS/FAIL line each. Scenarios run one at a
//! time so that the wall-clock budgets measure a single scenario.
//!
//! Criteria in `KNOWN_FAILURES` still print FAIL. They do not fail the
//! process, so the remaining test binaries run; one that starts passing
//! does fail it, so the list cannot go stale.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use exotic::cli::repro::{run_scenario, ScenarioReport};

struct Criterion {
    id: u32,
    scenario: &'static str,
    budget: Option<Duration>,
}

const CRITERIA: [Criterion; 11] = [
    Criterion {
        id: 1,
        scenario: "derksen",
        budget: Some(Duration::from_secs(1)),
    },
    Criterion {
        id: 2,
        scenario: "lnd-suite",
        budget: Some(Duration::from_secs(5)),
    },
    Criterion {
        id: 3,
        scenario: "nagata",
        budget: None,
    },
    Criterion {
        id: 4,
        scenario: "hyperbolic",
        budget: None,
    },
    Criterion {
        id: 5,
        scenario: "dominant",
        budget: None,
    },
    Criterion {
        id: 6,
        scenario: "dual-graphs",
        budget: None,
    },
    Criterion {
        id: 7,
        scenario: "xt",
        budget: None,
    },
    Criterion {
        id: 8,
        scenario: "tdp",
        budget: None,
    },
    Criterion {
        id: 9,
        scenario: "groups",
        budget: None,
    },
    Criterion {
        id: 10,
        scenario: "smith",
        budget: Some(Duration::from_secs(10)),
    },
    Criterion {
        id: 11,
        scenario: "degree-axioms",
        budget: None,
    },
];

/// Criterion 9 equates pairwise coprimality of (k, l, s) with a trivial
/// abelianization of G_{k,l,s}; the abelianization has order
/// |kl + ls + sk - kls|, so the equivalence is false for 16 of the 56
/// triples (listed in the FAIL output).
const KNOWN_FAILURES: [u32; 1] = [9];

fn describe_failures(report: &ScenarioReport) {
    for c in report.checks.iter().filter(|c| !c.passed) {
        println!("    failed: {} ({})", c.label, c.detail);
    }
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut unexpected = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let report = run_scenario(c.scenario).expect("criterion names a known scenario");
        let elapsed = start.elapsed();
        let in_budget = c.budget.is_none_or(|b| elapsed <= b);
        let ok = report.passed() && in_budget;
        let budget = c
            .budget
            .map_or(String::new(), |b| format!(", budget {}s", b.as_secs()));
        println!(
            "{} criterion {:>2} {} ({} checks, {:.3}s{budget})",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.scenario,
            report.checks.len(),
            elapsed.as_secs_f64(),
        );
        let known = KNOWN_FAILURES.contains(&c.id);
        if ok == known {
            unexpected += 1;
        }
        if ok && known {
            println!(
                "    unexpected pass: remove criterion {} from KNOWN_FAILURES",
                c.id
            );
        }
        if !ok {
            failed += 1;
            describe_failures(&report);
            if !in_budget {
                println!("    failed: exceeded the time budget");
            }
        }
        for note in &report.notes {
            println!("    note: {note}");
        }
    }
    println!(
        "{} of {} criteria passed; known failures: {:?}",
        CRITERIA.len() - failed,
        CRITERIA.len(),
        KNOWN_FAILURES
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
