//! Acceptance gate: runs every verification check once and prints one line
//! per numbered criterion. Runs without the libtest harness so the summary
//! is always printed.
//!
//! Criterion 8 is known to fail on exactly one row: in the SL2 triangle group
//! mod 5^3 the lines of both B(1) and C(p) violate the lines condition, not
//! only the line of B(1). The two lines are exchanged by the involution
//! certified in `crit8d`, so no computation can single one out. The test pins
//! that outcome rather than hiding it.

use std::time::Duration;

use intensity_cli::verify::{criteria_summary, run, Status, VerifyConfig};

const KNOWN_FAILURES: &[&str] = &["crit8c-sl2-failing-line-unique"];

fn main() {
    let cfg = VerifyConfig { budget: Duration::from_secs(45 * 60), ..VerifyConfig::default() };
    let rows = run(&cfg);
    let summary = criteria_summary(&rows);
    for (c, status) in &summary {
        println!("criterion {c}: {}", status.label());
    }
    for r in rows.iter().filter(|r| r.status != Status::Pass) {
        println!("  {} {}: {}", r.status.label(), r.id, r.computed);
    }

    let ids: Vec<u8> = summary.iter().map(|(c, _)| *c).collect();
    assert_eq!(ids, (1..=10).collect::<Vec<_>>());
    for (c, status) in &summary {
        match c {
            8 => assert_eq!(*status, Status::Fail, "criterion 8 changed outcome; update the known failure"),
            10 => assert_ne!(*status, Status::Fail, "stretch criterion 10 failed"),
            _ => assert_eq!(*status, Status::Pass, "criterion {c}"),
        }
    }
    let unexpected: Vec<&str> =
        rows.iter().filter(|r| r.status == Status::Fail && !KNOWN_FAILURES.contains(&r.id)).map(|r| r.id).collect();
    assert!(unexpected.is_empty(), "unexpected failures: {unexpected:?}");
    let skipped: Vec<&str> =
        rows.iter().filter(|r| r.status == Status::Skipped && r.criterion != Some(10)).map(|r| r.id).collect();
    assert!(skipped.is_empty(), "skipped primary checks: {skipped:?}");
}
