//! Runs every acceptance criterion and prints one PASS/FAIL line per criterion.

use std::time::Instant;

use ppz::report::Status;
use ppz::suites::{run_suite, SUITES};
use ppz_core::PrimeField;

const SEED: u64 = 0;

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for (i, suite) in SUITES.iter().enumerate() {
        let start = Instant::now();
        let status = match run_suite(PrimeField::gf2(), suite.name, SEED) {
            Ok(report) => {
                for row in &report.rows {
                    println!("    {}", row.join("  "));
                }
                for note in report.notes.iter().filter(|n| n.starts_with("failed")) {
                    println!("    {note}");
                }
                report.status
            }
            Err(e) => {
                println!("    error: {e:#}");
                Status::Error
            }
        };
        let verdict = if status == Status::Pass { "PASS" } else { "FAIL" };
        println!("{verdict} {} {}: {} ({:.1}s)", i + 1, suite.name, suite.title, start.elapsed().as_secs_f64());
        if status != Status::Pass {
            failed.push(suite.name);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
