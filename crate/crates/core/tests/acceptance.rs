//! Runs every acceptance criterion at full scale and prints one line each.
//! Built without the default harness so the lines always reach the output.

use std::process::ExitCode;

use cliquelab::seed::DEFAULT_SEED;
use cliquelab::verify::{run_check, Scale};

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for id in 1..=11 {
        let report = match run_check(id, Scale::Desk, DEFAULT_SEED) {
            Ok(r) => r,
            Err(e) => {
                println!("criterion {id:>2} FAIL: error {e}");
                failed.push(id);
                continue;
            }
        };
        let verdict = if report.passed() { "PASS" } else { "FAIL" };
        println!(
            "criterion {id:>2} {verdict}: {} ({} cases, {} violations, {:.2} s) {}",
            report.name, report.cases, report.violations, report.elapsed, report.detail
        );
        for w in &report.witnesses {
            println!("    witness: {w}");
        }
        if !report.passed() {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 11 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
