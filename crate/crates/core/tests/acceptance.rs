use std::process::ExitCode;
use std::time::Instant;

use dihedral_schubert::suites::{determinism_from_runs, run_suite, SuiteOutcome, SUITES};

fn main() -> ExitCode {
    let mut first: Vec<SuiteOutcome> = Vec::new();
    let mut failed = 0;
    for name in &SUITES[..9] {
        let start = Instant::now();
        match run_suite(name) {
            Ok(Some(out)) => {
                println!(
                    "criterion {:>2} {:<14} {} ({:.1?}) {}",
                    out.criterion,
                    out.name,
                    if out.passed { "PASS" } else { "FAIL" },
                    start.elapsed(),
                    out.summary
                );
                failed += usize::from(!out.passed);
                first.push(out);
            }
            Ok(None) => unreachable!(),
            Err(e) => {
                println!("criterion {name} FAIL error: {e}");
                failed += 1;
            }
        }
    }
    let start = Instant::now();
    let second: Vec<SuiteOutcome> = SUITES[..9].iter().filter_map(|n| run_suite(n).ok().flatten()).collect();
    let det = determinism_from_runs(&first, &second);
    println!(
        "criterion {:>2} {:<14} {} ({:.1?}) {}",
        det.criterion,
        det.name,
        if det.passed { "PASS" } else { "FAIL" },
        start.elapsed(),
        det.summary
    );
    failed += usize::from(!det.passed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
