//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;
use trivertex::checks::{run_criterion, CheckConfig};

fn main() -> ExitCode {
    let cfg = CheckConfig::default();
    let verbose = std::env::args().any(|a| a == "--verbose");
    let mut failed = 0;
    for id in 1..=8 {
        let t = Instant::now();
        let rep = run_criterion(id, &cfg);
        println!("{} ({:.1}s)", rep.line(), t.elapsed().as_secs_f64());
        if verbose || !rep.passed || id == 8 {
            for d in &rep.details {
                println!("    {d}");
            }
        }
        if !rep.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
