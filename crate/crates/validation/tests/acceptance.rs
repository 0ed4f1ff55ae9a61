//! Runs every acceptance criterion and prints one PASS/FAIL line each.

use std::process::ExitCode;

fn main() -> ExitCode {
    let results = tp_validation::run_acceptance();
    println!("\nacceptance criteria");
    for r in &results {
        println!("{r}");
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("{} passed, {failed} failed\n", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
