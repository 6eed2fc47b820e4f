//! Runs the acceptance criteria and prints one line per criterion.
//!
//! `cargo test --test acceptance` runs all of them;
//! `cargo test --test acceptance -- 3,7` selects a subset.

use std::process::ExitCode;

use eqtrace::acceptance::{parse_selector, run_criterion};

fn main() -> ExitCode {
    let selector = std::env::args().skip(1).find(|a| !a.starts_with('-')).unwrap_or_else(|| "all".to_string());
    let ids = match parse_selector(&selector) {
        Ok(ids) => ids,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let mut failed = 0;
    for &id in &ids {
        let r = run_criterion(id).expect("selector was validated");
        println!("{}", r.line());
        if !r.passed {
            failed += 1;
            for d in &r.detail {
                println!("    {d}");
            }
            if !r.within_budget {
                println!("    over the runtime budget");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria failed", ids.len());
        ExitCode::FAILURE
    }
}
