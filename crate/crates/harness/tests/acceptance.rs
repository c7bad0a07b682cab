//! Runs every acceptance criterion and prints one line per criterion.
//! `ACCEPTANCE_SCALE=smoke` selects small universes.

use std::process::ExitCode;

use ryser_harness::suites::{run_each, Outcome, Scale};

const SHOWN: usize = 10;

fn print_outcome(o: &Outcome) {
    println!("{}", o.line());
    if !o.passed() {
        for v in o.violations.iter().take(SHOWN) {
            println!("       {v}");
        }
        if o.violations.len() > SHOWN {
            println!("       ... {} more", o.violations.len() - SHOWN);
        }
    }
}

fn main() -> ExitCode {
    let scale = match std::env::var("ACCEPTANCE_SCALE").as_deref() {
        Ok("smoke") => Scale::smoke(),
        _ => Scale::default(),
    };
    let outcomes = match run_each(&scale, print_outcome) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("could not build the universes: {e:#}");
            return ExitCode::FAILURE;
        }
    };
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    println!("acceptance: {} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
