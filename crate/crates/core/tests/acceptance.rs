//! Runs every acceptance criterion and prints one line per criterion.
//! Exits non-zero if any criterion fails. `POLYLOG_SEED` overrides the seed;
//! passing criterion ids as arguments runs only those.

use std::process::ExitCode;

use polylog_core::report::{criteria, run_criterion};

const DEFAULT_SEED: u64 = 20240611;

fn main() -> ExitCode {
    let seed = std::env::var("POLYLOG_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED);
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    println!("acceptance suite, seed {seed}");
    let mut failed = Vec::new();
    for c in criteria() {
        if !only.is_empty() && !only.contains(&c.id) {
            continue;
        }
        let r = run_criterion(&c, seed);
        println!("{}", r.line());
        if !r.passed {
            failed.push(r.id);
        }
    }
    if failed.is_empty() {
        println!("all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
