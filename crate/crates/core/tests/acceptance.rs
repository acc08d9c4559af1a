//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the table is always printed. The process
//! fails if any criterion fails, except those in `validation::KNOWN_RED`, which
//! are evaluated with their full tolerances and reported as FAIL.
//!
//! Pass criterion ids as arguments to run a subset.

use solgas::validation::{run, CRITERIA};

fn main() {
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut unexpected = 0;
    for (id, _) in CRITERIA {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let check = run(id).expect("criterion id from the table");
        println!("{}", check.line());
        if !check.pass && !check.known_red() {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} acceptance criteria failed");
        std::process::exit(1);
    }
}
