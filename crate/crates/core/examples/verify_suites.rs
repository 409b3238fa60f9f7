//! Runs verification suites and prints a traceability table.
//!
//! `cargo run --release --example verify_suites -- lemma-lm1 claim-3.3`
//! runs the named suites; with no arguments every suite runs at its
//! default grid.

use std::time::Instant;

use spexlab::experiments::{run_suite, SuiteParams, TraceabilityReport, SUITES};

fn main() -> spexlab::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let ids: Vec<&str> = if args.is_empty() {
        SUITES.iter().map(|s| s.id).collect()
    } else {
        args.iter().map(String::as_str).collect()
    };
    let mut suites = Vec::new();
    for id in ids {
        let start = Instant::now();
        let r = run_suite(id, &SuiteParams::default())?;
        eprintln!("{id}: {} ({:.1}s)", r.verdict(), start.elapsed().as_secs_f64());
        suites.push(r);
    }
    print!("{}", TraceabilityReport { suites }.to_markdown());
    Ok(())
}
