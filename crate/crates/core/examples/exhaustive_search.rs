//! Exhaustive extremal search over isomorphism classes.
//!
//! `cargo run --release --example exhaustive_search -- outerplanar B2x3 4 8`

use spexlab::constructions::GraphClass;
use spexlab::search::SearchConfig;

fn main() -> spexlab::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |i: usize, d: &str| args.get(i).cloned().unwrap_or_else(|| d.to_string());
    let class: GraphClass = arg(0, "outerplanar").parse()?;
    let forbidden = arg(1, "M2");
    let n_min: usize = arg(2, "4").parse().expect("n_min");
    let n_max: usize = arg(3, "8").parse().expect("n_max");

    let mut cfg = SearchConfig::new(n_min, n_max, class);
    cfg.forbidden = Some(forbidden.parse()?);
    let report = spexlab::search::exhaustive_spex(&cfg)?;
    for r in &report.results {
        println!(
            "n={} rho={:.10} candidates={} maximizers={:?} ({:.2}s)",
            r.n,
            r.best_rho.unwrap_or(f64::NAN),
            r.candidates,
            r.maximizers,
            r.seconds
        );
    }
    Ok(())
}
