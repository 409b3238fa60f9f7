//! Seeded local search beyond the exhaustive range, starting from a star.

use spexlab::constructions::GraphClass;
use spexlab::search::{local_search_spex, SearchConfig, SearchMode};
use spexlab::Graph;

fn main() -> spexlab::Result<()> {
    let n = 30;
    let mut cfg = SearchConfig::new(n, n, GraphClass::Outerplanar);
    cfg.mode = SearchMode::Local;
    cfg.forbidden = Some("B2x4".parse()?);
    cfg.restarts = 4;
    cfg.seed = 11;
    let report = local_search_spex(&cfg, &Graph::star(n)?)?;
    let r = &report.results[0];
    println!("best rho {:.10} after {} moves (restart {:?})", r.best_rho.unwrap_or(f64::NAN), r.moves.len(), r.restart);
    for m in r.moves.iter().take(10) {
        println!("  {:?} {} {} {:?} -> {:.6}", m.kind, m.u, m.v, m.w, m.rho_after);
    }
    println!("{}", r.maximizers[0]);
    Ok(())
}
