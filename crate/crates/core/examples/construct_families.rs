//! Builds members of the extremal families and prints their order, size,
//! path partition and graph6 encoding.
//!
//! `cargo run --example construct_families -- k1hop:t=3,l=5,n=60 wheel:n=12`

use spexlab::constructions::{construct, FamilySpec};

fn main() -> spexlab::Result<()> {
    let mut specs: Vec<String> = std::env::args().skip(1).collect();
    if specs.is_empty() {
        specs = ["k1hop:t=2,l=5,n=40", "k2hp:t=3,l=4,n=40", "k1match:t=3,n=20", "k2cl:l=7,n=30", "jn:n=9"]
            .map(String::from)
            .to_vec();
    }
    for s in specs {
        let spec: FamilySpec = s.parse()?;
        let g = construct(&spec)?;
        let parts = spec
            .partition()?
            .map(|p| p.to_string())
            .unwrap_or_else(|| "-".into());
        println!(
            "{spec:<22} class={:<11} n={:<4} m={:<4} paths={parts} graph6={}",
            spec.class(),
            g.n(),
            g.edge_count(),
            g.to_graph6()
        );
    }
    Ok(())
}
