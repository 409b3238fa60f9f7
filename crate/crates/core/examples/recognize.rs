//! Planarity and outerplanarity with obstruction witnesses.
//!
//! Reads graph6 lines from the arguments, or checks a few named graphs.

use spexlab::recognition::{is_outerplanar, is_planar};
use spexlab::Graph;

fn main() -> spexlab::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let graphs: Vec<(String, Graph)> = if args.is_empty() {
        vec![
            ("K4".into(), Graph::complete(4)?),
            ("K5".into(), Graph::complete(5)?),
            ("K3,3".into(), Graph::complete_bipartite(3, 3)?),
            ("K2,3".into(), Graph::complete_bipartite(2, 3)?),
            ("C7".into(), Graph::cycle(7)?),
        ]
    } else {
        args.iter()
            .map(|s| Graph::from_graph6(s).map(|g| (s.clone(), g)))
            .collect::<spexlab::Result<_>>()?
    };
    for (name, g) in graphs {
        let p = is_planar(&g);
        let o = is_outerplanar(&g);
        println!("{name}: planar={} outerplanar={}", p.planar, o.planar);
        for (kind, w) in [("planar", p.witness), ("outerplanar", o.witness)] {
            if let Some(w) = w {
                println!("  {kind} obstruction {} on {:?}", w.tag, w.vertices);
            }
        }
    }
    Ok(())
}
