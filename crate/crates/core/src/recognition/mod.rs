//! Planarity and outerplanarity decisions.
//!
//! Outerplanarity is decided through the classical reduction: `g` is
//! outerplanar iff `K1 ∨ g` is planar. Both answers therefore go through the
//! single left-right test in [`lr`].

mod lr;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// Best-effort description of why a graph is not in the class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub tag: String,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarityVerdict {
    pub planar: bool,
    pub witness: Option<Witness>,
}

impl PlanarityVerdict {
    fn yes() -> Self {
        PlanarityVerdict {
            planar: true,
            witness: None,
        }
    }

    fn no(tag: &str) -> Self {
        PlanarityVerdict {
            planar: false,
            witness: Some(Witness {
                tag: tag.to_string(),
                vertices: Vec::new(),
            }),
        }
    }
}

pub fn is_planar(g: &Graph) -> PlanarityVerdict {
    let n = g.n();
    if n > 2 && g.edge_count() > 3 * n - 6 {
        return PlanarityVerdict::no("edge-bound");
    }
    if lr::is_planar_lr(g) {
        PlanarityVerdict::yes()
    } else {
        PlanarityVerdict::no("K5-or-K33-minor")
    }
}

pub fn is_outerplanar(g: &Graph) -> PlanarityVerdict {
    if quick_reject_outerplanar(g) == Some(false) {
        return PlanarityVerdict::no("edge-bound");
    }
    // K1 v g with the apex as vertex 0
    let n = g.n();
    let edges = g
        .edges()
        .map(|(u, v)| (u + 1, v + 1))
        .chain((1..=n).map(|v| (0, v)));
    if lr::planar_edges(n + 1, edges) {
        PlanarityVerdict::yes()
    } else {
        PlanarityVerdict::no("K4-or-K23-minor")
    }
}

/// Sound rejection by the outerplanar edge bound `e <= 2n - 3`: returns
/// `Some(false)` when the bound is violated, `None` otherwise.
pub fn quick_reject_outerplanar(g: &Graph) -> Option<bool> {
    let n = g.n();
    if n >= 2 && g.edge_count() > 2 * n - 3 {
        Some(false)
    } else {
        None
    }
}
