//! Isomorph-free generation of the graphs of a class by canonical edge
//! augmentation, one edge-count level at a time.
//!
//! A child `C = P + uv` is kept only when `C − e*` is isomorphic to `P`,
//! where `e*` is the last edge of `C`'s canonical form. Every class here is
//! closed under edge deletion, so each isomorphism class at level `m + 1`
//! has exactly one accepting parent class at level `m`; duplicates from one
//! parent are removed by canonical form.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::GraphClass;
use crate::error::{Error, Result};
use crate::forbidden::ForbiddenSpec;
use crate::graph::Graph;
use crate::recognition::{is_outerplanar, is_planar};

use super::canon::{canonical_form, canonical_labeling};

pub const DEFAULT_EXHAUSTIVE_CAP: usize = 10;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneStats {
    pub edge_bound: u64,
    pub class: u64,
    pub forbidden: u64,
    pub duplicate: u64,
}

impl PruneStats {
    pub(crate) fn add(&mut self, o: &PruneStats) {
        self.edge_bound += o.edge_bound;
        self.class += o.class;
        self.forbidden += o.forbidden;
        self.duplicate += o.duplicate;
    }
}

/// Membership test for "in `class` and `forbidden`-free".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFilter {
    pub class: GraphClass,
    pub forbidden: Option<ForbiddenSpec>,
}

enum Verdict {
    Admit,
    EdgeBound,
    Class,
    Forbidden,
}

impl ClassFilter {
    fn edge_bound_ok(&self, g: &Graph) -> bool {
        let (n, m) = (g.n(), g.edge_count());
        match self.class {
            GraphClass::Outerplanar => n < 2 || m <= 2 * n - 3,
            GraphClass::Planar => n < 3 || m <= 3 * n - 6,
        }
    }

    fn verdict(&self, g: &Graph) -> Result<Verdict> {
        if !self.edge_bound_ok(g) {
            return Ok(Verdict::EdgeBound);
        }
        let in_class = match self.class {
            GraphClass::Outerplanar => is_outerplanar(g).planar,
            GraphClass::Planar => is_planar(g).planar,
        };
        if !in_class {
            return Ok(Verdict::Class);
        }
        if let Some(f) = &self.forbidden {
            if f.detect(g)?.found {
                return Ok(Verdict::Forbidden);
            }
        }
        Ok(Verdict::Admit)
    }

    pub fn admits(&self, g: &Graph) -> Result<bool> {
        Ok(matches!(self.verdict(g)?, Verdict::Admit))
    }
}

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::Refused(format!(
            "exhaustive enumeration at n = {n} exceeds the cap of {cap}; \
             use local search, or raise the cap knowing the run may take hours"
        )));
    }
    Ok(())
}

/// Accepted children of the canonical parent `p` (with graph6 `pform`),
/// sorted by canonical form.
fn children(
    p: &Graph,
    pform: &[u8],
    filter: &ClassFilter,
) -> Result<(Vec<(Vec<u8>, Graph)>, PruneStats)> {
    let n = p.n();
    let mut stats = PruneStats::default();
    let mut out: Vec<(Vec<u8>, Graph)> = Vec::new();
    for v in 1..n {
        for u in 0..v {
            if p.has_edge(u, v) {
                continue;
            }
            let c = p.with_edge(u, v)?;
            match filter.verdict(&c)? {
                Verdict::Admit => {}
                Verdict::EdgeBound => {
                    stats.edge_bound += 1;
                    continue;
                }
                Verdict::Class => {
                    stats.class += 1;
                    continue;
                }
                Verdict::Forbidden => {
                    stats.forbidden += 1;
                    continue;
                }
            }
            let perm = canonical_labeling(&c)?;
            let cg = c.relabel(&perm)?;
            let cform = cg.to_graph6_bytes();
            // last edge of the canonical form in graph6 order
            let (ci, cj) = cg.edges().max_by_key(|&(a, b)| (b, a)).expect("child has an edge");
            let mut inv = vec![0; n];
            for (x, &y) in perm.iter().enumerate() {
                inv[y] = x;
            }
            let parent_of = c.without_edge(inv[ci], inv[cj])?;
            if canonical_form(&parent_of)? != pform {
                stats.duplicate += 1;
                continue;
            }
            if out.iter().any(|(f, _)| *f == cform) {
                stats.duplicate += 1;
                continue;
            }
            out.push((cform, cg));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok((out, stats))
}

/// One edge-count level: canonical representatives sorted by graph6.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Level {
    pub edges: usize,
    pub graphs: Vec<(Vec<u8>, Graph)>,
}

impl Level {
    pub(crate) fn root(n: usize) -> Result<Level> {
        let g = Graph::empty(n)?;
        Ok(Level {
            edges: 0,
            graphs: vec![(canonical_form(&g)?, g)],
        })
    }

    /// The next level; parents are expanded in parallel and merged in
    /// canonical order.
    pub(crate) fn next(&self, filter: &ClassFilter) -> Result<(Level, PruneStats)> {
        let parts: Vec<(Vec<(Vec<u8>, Graph)>, PruneStats)> = self
            .graphs
            .par_iter()
            .map(|(f, g)| children(g, f, filter))
            .collect::<Result<_>>()?;
        let mut stats = PruneStats::default();
        let mut graphs = Vec::new();
        for (kids, s) in parts {
            stats.add(&s);
            graphs.extend(kids);
        }
        graphs.sort_by(|a, b| a.0.cmp(&b.0));
        Ok((
            Level {
                edges: self.edges + 1,
                graphs,
            },
            stats,
        ))
    }
}

/// One representative per isomorphism class of `n`-vertex graphs in
/// `class` that are `forbidden`-free (and connected, if asked), in order of
/// edge count and then canonical graph6.
pub fn enumerate_class(
    n: usize,
    class: GraphClass,
    forbidden: Option<ForbiddenSpec>,
    connected_only: bool,
) -> Result<Vec<Graph>> {
    enumerate_class_capped(n, class, forbidden, connected_only, DEFAULT_EXHAUSTIVE_CAP)
}

pub fn enumerate_class_capped(
    n: usize,
    class: GraphClass,
    forbidden: Option<ForbiddenSpec>,
    connected_only: bool,
    cap: usize,
) -> Result<Vec<Graph>> {
    check_cap(n, cap)?;
    if let Some(f) = &forbidden {
        f.validate()?;
    }
    let filter = ClassFilter { class, forbidden };
    let mut out = Vec::new();
    let mut level = Level::root(n)?;
    if !filter.admits(&level.graphs[0].1)? {
        return Ok(out);
    }
    loop {
        out.extend(
            level
                .graphs
                .iter()
                .filter(|(_, g)| !connected_only || g.is_connected())
                .map(|(_, g)| g.clone()),
        );
        let (next, _) = level.next(&filter)?;
        if next.graphs.is_empty() {
            return Ok(out);
        }
        level = next;
    }
}
