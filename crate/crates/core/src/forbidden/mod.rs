//! Detectors for the forbidden subgraphs `C_l`, `B_tl` and `(t+1)K2`.
//!
//! `B_tl` is `t` cycles of length `l` glued at one common vertex. Two
//! readings are supported, selected by [`BouquetReading`]:
//!
//! - [`BouquetReading::HubOnly`]: the cycles pairwise meet only in the hub.
//!   This is the reading under which the extremal families are `B_tl`-free,
//!   and it is the default everywhere.
//! - [`BouquetReading::EdgeDisjoint`]: the cycles pass through the hub and
//!   are pairwise edge-disjoint, but may share further vertices.
//!
//! For `t = 1` both readings reduce to `C_l`. On `K1 ∨ H` they agree, since
//! every cycle through the apex uses two apex edges.

mod cycles;
mod matching;
mod packing;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

use packing::Packer;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BouquetReading {
    #[default]
    HubOnly,
    EdgeDisjoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ForbiddenSpec {
    Cycle { l: usize },
    Bouquet { t: usize, l: usize },
    /// `Matching { m }` forbids `m K2`, i.e. matching number `>= m`.
    Matching { m: usize },
}

impl ForbiddenSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ForbiddenSpec::Cycle { l } if l < 3 => Err(invalid(format!("cycle length {l} < 3"))),
            ForbiddenSpec::Bouquet { l, .. } if l < 3 => {
                Err(invalid(format!("cycle length {l} < 3")))
            }
            ForbiddenSpec::Bouquet { t: 0, .. } => Err(invalid("bouquet needs t >= 1")),
            ForbiddenSpec::Matching { m: 0 } => Err(invalid("matching size must be >= 1")),
            _ => Ok(()),
        }
    }

    /// Runs the detector for this kind, bouquets under the default reading.
    pub fn detect(&self, g: &Graph) -> Result<DetectionResult> {
        self.validate()?;
        Ok(match *self {
            ForbiddenSpec::Cycle { l } => contains_cycle_of_length(g, l)?,
            ForbiddenSpec::Bouquet { t, l } => contains_bouquet(g, t, l)?,
            ForbiddenSpec::Matching { m } => contains_matching(g, m),
        })
    }
}

impl fmt::Display for ForbiddenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForbiddenSpec::Cycle { l } => write!(f, "C{l}"),
            ForbiddenSpec::Bouquet { t, l } => write!(f, "B{t}x{l}"),
            ForbiddenSpec::Matching { m } => write!(f, "M{m}"),
        }
    }
}

impl FromStr for ForbiddenSpec {
    type Err = Error;

    /// Parses `C{l}`, `B{t}x{l}` or `M{k}`, e.g. `C5`, `B3x5`, `M4`.
    fn from_str(s: &str) -> Result<Self> {
        let num = |x: &str| -> Result<usize> {
            if x.is_empty() || !x.bytes().all(|b| b.is_ascii_digit()) {
                return Err(invalid(format!("bad number {x:?} in forbidden spec {s:?}")));
            }
            x.parse()
                .map_err(|_| invalid(format!("number {x:?} out of range in {s:?}")))
        };
        let spec = if let Some(rest) = s.strip_prefix('C') {
            ForbiddenSpec::Cycle { l: num(rest)? }
        } else if let Some(rest) = s.strip_prefix('B') {
            let (t, l) = rest
                .split_once('x')
                .ok_or_else(|| invalid(format!("expected B{{t}}x{{l}}, got {s:?}")))?;
            ForbiddenSpec::Bouquet {
                t: num(t)?,
                l: num(l)?,
            }
        } else if let Some(rest) = s.strip_prefix('M') {
            ForbiddenSpec::Matching { m: num(rest)? }
        } else {
            return Err(invalid(format!(
                "unknown forbidden spec {s:?}; expected C{{l}}, B{{t}}x{{l}} or M{{k}}"
            )));
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DetectionWitness {
    Cycle { vertices: Vec<usize> },
    Bouquet { hub: usize, cycles: Vec<Vec<usize>> },
    Matching { edges: Vec<(usize, usize)> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectionResult {
    pub found: bool,
    pub witness: Option<DetectionWitness>,
}

impl DetectionResult {
    fn absent() -> Self {
        DetectionResult {
            found: false,
            witness: None,
        }
    }

    fn with(w: DetectionWitness) -> Self {
        DetectionResult {
            found: true,
            witness: Some(w),
        }
    }
}

fn is_cycle_in(g: &Graph, c: &[usize], l: usize) -> bool {
    if c.len() != l || c.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let mut seen = vec![false; g.n()];
    for &v in c {
        if std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    (0..l).all(|i| g.has_edge(c[i], c[(i + 1) % l]))
}

fn cycle_edges(c: &[usize]) -> Vec<(usize, usize)> {
    (0..c.len())
        .map(|i| {
            let (a, b) = (c[i], c[(i + 1) % c.len()]);
            (a.min(b), a.max(b))
        })
        .collect()
}

impl DetectionWitness {
    /// Re-checks the witness against `g` and `spec`, reading bouquets
    /// as `reading`.
    pub fn validates(&self, g: &Graph, spec: &ForbiddenSpec, reading: BouquetReading) -> bool {
        match (self, *spec) {
            (DetectionWitness::Cycle { vertices }, ForbiddenSpec::Cycle { l }) => {
                is_cycle_in(g, vertices, l)
            }
            (DetectionWitness::Cycle { vertices }, ForbiddenSpec::Bouquet { t: 1, l }) => {
                is_cycle_in(g, vertices, l)
            }
            (DetectionWitness::Bouquet { hub, cycles }, ForbiddenSpec::Bouquet { t, l }) => {
                if cycles.len() != t || !cycles.iter().all(|c| is_cycle_in(g, c, l) && c.contains(hub)) {
                    return false;
                }
                for (i, a) in cycles.iter().enumerate() {
                    for b in &cycles[i + 1..] {
                        let ok = match reading {
                            BouquetReading::HubOnly => {
                                a.iter().all(|v| v == hub || !b.contains(v))
                            }
                            BouquetReading::EdgeDisjoint => {
                                let eb = cycle_edges(b);
                                cycle_edges(a).iter().all(|e| !eb.contains(e))
                            }
                        };
                        if !ok {
                            return false;
                        }
                    }
                }
                true
            }
            (DetectionWitness::Matching { edges }, ForbiddenSpec::Matching { m }) => {
                let mut used = vec![false; g.n()];
                edges.len() >= m
                    && edges.iter().all(|&(u, v)| {
                        u < g.n()
                            && v < g.n()
                            && g.has_edge(u, v)
                            && !std::mem::replace(&mut used[u], true)
                            && !std::mem::replace(&mut used[v], true)
                    })
            }
            _ => false,
        }
    }
}

pub fn contains_cycle_of_length(g: &Graph, l: usize) -> Result<DetectionResult> {
    if l < 3 {
        return Err(invalid(format!("cycle length {l} < 3")));
    }
    Ok(match cycles::find_cycle(g, l) {
        Some(vertices) => DetectionResult::with(DetectionWitness::Cycle { vertices }),
        None => DetectionResult::absent(),
    })
}

fn check_vertex(g: &Graph, v: usize, l: usize, cap: usize) -> Result<()> {
    if v >= g.n() {
        return Err(invalid(format!("vertex {v} out of range for {} vertices", g.n())));
    }
    if l < 3 {
        return Err(invalid(format!("cycle length {l} < 3")));
    }
    if cap == 0 {
        return Err(invalid("cap must be >= 1"));
    }
    Ok(())
}

/// `min(cap, k)` where `k` is the largest number of `l`-cycles through
/// `v` that pairwise meet as required by `reading`, with one optimal family.
pub fn max_l_cycles_at(
    g: &Graph,
    v: usize,
    l: usize,
    cap: usize,
    reading: BouquetReading,
) -> Result<(usize, Vec<Vec<usize>>)> {
    check_vertex(g, v, l, cap)?;
    let cyc = cycles::cycles_through(g, v, l);
    if cyc.is_empty() {
        return Ok((0, Vec::new()));
    }
    let (universe, sets) = match reading {
        BouquetReading::HubOnly => {
            let words = g.n().div_ceil(64);
            let sets: Vec<Vec<u64>> = cyc
                .iter()
                .map(|c| {
                    let mut b = vec![0u64; words];
                    for &x in &c[1..] {
                        b[x / 64] |= 1 << (x % 64);
                    }
                    b
                })
                .collect();
            (g.n(), sets)
        }
        BouquetReading::EdgeDisjoint => {
            let mut id = std::collections::HashMap::new();
            for c in &cyc {
                for e in cycle_edges(c) {
                    let next = id.len();
                    id.entry(e).or_insert(next);
                }
            }
            let words = id.len().div_ceil(64);
            let sets: Vec<Vec<u64>> = cyc
                .iter()
                .map(|c| {
                    let mut b = vec![0u64; words];
                    for e in cycle_edges(c) {
                        let i = id[&e];
                        b[i / 64] |= 1 << (i % 64);
                    }
                    b
                })
                .collect();
            (id.len(), sets)
        }
    };
    let (k, chosen) = Packer::new(&sets, universe).solve_all(cap);
    let mut family: Vec<Vec<usize>> = chosen.into_iter().map(|i| cyc[i].clone()).collect();
    family.sort();
    Ok((k, family))
}

/// `min(cap, k)` where `k` is the largest number of pairwise edge-disjoint
/// `l`-cycles through `v`.
pub fn max_edge_disjoint_l_cycles_at(g: &Graph, v: usize, l: usize, cap: usize) -> Result<usize> {
    Ok(max_l_cycles_at(g, v, l, cap, BouquetReading::EdgeDisjoint)?.0)
}

/// Bouquet detection under the default [`BouquetReading::HubOnly`].
pub fn contains_bouquet(g: &Graph, t: usize, l: usize) -> Result<DetectionResult> {
    contains_bouquet_with(g, t, l, BouquetReading::default())
}

pub fn contains_bouquet_with(
    g: &Graph,
    t: usize,
    l: usize,
    reading: BouquetReading,
) -> Result<DetectionResult> {
    if t == 0 {
        return Err(invalid("bouquet needs t >= 1"));
    }
    if l < 3 {
        return Err(invalid(format!("cycle length {l} < 3")));
    }
    if t == 1 {
        return contains_cycle_of_length(g, l);
    }
    if reading == BouquetReading::HubOnly && g.n() < 1 + t * (l - 1) {
        return Ok(DetectionResult::absent());
    }
    // the first hit in vertex order wins, so the witness does not depend on
    // scheduling
    let hubs: Vec<usize> = (0..g.n()).filter(|&v| g.deg(v) >= 2 * t).collect();
    let hit = hubs
        .par_iter()
        .map(|&v| {
            let (k, fam) = max_l_cycles_at(g, v, l, t, reading).expect("validated arguments");
            (k == t).then_some((v, fam))
        })
        .find_first(|r| r.is_some())
        .flatten();
    Ok(match hit {
        Some((hub, cycles)) => DetectionResult::with(DetectionWitness::Bouquet { hub, cycles }),
        None => DetectionResult::absent(),
    })
}

pub fn matching_number(g: &Graph) -> usize {
    matching::maximum_matching(g).len()
}

pub fn maximum_matching(g: &Graph) -> Vec<(usize, usize)> {
    matching::maximum_matching(g)
}

fn contains_matching(g: &Graph, m: usize) -> DetectionResult {
    let mm = matching::maximum_matching(g);
    if mm.len() >= m {
        DetectionResult::with(DetectionWitness::Matching {
            edges: mm[..m].to_vec(),
        })
    } else {
        DetectionResult::absent()
    }
}

pub fn is_free(g: &Graph, spec: &ForbiddenSpec) -> Result<bool> {
    Ok(!spec.detect(g)?.found)
}
