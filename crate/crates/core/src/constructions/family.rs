use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::forbidden::ForbiddenSpec;
use crate::graph::{Graph, GraphBuilder};

use super::partition::{h_op, h_p, PathPartition};

/// Host class a family lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphClass {
    Outerplanar,
    Planar,
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphClass::Outerplanar => "outerplanar",
            GraphClass::Planar => "planar",
        })
    }
}

impl FromStr for GraphClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "outerplanar" => Ok(GraphClass::Outerplanar),
            "planar" => Ok(GraphClass::Planar),
            _ => Err(invalid(format!("unknown class {s:?}; expected outerplanar or planar"))),
        }
    }
}

/// A named graph family member. Text form `kind:key=value,...`, e.g.
/// `wheel:n=10`, `k1hop:t=2,l=5,n=40`, `k2hp:t=3,l=4,n=50`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FamilySpec {
    /// `K1 ∨ C_{n−1}`.
    Wheel { n: usize },
    /// `K_{1,n−1}`.
    Star { n: usize },
    /// `K1 ∨ (n−1)K1` plus the matching `(1,2), (3,4), ...` on the leaves.
    Jn { n: usize },
    /// `K1 ∨ H_OP(l−2, l−2)` for `t = 1`, else `K1 ∨ H_OP(tl−t−1, l−2)`.
    K1Hop { t: usize, l: usize, n: usize },
    /// `K2 ∨ H_P(tl−t−l, l−2)`, `t >= 2`.
    K2Hp { t: usize, l: usize, n: usize },
    /// `K_{2,n−2}`.
    K2nMinus2 { n: usize },
    /// `K_{1,n−1}` for `t = 1`, else `K1 ∨ H_OP(2t−1, 1)`.
    K1Match { t: usize, n: usize },
    /// `K1 ∨ ((t−1)K2 ∪ (n−2t+1)K1)`.
    WPrime { t: usize, n: usize },
    /// `K2 ∨ H_P(⌈(l−3)/2⌉, ⌊(l−3)/2⌋)`, `l >= 5`.
    K2Cl { l: usize, n: usize },
}

impl FamilySpec {
    fn tag(&self) -> &'static str {
        match self {
            FamilySpec::Wheel { .. } => "wheel",
            FamilySpec::Star { .. } => "star",
            FamilySpec::Jn { .. } => "jn",
            FamilySpec::K1Hop { .. } => "k1hop",
            FamilySpec::K2Hp { .. } => "k2hp",
            FamilySpec::K2nMinus2 { .. } => "k2n2",
            FamilySpec::K1Match { .. } => "k1match",
            FamilySpec::WPrime { .. } => "wprime",
            FamilySpec::K2Cl { .. } => "k2cl",
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            FamilySpec::Wheel { n }
            | FamilySpec::Star { n }
            | FamilySpec::Jn { n }
            | FamilySpec::K1Hop { n, .. }
            | FamilySpec::K2Hp { n, .. }
            | FamilySpec::K2nMinus2 { n }
            | FamilySpec::K1Match { n, .. }
            | FamilySpec::WPrime { n, .. }
            | FamilySpec::K2Cl { n, .. } => n,
        }
    }

    /// The same family at order `n`.
    pub fn with_n(&self, n: usize) -> FamilySpec {
        let mut s = *self;
        match &mut s {
            FamilySpec::Wheel { n: m }
            | FamilySpec::Star { n: m }
            | FamilySpec::Jn { n: m }
            | FamilySpec::K1Hop { n: m, .. }
            | FamilySpec::K2Hp { n: m, .. }
            | FamilySpec::K2nMinus2 { n: m }
            | FamilySpec::K1Match { n: m, .. }
            | FamilySpec::WPrime { n: m, .. }
            | FamilySpec::K2Cl { n: m, .. } => *m = n,
        }
        s
    }

    pub fn class(&self) -> GraphClass {
        match self {
            FamilySpec::Star { .. }
            | FamilySpec::K1Hop { .. }
            | FamilySpec::K1Match { .. }
            | FamilySpec::WPrime { .. } => GraphClass::Outerplanar,
            FamilySpec::Wheel { .. }
            | FamilySpec::Jn { .. }
            | FamilySpec::K2Hp { .. }
            | FamilySpec::K2nMinus2 { .. }
            | FamilySpec::K2Cl { .. } => GraphClass::Planar,
        }
    }

    /// The forbidden graph the family avoids, when it is extremal for one.
    pub fn forbidden(&self) -> Option<ForbiddenSpec> {
        match *self {
            FamilySpec::K1Hop { t, l, .. } | FamilySpec::K2Hp { t, l, .. } => {
                Some(ForbiddenSpec::Bouquet { t, l })
            }
            FamilySpec::K1Match { t, .. } => Some(ForbiddenSpec::Matching { m: t + 1 }),
            FamilySpec::K2nMinus2 { .. } => Some(ForbiddenSpec::Cycle { l: 3 }),
            FamilySpec::Jn { .. } => Some(ForbiddenSpec::Cycle { l: 4 }),
            FamilySpec::K2Cl { l, .. } => Some(ForbiddenSpec::Cycle { l }),
            FamilySpec::Wheel { .. } | FamilySpec::Star { .. } | FamilySpec::WPrime { .. } => None,
        }
    }

    /// Number of dominating vertices in front of the linear forest, with
    /// `(n1, n2)` of its partition, for the families of that shape.
    fn hub_shape(&self) -> Result<Option<(usize, usize, usize)>> {
        Ok(match *self {
            FamilySpec::K1Hop { t, l, .. } => {
                check_tl(t, l)?;
                let n1 = if t == 1 { l - 2 } else { t * l - t - 1 };
                Some((1, n1, l - 2))
            }
            FamilySpec::K2Hp { t, l, .. } => {
                check_tl(t, l)?;
                if t < 2 {
                    return Err(invalid("k2hp needs t >= 2"));
                }
                Some((2, t * l - t - l, l - 2))
            }
            FamilySpec::K1Match { t, .. } => {
                if t == 0 {
                    return Err(invalid("k1match needs t >= 1"));
                }
                Some((1, 2 * t - 1, 1))
            }
            FamilySpec::K2Cl { l, .. } => {
                if l < 5 {
                    return Err(invalid("k2cl needs l >= 5"));
                }
                Some((2, (l - 2) / 2, (l - 3) / 2))
            }
            _ => None,
        })
    }

    /// Smallest order at which the family is defined.
    pub fn min_n(&self) -> Result<usize> {
        if let Some((hubs, n1, _)) = self.hub_shape()? {
            return Ok(hubs + n1);
        }
        Ok(match *self {
            FamilySpec::Wheel { .. } => 4,
            FamilySpec::Star { .. } | FamilySpec::Jn { .. } => 2,
            FamilySpec::K2nMinus2 { .. } => 3,
            FamilySpec::WPrime { t, .. } => {
                if t == 0 {
                    return Err(invalid("wprime needs t >= 1"));
                }
                2 * t + 1
            }
            _ => unreachable!("hub-shaped families handled above"),
        })
    }

    pub fn validate(&self) -> Result<()> {
        let min = self.min_n()?;
        if self.n() < min {
            return Err(invalid(format!(
                "{}: n = {} is below the smallest feasible order {min}",
                self.tag(),
                self.n()
            )));
        }
        Ok(())
    }

    /// The linear forest joined to the hubs, for the families of that shape.
    pub fn partition(&self) -> Result<Option<PathPartition>> {
        self.validate()?;
        let n = self.n();
        Ok(match (*self, self.hub_shape()?) {
            (_, Some((1, n1, n2))) => Some(h_op(n, n1, n2)?),
            (_, Some((_, n1, n2))) => Some(h_p(n, n1, n2)?),
            (_, None) => None,
        })
    }
}

fn check_tl(t: usize, l: usize) -> Result<()> {
    if t == 0 {
        return Err(invalid("t must be >= 1"));
    }
    if l < 3 {
        return Err(invalid(format!("l must be >= 3, got {l}")));
    }
    Ok(())
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = self.tag();
        match *self {
            FamilySpec::Wheel { n }
            | FamilySpec::Star { n }
            | FamilySpec::Jn { n }
            | FamilySpec::K2nMinus2 { n } => write!(f, "{tag}:n={n}"),
            FamilySpec::K1Hop { t, l, n } | FamilySpec::K2Hp { t, l, n } => {
                write!(f, "{tag}:t={t},l={l},n={n}")
            }
            FamilySpec::K1Match { t, n } | FamilySpec::WPrime { t, n } => {
                write!(f, "{tag}:t={t},n={n}")
            }
            FamilySpec::K2Cl { l, n } => write!(f, "{tag}:l={l},n={n}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| invalid(format!("expected kind:key=value,..., got {s:?}")))?;
        let mut t = None;
        let mut l = None;
        let mut n = None;
        for kv in args.split(',') {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| invalid(format!("expected key=value, got {kv:?}")))?;
            let v: usize = v
                .parse()
                .map_err(|_| invalid(format!("bad value {v:?} for {k}")))?;
            let slot = match k {
                "t" => &mut t,
                "l" => &mut l,
                "n" => &mut n,
                _ => return Err(invalid(format!("unknown key {k:?}"))),
            };
            if slot.replace(v).is_some() {
                return Err(invalid(format!("duplicate key {k:?}")));
            }
        }
        let need = |x: Option<usize>, name: &str| {
            x.ok_or_else(|| invalid(format!("{kind} needs {name}=")))
        };
        let n = need(n, "n")?;
        let spec = match kind {
            "wheel" => FamilySpec::Wheel { n },
            "star" => FamilySpec::Star { n },
            "jn" => FamilySpec::Jn { n },
            "k2n2" => FamilySpec::K2nMinus2 { n },
            "k1hop" => FamilySpec::K1Hop {
                t: need(t.take(), "t")?,
                l: need(l.take(), "l")?,
                n,
            },
            "k2hp" => FamilySpec::K2Hp {
                t: need(t.take(), "t")?,
                l: need(l.take(), "l")?,
                n,
            },
            "k1match" => FamilySpec::K1Match {
                t: need(t.take(), "t")?,
                n,
            },
            "wprime" => FamilySpec::WPrime {
                t: need(t.take(), "t")?,
                n,
            },
            "k2cl" => FamilySpec::K2Cl {
                l: need(l.take(), "l")?,
                n,
            },
            _ => return Err(invalid(format!("unknown family {kind:?}"))),
        };
        if t.is_some() || l.is_some() {
            return Err(invalid(format!("{kind} takes no such parameter")));
        }
        spec.validate()?;
        Ok(spec)
    }
}

fn join_hubs(hubs: usize, forest: &Graph) -> Result<Graph> {
    Graph::join(&Graph::complete(hubs)?, forest)
}

/// Builds the family member. Hubs take the lowest labels, followed by the
/// paths in non-increasing order, each on consecutive labels.
pub fn construct(spec: &FamilySpec) -> Result<Graph> {
    spec.validate()?;
    if let (Some(p), Some((hubs, _, _))) = (spec.partition()?, spec.hub_shape()?) {
        return join_hubs(hubs, &p.to_graph()?);
    }
    match *spec {
        FamilySpec::Wheel { n } => join_hubs(1, &Graph::cycle(n - 1)?),
        FamilySpec::Star { n } => Graph::star(n),
        FamilySpec::Jn { n } => {
            let mut b = GraphBuilder::from_graph(&Graph::star(n)?);
            let mut v = 1;
            while v + 1 < n {
                b.add_edge(v, v + 1)?;
                v += 2;
            }
            Ok(b.build())
        }
        FamilySpec::K2nMinus2 { n } => Graph::complete_bipartite(2, n - 2),
        FamilySpec::WPrime { t, n } => {
            let mut parts = vec![Graph::path(2)?; t - 1];
            parts.push(Graph::empty(n - 2 * t + 1)?);
            join_hubs(1, &Graph::disjoint_union(&parts)?)
        }
        _ => unreachable!("hub-shaped families handled above"),
    }
}
