use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

/// A multiset of path orders, kept sorted non-increasing; it stands for the
/// linear forest `P_{n1} ∪ P_{n2} ∪ ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct PathPartition {
    parts: Vec<usize>,
}

impl TryFrom<Vec<usize>> for PathPartition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        PathPartition::new(parts)
    }
}

impl From<PathPartition> for Vec<usize> {
    fn from(p: PathPartition) -> Vec<usize> {
        p.parts
    }
}

impl fmt::Display for PathPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

impl PathPartition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(invalid("path orders must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(PathPartition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Order of the longest path, 0 for the empty partition.
    pub fn largest(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// The linear forest, paths laid out in part order on consecutive labels.
    pub fn to_graph(&self) -> Result<Graph> {
        let paths = self
            .parts
            .iter()
            .map(|&p| Graph::path(p))
            .collect::<Result<Vec<_>>>()?;
        Graph::disjoint_union(&paths)
    }

    /// True when every prefix sum of `other` is at least that of `self`.
    fn dominated_by(&self, other: &PathPartition) -> bool {
        let (mut sa, mut sb) = (0, 0);
        for k in 0..self.parts.len().max(other.parts.len()) {
            sa += self.parts.get(k).copied().unwrap_or(0);
            sb += other.parts.get(k).copied().unwrap_or(0);
            if sa > sb {
                return false;
            }
        }
        true
    }
}

/// `[n1]` followed by as many `n2` as fit into `total − n1`, then the
/// remainder as one more part when positive.
fn fill(total: usize, n1: usize, n2: usize) -> Result<PathPartition> {
    if n1 == 0 || n2 == 0 {
        return Err(invalid("n1 and n2 must be positive"));
    }
    if n1 > total {
        return Err(invalid(format!("n1 = {n1} exceeds the {total} available vertices")));
    }
    let rest = total - n1;
    let mut parts = vec![n1];
    parts.extend(std::iter::repeat_n(n2, rest / n2));
    if !rest.is_multiple_of(n2) {
        parts.push(rest % n2);
    }
    PathPartition::new(parts)
}

fn check_order(n1: usize, n2: usize) -> Result<()> {
    if n1 < n2 {
        return Err(invalid(format!("needs n1 >= n2, got n1 = {n1}, n2 = {n2}")));
    }
    Ok(())
}

/// The linear forest on `n − 1` vertices joined to one apex. `n1 = n2` is
/// accepted.
pub fn h_op(n: usize, n1: usize, n2: usize) -> Result<PathPartition> {
    check_order(n1, n2)?;
    fill(n.checked_sub(1).ok_or_else(|| invalid("n must be positive"))?, n1, n2)
}

/// The linear forest on `n − 2` vertices joined to an edge. `n1 = n2` is
/// accepted.
pub fn h_p(n: usize, n1: usize, n2: usize) -> Result<PathPartition> {
    check_order(n1, n2)?;
    fill(n.checked_sub(2).ok_or_else(|| invalid("n must be at least 2"))?, n1, n2)
}

/// One path-merging step on parts `i` and `j` of `h`: `(s1, s2)` becomes
/// `(s1 + 1, s2 − 1)`, or `s1 + s2` when `s2 = 1`.
pub fn transform(h: &PathPartition, i: usize, j: usize) -> Result<PathPartition> {
    let k = h.parts.len();
    if i >= k || j >= k {
        return Err(invalid(format!("index out of range for {k} parts")));
    }
    if i == j {
        return Err(invalid("indices must differ"));
    }
    let (s1, s2) = (h.parts[i], h.parts[j]);
    if s1 < s2 {
        return Err(invalid(format!("needs s1 >= s2, got ({s1}, {s2})")));
    }
    let mut parts: Vec<usize> = h
        .parts
        .iter()
        .enumerate()
        .filter(|&(x, _)| x != i && x != j)
        .map(|(_, &p)| p)
        .collect();
    if s2 == 1 {
        parts.push(s1 + s2);
    } else {
        parts.push(s1 + 1);
        parts.push(s2 - 1);
    }
    PathPartition::new(parts)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformStep {
    pub i: usize,
    pub j: usize,
    pub s1: usize,
    pub s2: usize,
    pub result: PathPartition,
}

/// All partitions one step away from `h`, one per distinct `(s1, s2)` pair.
pub fn transform_moves(h: &PathPartition) -> Vec<TransformStep> {
    let mut out: Vec<TransformStep> = Vec::new();
    let p = &h.parts;
    for i in 0..p.len() {
        if i > 0 && p[i] == p[i - 1] {
            continue;
        }
        for j in 0..p.len() {
            // first index holding this value, distinct from i
            if j == i || (j > 0 && p[j] == p[j - 1] && j - 1 != i) {
                continue;
            }
            if p[i] < p[j] {
                continue;
            }
            let result = transform(h, i, j).expect("indices valid");
            out.push(TransformStep {
                i,
                j,
                s1: p[i],
                s2: p[j],
                result,
            });
        }
    }
    out
}

/// Shortest chain of transformations carrying `h` to `target`; empty when
/// they are equal. Every step strictly increases the sum of squared parts
/// and the dominance order, which prunes the breadth-first search.
pub fn transformation_chain_to(
    h: &PathPartition,
    target: &PathPartition,
) -> Result<Vec<TransformStep>> {
    if h.total() != target.total() {
        return Err(invalid(format!(
            "totals differ: {} vs {}",
            h.total(),
            target.total()
        )));
    }
    if h == target {
        return Ok(Vec::new());
    }
    if !h.dominated_by(target) {
        return Err(Error::NotReachable);
    }
    let mut parent: HashMap<PathPartition, Option<(PathPartition, TransformStep)>> = HashMap::new();
    parent.insert(h.clone(), None);
    let mut queue = VecDeque::from([h.clone()]);
    while let Some(cur) = queue.pop_front() {
        for step in transform_moves(&cur) {
            let next = step.result.clone();
            if parent.contains_key(&next) || !next.dominated_by(target) {
                continue;
            }
            parent.insert(next.clone(), Some((cur.clone(), step)));
            if &next == target {
                let mut chain = Vec::new();
                let mut at = next;
                while let Some(Some((prev, step))) = parent.get(&at).cloned() {
                    chain.push(step);
                    at = prev;
                }
                chain.reverse();
                return Ok(chain);
            }
            queue.push_back(next);
        }
    }
    Err(Error::NotReachable)
}
