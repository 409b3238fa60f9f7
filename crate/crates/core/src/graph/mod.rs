//! Immutable simple undirected graphs stored as bitset adjacency rows.
//!
//! Every row is `words` 64-bit words wide, so row `i` occupies
//! `rows[i * words .. (i + 1) * words]`. The matrix is kept symmetric with
//! an empty diagonal; all constructors and combinators preserve that.

mod graph6;
mod vertex_set;

use std::fmt;

use crate::error::{invalid, Error, Result};

pub use vertex_set::VertexSet;

/// Largest vertex count a [`Graph`] may have.
pub const MAX_VERTICES: usize = 65_536;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

/// Mutable staging area used to assemble a [`Graph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    g: Graph,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(invalid(format!(
                "vertex count {n} exceeds the cap of {MAX_VERTICES}"
            )));
        }
        let words = words_for(n);
        Ok(GraphBuilder {
            g: Graph {
                n,
                words,
                rows: vec![0; n * words],
            },
        })
    }

    pub fn from_graph(g: &Graph) -> Self {
        GraphBuilder { g: g.clone() }
    }

    pub fn n(&self) -> usize {
        self.g.n
    }

    /// Adds the edge `uv`. Loops and out-of-range endpoints are rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<&mut Self> {
        self.check_pair(u, v)?;
        self.g.set(u, v, true);
        Ok(self)
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<&mut Self> {
        self.check_pair(u, v)?;
        self.g.set(u, v, false);
        Ok(self)
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        if u >= self.g.n || v >= self.g.n {
            return Err(invalid(format!(
                "edge ({u}, {v}) out of range for {} vertices",
                self.g.n
            )));
        }
        if u == v {
            return Err(invalid(format!("loop at vertex {u}")));
        }
        Ok(())
    }

    pub(crate) fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.g.n && v < self.g.n);
        self.g.set(u, v, true);
    }

    pub fn build(self) -> Graph {
        self.g
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        Ok(GraphBuilder::new(n)?.build())
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut b = GraphBuilder::new(n)?;
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    /// The path `P_k` with vertices `0..k` in path order.
    pub fn path(k: usize) -> Result<Graph> {
        if k == 0 {
            return Err(invalid("path order must be at least 1"));
        }
        let mut b = GraphBuilder::new(k)?;
        for i in 1..k {
            b.add_edge_unchecked(i - 1, i);
        }
        Ok(b.build())
    }

    pub fn cycle(k: usize) -> Result<Graph> {
        if k < 3 {
            return Err(invalid(format!("cycle length must be at least 3, got {k}")));
        }
        let mut b = GraphBuilder::new(k)?;
        for i in 0..k {
            b.add_edge_unchecked(i, (i + 1) % k);
        }
        Ok(b.build())
    }

    /// `K_{1,n-1}` with the hub at index 0.
    pub fn star(n: usize) -> Result<Graph> {
        if n < 2 {
            return Err(invalid(format!("star needs at least 2 vertices, got {n}")));
        }
        let mut b = GraphBuilder::new(n)?;
        for v in 1..n {
            b.add_edge_unchecked(0, v);
        }
        Ok(b.build())
    }

    pub fn complete(n: usize) -> Result<Graph> {
        let mut b = GraphBuilder::new(n)?;
        for u in 0..n {
            for v in u + 1..n {
                b.add_edge_unchecked(u, v);
            }
        }
        Ok(b.build())
    }

    /// `K_{a,b}`; the side of size `a` takes indices `0..a`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
        let mut gb = GraphBuilder::new(a + b)?;
        for u in 0..a {
            for v in a..a + b {
                gb.add_edge_unchecked(u, v);
            }
        }
        Ok(gb.build())
    }

    /// Block-diagonal union; vertex indices are offset in list order.
    pub fn disjoint_union(gs: &[Graph]) -> Result<Graph> {
        let n = gs.iter().map(|g| g.n).sum();
        let mut b = GraphBuilder::new(n)?;
        let mut offset = 0;
        for g in gs {
            for (u, v) in g.edges() {
                b.add_edge_unchecked(u + offset, v + offset);
            }
            offset += g.n;
        }
        Ok(b.build())
    }

    /// `g1 ∨ g2`: `g1`'s vertices come first, followed by `g2`'s.
    pub fn join(g1: &Graph, g2: &Graph) -> Result<Graph> {
        let n1 = g1.n;
        let mut b = GraphBuilder::new(n1 + g2.n)?;
        for (u, v) in g1.edges() {
            b.add_edge_unchecked(u, v);
        }
        for (u, v) in g2.edges() {
            b.add_edge_unchecked(u + n1, v + n1);
        }
        for u in 0..n1 {
            for v in 0..g2.n {
                b.add_edge_unchecked(u, n1 + v);
            }
        }
        Ok(b.build())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    fn set(&mut self, u: usize, v: usize, on: bool) {
        let w = self.words;
        let (bu, mu) = (u / 64, 1u64 << (u % 64));
        let (bv, mv) = (v / 64, 1u64 << (v % 64));
        if on {
            self.rows[u * w + bv] |= mv;
            self.rows[v * w + bu] |= mu;
        } else {
            self.rows[u * w + bv] &= !mv;
            self.rows[v * w + bu] &= !mu;
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && (self.rows[u * self.words + v / 64] >> (v % 64)) & 1 == 1
    }

    /// Degree of `v`; out-of-range vertices are an error.
    pub fn degree(&self, v: usize) -> Result<usize> {
        if v >= self.n {
            return Err(invalid(format!(
                "vertex {v} out of range for {} vertices",
                self.n
            )));
        }
        Ok(self.deg(v))
    }

    #[inline]
    pub(crate) fn deg(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.deg(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.deg(v)).sum::<usize>() / 2
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(v))
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut b = GraphBuilder::from_graph(self);
        b.add_edge(u, v)?;
        Ok(b.build())
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut b = GraphBuilder::from_graph(self);
        b.remove_edge(u, v)?;
        Ok(b.build())
    }

    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<Graph> {
        if s.universe() != self.n {
            return Err(invalid(format!(
                "vertex set over {} vertices used with a graph on {}",
                s.universe(),
                self.n
            )));
        }
        let verts: Vec<usize> = s.iter().collect();
        let mut b = GraphBuilder::new(verts.len())?;
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    b.add_edge_unchecked(i, j);
                }
            }
        }
        Ok(b.build())
    }

    /// The graph whose vertex `perm[v]` plays the role of `v`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(invalid("permutation length does not match vertex count"));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(invalid("not a permutation"));
            }
        }
        let mut b = GraphBuilder::new(self.n)?;
        for (u, v) in self.edges() {
            b.add_edge_unchecked(perm[u], perm[v]);
        }
        Ok(b.build())
    }

    /// Connected components, each sorted, listed by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// True for the null graph and every single-component graph.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Symmetry and empty diagonal; always true for graphs built by this crate.
    pub fn is_well_formed(&self) -> bool {
        for u in 0..self.n {
            if self.has_edge(u, u) {
                return false;
            }
            for v in self.neighbors(u) {
                if v >= self.n || !self.has_edge(v, u) {
                    return false;
                }
            }
        }
        true
    }

    /// One `"u v"` line per edge, 0-based, `u < v`.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Parses the text written by [`Graph::to_edge_list`]; blank lines and
    /// `#` comments are skipped.
    pub fn from_edge_list(n: usize, text: &str) -> Result<Graph> {
        let mut b = GraphBuilder::new(n)?;
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let body = line.split('#').next().unwrap_or("").trim();
            if !body.is_empty() {
                let mut it = body.split_whitespace().map(str::parse::<usize>);
                match (it.next(), it.next(), it.next()) {
                    (Some(Ok(u)), Some(Ok(v)), None) => {
                        b.add_edge(u, v)?;
                    }
                    _ => {
                        return Err(Error::Parse {
                            offset,
                            message: format!("expected \"u v\", found {body:?}"),
                        })
                    }
                }
            }
            offset += line.len();
        }
        Ok(b.build())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut rest = w;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * 64 + b)
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degree_sequence(g: &Graph) -> Vec<usize> {
        g.degrees()
    }

    #[test]
    fn paths() {
        let p1 = Graph::path(1).unwrap();
        assert_eq!((p1.n(), p1.edge_count()), (1, 0));
        let p5 = Graph::path(5).unwrap();
        assert_eq!(p5.edge_count(), 4);
        assert_eq!(degree_sequence(&p5), vec![1, 2, 2, 2, 1]);
        assert_eq!(Graph::path(2).unwrap(), Graph::complete(2).unwrap());
        assert!(matches!(Graph::path(0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn cycles_and_stars() {
        assert_eq!(Graph::cycle(3).unwrap(), Graph::complete(3).unwrap());
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!((c4.n(), c4.edge_count()), (4, 4));
        assert!(c4.degrees().iter().all(|&d| d == 2));
        assert!(Graph::cycle(2).is_err());

        assert_eq!(Graph::star(2).unwrap(), Graph::complete(2).unwrap());
        assert_eq!(degree_sequence(&Graph::star(6).unwrap()), vec![5, 1, 1, 1, 1, 1]);
        assert_eq!(Graph::star(8).unwrap().degree(0).unwrap(), 7);
        assert!(Graph::star(8).unwrap().degree(8).is_err());
    }

    #[test]
    fn unions() {
        let k2 = Graph::complete(2).unwrap();
        let two_k2 = Graph::disjoint_union(&[k2.clone(), k2.clone()]).unwrap();
        assert_eq!((two_k2.n(), two_k2.edge_count()), (4, 2));
        assert_eq!(Graph::disjoint_union(&[]).unwrap().n(), 0);
        let p3 = Graph::path(3).unwrap();
        let g = Graph::disjoint_union(&[p3, k2.clone(), k2]).unwrap();
        assert_eq!((g.n(), g.edge_count()), (7, 4));
        assert_eq!(g.components().len(), 3);
    }

    #[test]
    fn joins() {
        let k1 = Graph::empty(1).unwrap();
        let wheel = Graph::join(&k1, &Graph::cycle(9).unwrap()).unwrap();
        assert_eq!((wheel.n(), wheel.edge_count()), (10, 18));
        assert_eq!(wheel.degree(0).unwrap(), 9);

        let k2 = Graph::complete(2).unwrap();
        let g = Graph::join(&k2, &Graph::path(4).unwrap()).unwrap();
        assert_eq!((g.n(), g.edge_count()), (6, 12));

        // K1 ∨ ((t-1)K2 ∪ (n-2t+1)K1) with t = 3, n = 10
        let mut parts = vec![k2.clone(); 2];
        parts.extend(std::iter::repeat_n(k1.clone(), 5));
        let inner = Graph::disjoint_union(&parts).unwrap();
        let w = Graph::join(&k1, &inner).unwrap();
        assert_eq!((w.n(), w.edge_count()), (10, 11));
    }

    #[test]
    fn induced_rim_of_wheel_is_cycle() {
        let k1 = Graph::empty(1).unwrap();
        let wheel = Graph::join(&k1, &Graph::cycle(9).unwrap()).unwrap();
        let rim = VertexSet::from_slice(10, &(1..10).collect::<Vec<_>>()).unwrap();
        assert_eq!(wheel.induced_subgraph(&rim).unwrap(), Graph::cycle(9).unwrap());
        let wrong = VertexSet::new(9);
        assert!(wheel.induced_subgraph(&wrong).is_err());
    }

    #[test]
    fn builder_rejects_loops_and_range() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(GraphBuilder::new(MAX_VERTICES + 1).is_err());
        let g = Graph::from_edges(70, &[(0, 69), (64, 65)]).unwrap();
        assert!(g.has_edge(69, 0) && g.has_edge(65, 64));
        assert!(g.is_well_formed());
    }

    #[test]
    fn edge_list_text() {
        let g = Graph::cycle(5).unwrap();
        let text = g.to_edge_list();
        assert_eq!(text.lines().next(), Some("0 1"));
        assert_eq!(Graph::from_edge_list(5, &text).unwrap(), g);
        let err = Graph::from_edge_list(5, "0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 4, .. }));
    }

    #[test]
    fn relabel_and_edits() {
        let p3 = Graph::path(3).unwrap();
        let r = p3.relabel(&[1, 0, 2]).unwrap();
        assert!(r.has_edge(1, 0) && r.has_edge(0, 2) && !r.has_edge(1, 2));
        assert!(p3.relabel(&[0, 0, 1]).is_err());
        let c3 = p3.with_edge(0, 2).unwrap();
        assert_eq!(c3.edge_count(), 3);
        assert_eq!(c3.without_edge(0, 2).unwrap(), p3);
    }
}
