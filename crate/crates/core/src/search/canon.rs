//! Canonical labeling for small graphs by equitable refinement and an
//! individualization search tree with automorphism pruning.
//!
//! The certificate of a leaf is the upper triangle of the relabeled
//! adjacency matrix in graph6 bit order; the canonical form is the leaf with
//! the largest certificate. Two leaves with equal certificates yield an
//! automorphism, and children of a node that lie in one orbit of the
//! automorphisms fixing the node's prefix are explored only once.

use crate::error::{invalid, Result};
use crate::graph::Graph;

pub const MAX_CANON_VERTICES: usize = 16;

type Cells = Vec<Vec<u8>>;

struct Search {
    n: usize,
    adj: Vec<u32>,
    best: Option<(u128, Vec<u8>)>,
    first: Option<(u128, Vec<u8>)>,
    /// Automorphisms found so far, as vertex maps.
    autos: Vec<Vec<u8>>,
}

fn mask(cell: &[u8]) -> u32 {
    cell.iter().fold(0, |m, &v| m | 1 << v)
}

impl Search {
    /// Splits cells by neighbor counts into each splitter until equitable.
    fn refine(&self, cells: &mut Cells) {
        'outer: loop {
            for s in 0..cells.len() {
                let sm = mask(&cells[s]);
                let mut next: Cells = Vec::with_capacity(cells.len());
                for cell in cells.iter() {
                    if cell.len() == 1 {
                        next.push(cell.clone());
                        continue;
                    }
                    let mut keyed: Vec<(u32, u8)> = cell
                        .iter()
                        .map(|&v| ((self.adj[v as usize] & sm).count_ones(), v))
                        .collect();
                    keyed.sort_unstable();
                    let mut start = 0;
                    for i in 1..=keyed.len() {
                        if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                            next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                            start = i;
                        }
                    }
                }
                if next.len() != cells.len() {
                    *cells = next;
                    continue 'outer;
                }
            }
            return;
        }
    }

    fn certificate(&self, lab: &[u8]) -> u128 {
        let mut c = 0u128;
        for j in 1..self.n {
            let row = self.adj[lab[j] as usize];
            for &li in &lab[..j] {
                c = (c << 1) | ((row >> li) & 1) as u128;
            }
        }
        c
    }

    /// Orbits of the automorphisms that fix every vertex of `prefix`.
    fn orbits(&self, prefix: &[u8]) -> Vec<u8> {
        let mut parent: Vec<u8> = (0..self.n as u8).collect();
        fn find(p: &mut [u8], mut x: u8) -> u8 {
            while p[x as usize] != x {
                p[x as usize] = p[p[x as usize] as usize];
                x = p[x as usize];
            }
            x
        }
        for g in &self.autos {
            if prefix.iter().any(|&v| g[v as usize] != v) {
                continue;
            }
            for v in 0..self.n as u8 {
                let (a, b) = (find(&mut parent, v), find(&mut parent, g[v as usize]));
                if a != b {
                    parent[a.max(b) as usize] = a.min(b);
                }
            }
        }
        (0..self.n as u8).map(|v| find(&mut parent, v)).collect()
    }

    fn record_auto(&mut self, from: &[u8], to: &[u8]) {
        let mut g = vec![0u8; self.n];
        for p in 0..self.n {
            g[from[p] as usize] = to[p];
        }
        if g.iter().enumerate().any(|(v, &w)| v as u8 != w) && !self.autos.contains(&g) {
            self.autos.push(g);
        }
    }

    fn leaf(&mut self, cells: &Cells) {
        let lab: Vec<u8> = cells.iter().map(|c| c[0]).collect();
        let cert = self.certificate(&lab);
        match &self.first {
            None => self.first = Some((cert, lab.clone())),
            Some((fc, fl)) if *fc == cert => {
                let fl = fl.clone();
                self.record_auto(&fl, &lab);
            }
            _ => {}
        }
        match &self.best {
            Some((bc, bl)) if *bc == cert => {
                let bl = bl.clone();
                self.record_auto(&bl, &lab);
            }
            Some((bc, _)) if *bc > cert => {}
            _ => self.best = Some((cert, lab)),
        }
    }

    fn descend(&mut self, mut cells: Cells, prefix: &mut Vec<u8>) {
        self.refine(&mut cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let mut members = cells[target].clone();
        members.sort_unstable();
        let mut tried: Vec<u8> = Vec::new();
        for &w in &members {
            let orb = self.orbits(prefix);
            if tried.iter().any(|&t| orb[t as usize] == orb[w as usize]) {
                continue;
            }
            tried.push(w);
            let mut child = cells.clone();
            let rest: Vec<u8> = cells[target].iter().copied().filter(|&x| x != w).collect();
            child[target] = vec![w];
            child.insert(target + 1, rest);
            prefix.push(w);
            self.descend(child, prefix);
            prefix.pop();
        }
    }
}

/// Canonical relabeling of `g`: `perm[v]` is the new label of `v`.
pub fn canonical_labeling(g: &Graph) -> Result<Vec<usize>> {
    let n = g.n();
    if n > MAX_CANON_VERTICES {
        return Err(invalid(format!(
            "canonical labeling supports at most {MAX_CANON_VERTICES} vertices, got {n}"
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).fold(0u32, |m, w| m | 1 << w))
        .collect();
    let mut s = Search {
        n,
        adj,
        best: None,
        first: None,
        autos: Vec::new(),
    };
    let mut by_degree: Vec<(u32, u8)> = (0..n).map(|v| (s.adj[v].count_ones(), v as u8)).collect();
    by_degree.sort_unstable();
    let mut cells: Cells = Vec::new();
    for (i, &(d, v)) in by_degree.iter().enumerate() {
        if i > 0 && by_degree[i - 1].0 == d {
            cells.last_mut().expect("open cell").push(v);
        } else {
            cells.push(vec![v]);
        }
    }
    s.descend(cells, &mut Vec::new());
    let (_, lab) = s.best.expect("search reaches a leaf");
    let mut perm = vec![0; n];
    for (pos, &v) in lab.iter().enumerate() {
        perm[v as usize] = pos;
    }
    Ok(perm)
}

/// The canonical representative of the isomorphism class of `g`.
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    g.relabel(&canonical_labeling(g)?)
}

/// graph6 bytes of the canonical representative; equal exactly for
/// isomorphic graphs.
pub fn canonical_form(g: &Graph) -> Result<Vec<u8>> {
    Ok(canonical_graph(g)?.to_graph6_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn eleven_graphs_on_four_vertices() {
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
        let mut forms = HashSet::new();
        for mask in 0u32..64 {
            let e: Vec<_> = (0..6).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            forms.insert(canonical_form(&Graph::from_edges(4, &e).unwrap()).unwrap());
        }
        assert_eq!(forms.len(), 11);
    }

    #[test]
    fn relabeling_invariance() {
        let p4 = Graph::path(4).unwrap();
        let q = p4.relabel(&[2, 0, 3, 1]).unwrap();
        assert_eq!(canonical_form(&p4).unwrap(), canonical_form(&q).unwrap());
        assert_ne!(
            canonical_form(&p4).unwrap(),
            canonical_form(&Graph::cycle(4).unwrap()).unwrap()
        );
    }

    #[test]
    fn symmetric_graphs_finish() {
        for g in [
            Graph::empty(16).unwrap(),
            Graph::complete(16).unwrap(),
            Graph::complete_bipartite(8, 8).unwrap(),
            Graph::cycle(16).unwrap(),
        ] {
            let c = canonical_graph(&g).unwrap();
            assert_eq!(c.edge_count(), g.edge_count());
        }
        assert!(canonical_form(&Graph::empty(17).unwrap()).is_err());
    }
}
