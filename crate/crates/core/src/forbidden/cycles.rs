//! Exact-length cycle search by depth-first path extension.

use std::collections::VecDeque;

use crate::graph::Graph;

/// BFS distances from `src` inside the vertices accepted by `allowed`.
fn distances(g: &Graph, src: usize, allowed: impl Fn(usize) -> bool) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[src] = 0;
    let mut q = VecDeque::from([src]);
    while let Some(x) = q.pop_front() {
        for y in g.neighbors(x) {
            if dist[y] == usize::MAX && allowed(y) {
                dist[y] = dist[x] + 1;
                q.push_back(y);
            }
        }
    }
    dist
}

struct PathSearch<'g> {
    g: &'g Graph,
    anchor: usize,
    len: usize,
    dist: Vec<usize>,
    on_path: Vec<bool>,
    path: Vec<usize>,
    min_vertex: usize,
}

impl PathSearch<'_> {
    fn new(g: &Graph, anchor: usize, len: usize, min_vertex: usize) -> PathSearch<'_> {
        let dist = distances(g, anchor, |v| v >= min_vertex);
        let mut on_path = vec![false; g.n()];
        on_path[anchor] = true;
        PathSearch {
            g,
            anchor,
            len,
            dist,
            on_path,
            path: vec![anchor],
            min_vertex,
        }
    }

    /// Calls `visit` for each closed cycle; stops when it returns `false`.
    /// Each cycle is reported once, oriented so `path[1] < path[len-1]`.
    fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let x = *self.path.last().expect("path starts at the anchor");
        if self.path.len() == self.len {
            if self.g.has_edge(x, self.anchor) && self.path[1] < x {
                return visit(&self.path);
            }
            return true;
        }
        let used_edges = self.path.len() - 1;
        let neighbors: Vec<usize> = self.g.neighbors(x).collect();
        for y in neighbors {
            if y < self.min_vertex || self.on_path[y] {
                continue;
            }
            // y still needs (len - used_edges - 1) edges to close the cycle
            if self.dist[y] > self.len - used_edges - 1 {
                continue;
            }
            if self.path.len() >= 2 && self.path.len() + 1 == self.len && y < self.path[1] {
                continue;
            }
            self.on_path[y] = true;
            self.path.push(y);
            let go_on = self.run(visit);
            self.path.pop();
            self.on_path[y] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Some cycle with exactly `l` vertices, as a vertex list.
pub(crate) fn find_cycle(g: &Graph, l: usize) -> Option<Vec<usize>> {
    if l < 3 || l > g.n() {
        return None;
    }
    for s in 0..g.n() {
        if g.deg(s) < 2 {
            continue;
        }
        let mut search = PathSearch::new(g, s, l, s);
        let mut found = None;
        search.run(&mut |c| {
            found = Some(c.to_vec());
            false
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Every cycle with exactly `l` vertices through `v`, each listed once,
/// starting at `v`.
pub(crate) fn cycles_through(g: &Graph, v: usize, l: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if l < 3 || l > g.n() || g.deg(v) < 2 {
        return out;
    }
    let mut search = PathSearch::new(g, v, l, 0);
    search.run(&mut |c| {
        out.push(c.to_vec());
        true
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_in_complete_graph() {
        // K5 has 5!/(2*5) = 12 five-cycles, all through vertex 0, and
        // C(4,2) = 6 triangles through vertex 0.
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(cycles_through(&k5, 0, 5).len(), 12);
        assert_eq!(cycles_through(&k5, 0, 3).len(), 6);
        assert_eq!(cycles_through(&k5, 0, 6).len(), 0);
    }

    #[test]
    fn exact_lengths() {
        let c6 = Graph::cycle(6).unwrap();
        assert!(find_cycle(&c6, 6).is_some());
        assert!(find_cycle(&c6, 5).is_none());
        assert!(find_cycle(&Graph::path(8).unwrap(), 3).is_none());
    }
}
