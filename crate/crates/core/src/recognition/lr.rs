//! Left-right planarity criterion (Brandes' formulation of de Fraysseix and
//! Rosenstiehl's test), decision version only. Both DFS phases are
//! iterative so deep graphs do not exhaust the call stack.

use crate::graph::Graph;

type EdgeId = usize;

#[derive(Clone, Copy, Default, Debug)]
struct Interval {
    low: Option<EdgeId>,
    high: Option<EdgeId>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Default, Debug)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct State {
    n: usize,
    /// Oriented endpoints `(tail, head)` of every edge once visited.
    ends: Vec<(usize, usize)>,
    oriented: Vec<bool>,
    /// `adj[v]` holds `(w, edge id)` for each neighbor.
    adj: Vec<Vec<(usize, EdgeId)>>,
    height: Vec<Option<usize>>,
    parent_edge: Vec<Option<EdgeId>>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<usize>,
    ordered_out: Vec<Vec<EdgeId>>,
    refs: Vec<Option<EdgeId>>,
    lowpt_edge: Vec<Option<EdgeId>>,
    stack_bottom: Vec<usize>,
    stack: Vec<ConflictPair>,
}

/// Decides planarity of `g`.
pub(crate) fn is_planar_lr(g: &Graph) -> bool {
    planar_edges(g.n(), g.edges())
}

/// Decides planarity of the simple graph on `n` vertices with the given
/// edges (each listed once).
pub(crate) fn planar_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> bool {
    let mut adj = vec![Vec::new(); n];
    let mut m = 0;
    for (id, (u, v)) in edges.into_iter().enumerate() {
        adj[u].push((v, id));
        adj[v].push((u, id));
        m = id + 1;
    }
    if n > 2 && m > 3 * n - 6 {
        return false;
    }
    let mut st = State {
        n,
        ends: vec![(0, 0); m],
        oriented: vec![false; m],
        adj,
        height: vec![None; n],
        parent_edge: vec![None; n],
        lowpt: vec![0; m],
        lowpt2: vec![0; m],
        nesting_depth: vec![0; m],
        ordered_out: vec![Vec::new(); n],
        refs: vec![None; m],
        lowpt_edge: vec![None; m],
        stack_bottom: vec![0; m],
        stack: Vec::new(),
    };
    let mut roots = Vec::new();
    for v in 0..n {
        if st.height[v].is_none() {
            st.height[v] = Some(0);
            roots.push(v);
            st.orient(v);
        }
    }
    for v in 0..n {
        let mut out: Vec<EdgeId> = st.adj[v]
            .iter()
            .map(|&(_, e)| e)
            .filter(|&e| st.ends[e].0 == v)
            .collect();
        out.sort_by_key(|&e| st.nesting_depth[e]);
        st.ordered_out[v] = out;
    }
    roots.into_iter().all(|r| st.test(r))
}

impl State {
    fn h(&self, v: usize) -> usize {
        self.height[v].expect("visited vertex has a height")
    }

    fn orient(&mut self, root: usize) {
        let mut dfs = vec![root];
        let mut next = vec![0usize; self.n];
        let mut resumed = vec![false; self.lowpt.len()];
        while let Some(v) = dfs.pop() {
            let e = self.parent_edge[v];
            while next[v] < self.adj[v].len() {
                let (w, vw) = self.adj[v][next[v]];
                if !resumed[vw] {
                    if self.oriented[vw] {
                        next[v] += 1;
                        continue;
                    }
                    self.oriented[vw] = true;
                    self.ends[vw] = (v, w);
                    let hv = self.h(v);
                    self.lowpt[vw] = hv;
                    self.lowpt2[vw] = hv;
                    match self.height[w] {
                        None => {
                            self.parent_edge[w] = Some(vw);
                            self.height[w] = Some(hv + 1);
                            dfs.push(v);
                            dfs.push(w);
                            resumed[vw] = true;
                            break;
                        }
                        Some(hw) => self.lowpt[vw] = hw,
                    }
                }
                let hv = self.h(v);
                self.nesting_depth[vw] = 2 * self.lowpt[vw];
                if self.lowpt2[vw] < hv {
                    self.nesting_depth[vw] += 1;
                }
                if let Some(e) = e {
                    if self.lowpt[vw] < self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt[e].min(self.lowpt2[vw]);
                        self.lowpt[e] = self.lowpt[vw];
                    } else if self.lowpt[vw] > self.lowpt[e] {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt[vw]);
                    } else {
                        self.lowpt2[e] = self.lowpt2[e].min(self.lowpt2[vw]);
                    }
                }
                next[v] += 1;
            }
        }
    }

    fn test(&mut self, root: usize) -> bool {
        let mut dfs = vec![root];
        let mut next = vec![0usize; self.n];
        let mut resumed = vec![false; self.lowpt.len()];
        while let Some(v) = dfs.pop() {
            let e = self.parent_edge[v];
            let mut descended = false;
            while next[v] < self.ordered_out[v].len() {
                let ei = self.ordered_out[v][next[v]];
                let w = self.ends[ei].1;
                if !resumed[ei] {
                    self.stack_bottom[ei] = self.stack.len();
                    if self.parent_edge[w] == Some(ei) {
                        dfs.push(v);
                        dfs.push(w);
                        resumed[ei] = true;
                        descended = true;
                        break;
                    }
                    self.lowpt_edge[ei] = Some(ei);
                    self.stack.push(ConflictPair {
                        left: Interval::default(),
                        right: Interval {
                            low: Some(ei),
                            high: Some(ei),
                        },
                    });
                }
                if self.lowpt[ei] < self.h(v) {
                    if ei == self.ordered_out[v][0] {
                        if let Some(e) = e {
                            self.lowpt_edge[e] = self.lowpt_edge[ei];
                        }
                    } else if !self.add_constraints(ei, e.expect("non-root vertex")) {
                        return false;
                    }
                }
                next[v] += 1;
            }
            if !descended {
                if let Some(e) = e {
                    self.remove_back_edges(e);
                }
            }
        }
        true
    }

    fn conflicting(&self, iv: &Interval, b: EdgeId) -> bool {
        match iv.high {
            Some(h) if !iv.is_empty() => self.lowpt[h] > self.lowpt[b],
            _ => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        match (p.left.low, p.right.low) {
            (None, Some(r)) => self.lowpt[r],
            (Some(l), None) => self.lowpt[l],
            (Some(l), Some(r)) => self.lowpt[l].min(self.lowpt[r]),
            (None, None) => unreachable!("empty conflict pair on stack"),
        }
    }

    fn add_constraints(&mut self, ei: EdgeId, e: EdgeId) -> bool {
        let mut p = ConflictPair::default();
        // merge return edges of ei into p.right
        loop {
            let mut q = self.stack.pop().expect("return edges of ei on stack");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let qlow = q.right.low.expect("non-empty interval");
            if self.lowpt[qlow] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.refs[p.right.low.expect("non-empty")] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.refs[qlow] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        // merge conflicting return edges of earlier siblings into p.left
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().expect("checked non-empty");
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(pl) = p.right.low {
                self.refs[pl] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.refs[p.left.low.expect("non-empty")] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: EdgeId) {
        let u = self.ends[e].0;
        let hu = self.h(u);
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != hu {
                break;
            }
            self.stack.pop();
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.ends[h].1 != u {
                    break;
                }
                p.left.high = self.refs[h];
            }
            if p.left.high.is_none() && p.left.low.is_some() {
                self.refs[p.left.low.expect("checked")] = p.right.low;
                p.left.low = None;
            }
            while let Some(h) = p.right.high {
                if self.ends[h].1 != u {
                    break;
                }
                p.right.high = self.refs[h];
            }
            if p.right.high.is_none() && p.right.low.is_some() {
                self.refs[p.right.low.expect("checked")] = p.left.low;
                p.right.low = None;
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < hu {
            let top = self.stack.last().expect("return edge of e is on the stack");
            let (hl, hr) = (top.left.high, top.right.high);
            self.refs[e] = match (hl, hr) {
                (Some(l), None) => Some(l),
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                _ => hr,
            };
        }
    }
}
