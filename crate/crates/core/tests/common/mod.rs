//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spexlab::Graph;

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect()
}

/// Does `g` have a minor isomorphic to the graph on `k` vertices with the
/// given edges? Tries every assignment of vertices to `k` branch sets or
/// deletion.
pub fn has_minor(g: &Graph, k: usize, target: &[(usize, usize)]) -> bool {
    let n = g.n();
    if n < k || g.edge_count() < target.len() {
        return false;
    }
    let adj = adjacency(g);
    let mut label = vec![0usize; n];
    loop {
        if minor_model(&adj, &label, k, target) {
            return true;
        }
        // odometer over labels 0..=k, 0 meaning deleted
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            label[i] += 1;
            if label[i] <= k {
                break;
            }
            label[i] = 0;
            i += 1;
        }
    }
}

fn minor_model(adj: &[Vec<bool>], label: &[usize], k: usize, target: &[(usize, usize)]) -> bool {
    let n = adj.len();
    let sets: Vec<Vec<usize>> = (1..=k)
        .map(|b| (0..n).filter(|&v| label[v] == b).collect())
        .collect();
    if sets.iter().any(Vec::is_empty) {
        return false;
    }
    // cheap adjacency check first
    for &(a, b) in target {
        if !sets[a].iter().any(|&u| sets[b].iter().any(|&v| adj[u][v])) {
            return false;
        }
    }
    sets.iter().all(|s| {
        let mut seen = vec![s[0]];
        let mut i = 0;
        while i < seen.len() {
            let u = seen[i];
            for &v in s {
                if adj[u][v] && !seen.contains(&v) {
                    seen.push(v);
                }
            }
            i += 1;
        }
        seen.len() == s.len()
    })
}

pub fn complete_edges(k: usize) -> Vec<(usize, usize)> {
    (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect()
}

pub fn bipartite_edges(a: usize, b: usize) -> Vec<(usize, usize)> {
    (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y))).collect()
}

/// Planar iff no K5 and no K3,3 minor.
pub fn planar_oracle(g: &Graph) -> bool {
    !has_minor(g, 5, &complete_edges(5)) && !has_minor(g, 6, &bipartite_edges(3, 3))
}

/// Outerplanar iff no K4 and no K2,3 minor.
pub fn outerplanar_oracle(g: &Graph) -> bool {
    !has_minor(g, 4, &complete_edges(4)) && !has_minor(g, 5, &bipartite_edges(2, 3))
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Does the vertex set `s` carry a Hamiltonian cycle of `g`?
fn hamiltonian(adj: &[Vec<bool>], s: &[usize]) -> bool {
    let l = s.len();
    let mut rest: Vec<usize> = s[1..].to_vec();
    loop {
        let mut ok = adj[s[0]][rest[0]] && adj[rest[l - 2]][s[0]];
        for w in rest.windows(2) {
            ok &= adj[w[0]][w[1]];
        }
        if ok {
            return true;
        }
        if !next_permutation(&mut rest) {
            return false;
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
        .collect()
}

pub fn has_cycle_oracle(g: &Graph, l: usize) -> bool {
    let adj = adjacency(g);
    subsets(g.n(), l).iter().any(|s| hamiltonian(&adj, s))
}

/// Largest number of `l`-cycles through `v` pairwise sharing only `v`.
pub fn hub_bouquet_oracle(g: &Graph, v: usize, l: usize) -> usize {
    let adj = adjacency(g);
    let others: Vec<usize> = (0..g.n()).filter(|&u| u != v).collect();
    let sets: Vec<u32> = subsets(others.len(), l - 1)
        .into_iter()
        .map(|s| {
            let mut full: Vec<usize> = vec![v];
            full.extend(s.iter().map(|&i| others[i]));
            full
        })
        .filter(|s| hamiltonian(&adj, s))
        .map(|s| s[1..].iter().fold(0u32, |m, &u| m | 1 << u))
        .collect();
    fn best(sets: &[u32], used: u32) -> usize {
        match sets.split_first() {
            None => 0,
            Some((&s, rest)) => {
                let skip = best(rest, used);
                if s & used == 0 {
                    skip.max(1 + best(rest, used | s))
                } else {
                    skip
                }
            }
        }
    }
    best(&sets, 0)
}

pub fn matching_oracle(g: &Graph) -> usize {
    fn go(adj: &[Vec<bool>], used: &mut Vec<bool>, from: usize) -> usize {
        let n = adj.len();
        let Some(u) = (from..n).find(|&u| !used[u]) else {
            return 0;
        };
        used[u] = true;
        let mut best = go(adj, used, u + 1);
        for v in u + 1..n {
            if adj[u][v] && !used[v] {
                used[v] = true;
                best = best.max(1 + go(adj, used, u + 1));
                used[v] = false;
            }
        }
        used[u] = false;
        best
    }
    let adj = adjacency(g);
    go(&adj, &mut vec![false; g.n()], 0)
}

/// Largest adjacency eigenvalue from a dense symmetric eigensolver.
pub fn dense_rho(g: &Graph) -> f64 {
    let n = g.n();
    let m = nalgebra::DMatrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 });
    m.symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max)
}

fn edge_index(n: usize) -> Vec<(usize, usize)> {
    complete_edges(n)
}

/// Smallest edge bitmask over all relabelings.
fn min_mask(n: usize, mask: u32, index: &[(usize, usize)], pos: &[Vec<usize>]) -> u32 {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u32::MAX;
    loop {
        let mut m = 0u32;
        for (i, &(u, v)) in index.iter().enumerate() {
            if mask >> i & 1 == 1 {
                m |= 1 << pos[perm[u]][perm[v]];
            }
        }
        best = best.min(m);
        if !next_permutation(&mut perm) {
            return best;
        }
    }
}

/// Every labeled graph on `n <= 6` vertices passing `keep`, reduced to one
/// representative per isomorphism class by minimizing the edge bitmask over
/// all permutations.
pub fn naive_classes(n: usize, keep: impl Fn(&Graph) -> bool) -> Vec<Graph> {
    assert!(n <= 6);
    let index = edge_index(n);
    let mut pos = vec![vec![0usize; n]; n];
    for (i, &(u, v)) in index.iter().enumerate() {
        pos[u][v] = i;
        pos[v][u] = i;
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << index.len() {
        let canon = min_mask(n, mask, &index, &pos);
        if canon != mask || !seen.insert(canon) {
            continue;
        }
        let edges: Vec<(usize, usize)> = index
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        if keep(&g) {
            out.push(g);
        }
    }
    out
}
