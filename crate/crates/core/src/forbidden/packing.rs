//! Exact maximum set packing, capped, for the cycle families met by
//! bouquet detection.
//!
//! Candidates are split into conflict components which are solved
//! independently. Inside a component the most frequent element `e` drives
//! the branching: either no chosen set contains `e`, or exactly one does.
//! Every packing in the second branch uses only sets avoiding `e` besides
//! the one containing it, so `1 + f(C - e)` bounds it and the search stops
//! as soon as that bound is met.

use std::collections::HashMap;

use crate::graph::iter_bits;

#[derive(Clone)]
struct Entry {
    value: usize,
    /// `true` when `value` is the exact optimum rather than a cap hit.
    exact: bool,
    chosen: Vec<usize>,
}

pub(crate) struct Packer<'a> {
    sets: &'a [Vec<u64>],
    universe: usize,
    memo: HashMap<Vec<u64>, Entry>,
}

fn disjoint(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & y == 0)
}

fn has(set: &[u64], e: usize) -> bool {
    (set[e / 64] >> (e % 64)) & 1 == 1
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl<'a> Packer<'a> {
    /// `sets[i]` is a bitset over elements `0..universe`.
    pub(crate) fn new(sets: &'a [Vec<u64>], universe: usize) -> Self {
        Packer {
            sets,
            universe,
            memo: HashMap::new(),
        }
    }

    /// Largest number of pairwise disjoint sets, capped at `cap`, with the
    /// indices of one such family.
    pub(crate) fn solve_all(&mut self, cap: usize) -> (usize, Vec<usize>) {
        let all: Vec<usize> = (0..self.sets.len()).collect();
        self.solve(&all, cap)
    }

    fn key(&self, cands: &[usize]) -> Vec<u64> {
        let mut k = vec![0u64; self.sets.len().div_ceil(64)];
        for &c in cands {
            k[c / 64] |= 1 << (c % 64);
        }
        k
    }

    fn components(&self, cands: &[usize]) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..cands.len()).collect();
        let mut owner = vec![usize::MAX; self.universe];
        for (i, &c) in cands.iter().enumerate() {
            for e in iter_bits(&self.sets[c]) {
                if owner[e] == usize::MAX {
                    owner[e] = i;
                } else {
                    let a = find(&mut parent, owner[e]);
                    let b = find(&mut parent, i);
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; cands.len()];
        for i in 0..cands.len() {
            let r = find(&mut parent, i);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(cands[i]);
        }
        groups
    }

    fn solve(&mut self, cands: &[usize], cap: usize) -> (usize, Vec<usize>) {
        if cap == 0 || cands.is_empty() {
            return (0, Vec::new());
        }
        let groups = self.components(cands);
        if groups.len() == 1 {
            return self.solve_component(cands, cap);
        }
        let mut total = 0;
        let mut chosen = Vec::new();
        for g in groups {
            let (v, c) = self.solve_component(&g, cap - total);
            total += v;
            chosen.extend(c);
            if total >= cap {
                break;
            }
        }
        (total, chosen)
    }

    fn solve_component(&mut self, cands: &[usize], cap: usize) -> (usize, Vec<usize>) {
        if cands.len() == 1 {
            return (1, cands.to_vec());
        }
        let key = self.key(cands);
        if let Some(hit) = self.memo.get(&key) {
            if hit.exact || hit.value >= cap {
                let v = hit.value.min(cap);
                return (v, hit.chosen[..v].to_vec());
            }
        }
        let mut freq = vec![0usize; self.universe];
        for &c in cands {
            for e in iter_bits(&self.sets[c]) {
                freq[e] += 1;
            }
        }
        let e = (0..self.universe)
            .max_by_key(|&x| (freq[x], std::cmp::Reverse(x)))
            .expect("non-empty universe");

        let (without, with): (Vec<usize>, Vec<usize>) =
            cands.iter().partition(|&&c| !has(&self.sets[c], e));
        let (mut best, mut best_chosen) = self.solve(&without, cap);
        if best < cap {
            let bound = best + 1;
            for &s in &with {
                let rest: Vec<usize> = without
                    .iter()
                    .copied()
                    .filter(|&c| disjoint(&self.sets[c], &self.sets[s]))
                    .collect();
                let (v, c) = self.solve(&rest, best.min(cap - 1));
                if v + 1 > best {
                    best = v + 1;
                    best_chosen = c;
                    best_chosen.push(s);
                }
                if best >= bound {
                    break;
                }
            }
        }
        let value = best.min(cap);
        best_chosen.truncate(value);
        self.memo.insert(
            key,
            Entry {
                value,
                exact: value < cap,
                chosen: best_chosen.clone(),
            },
        );
        (value, best_chosen)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(universe: usize, xs: &[usize]) -> Vec<u64> {
        let mut b = vec![0u64; universe.div_ceil(64)];
        for &x in xs {
            b[x / 64] |= 1 << (x % 64);
        }
        b
    }

    fn brute(sets: &[Vec<u64>]) -> usize {
        let k = sets.len();
        let mut best = 0;
        for mask in 0u32..(1 << k) {
            let idx: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
            let ok = idx
                .iter()
                .enumerate()
                .all(|(a, &i)| idx[a + 1..].iter().all(|&j| disjoint(&sets[i], &sets[j])));
            if ok {
                best = best.max(idx.len());
            }
        }
        best
    }

    #[test]
    fn matches_brute_force_on_pseudo_random_families() {
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..200 {
            let universe = 9;
            let k = 1 + (state % 11) as usize;
            let mut sets = Vec::new();
            for _ in 0..k {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                let xs: Vec<usize> = (0..universe).filter(|i| state >> (i * 3) & 7 < 2).collect();
                if xs.is_empty() {
                    sets.push(bits(universe, &[(state % 9) as usize]));
                } else {
                    sets.push(bits(universe, &xs));
                }
            }
            let want = brute(&sets);
            for cap in 1..=k {
                let (got, chosen) = Packer::new(&sets, universe).solve_all(cap);
                assert_eq!(got, want.min(cap));
                assert_eq!(chosen.len(), got);
                for (a, &i) in chosen.iter().enumerate() {
                    for &j in &chosen[a + 1..] {
                        assert!(disjoint(&sets[i], &sets[j]));
                    }
                }
            }
        }
    }
}
