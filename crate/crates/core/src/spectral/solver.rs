//! Shifted power iteration on a CSR adjacency matrix.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Compressed sparse rows of one connected component, in local indices.
pub(crate) struct Csr {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Csr {
    pub(crate) fn of_component(g: &Graph, verts: &[usize]) -> Csr {
        let mut local = vec![usize::MAX; g.n()];
        for (i, &v) in verts.iter().enumerate() {
            local[v] = i;
        }
        let mut offsets = Vec::with_capacity(verts.len() + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for &v in verts {
            targets.extend(g.neighbors(v).map(|w| local[w]));
            offsets.push(targets.len());
        }
        Csr { offsets, targets }
    }

    pub(crate) fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    fn degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    /// `y = A x`, each row summed with Neumaier compensation.
    pub(crate) fn mul(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            let mut s = 0.0f64;
            let mut c = 0.0f64;
            for &j in &self.targets[self.offsets[i]..self.offsets[i + 1]] {
                let v = x[j];
                let t = s + v;
                c += if s.abs() >= v.abs() { (s - t) + v } else { (v - t) + s };
                s = t;
            }
            *yi = s + c;
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) struct Solution {
    pub rho: f64,
    pub residual: f64,
    pub iterations: usize,
    pub vector: Vec<f64>,
}

/// Iterations without a new best residual after which the solver concludes
/// it has hit the rounding floor.
const STAGNATION_WINDOW: usize = 5_000;
const SHIFT_EVERY: usize = 16;

/// Perron root and unit Perron vector of one connected component.
pub(crate) fn perron(a: &Csr, tol: f64, max_iter: usize) -> Result<Solution> {
    let n = a.len();
    if n == 1 {
        return Ok(Solution {
            rho: 0.0,
            residual: 0.0,
            iterations: 0,
            vector: vec![1.0],
        });
    }
    let mut x: Vec<f64> = (0..n).map(|i| a.degree(i) as f64).collect();
    let s = norm(&x);
    x.iter_mut().for_each(|v| *v /= s);
    let mut y = vec![0.0; n];
    let mut shift = 0.0;
    let mut best = (f64::INFINITY, 0.0, x.clone());
    let mut last_gain = 0;
    for it in 0..=max_iter {
        a.mul(&x, &mut y);
        let theta = dot(&x, &y);
        let r = y
            .iter()
            .zip(&x)
            .map(|(yi, xi)| (yi - theta * xi).powi(2))
            .sum::<f64>()
            .sqrt();
        if r < best.0 {
            best = (r, theta, x.clone());
            last_gain = it;
        }
        if r <= tol {
            return Ok(Solution {
                rho: theta,
                residual: r,
                iterations: it,
                vector: x,
            });
        }
        if it == max_iter || it - last_gain > STAGNATION_WINDOW {
            return Err(Error::Convergence {
                estimate: best.1,
                residual: best.0,
                iterations: it,
            });
        }
        if it % SHIFT_EVERY == 0 {
            // theta is a lower bound for rho, so A + (theta/2) I keeps the
            // negative end of the spectrum below rho in modulus
            shift = theta / 2.0;
        }
        for (yi, xi) in y.iter_mut().zip(&x) {
            *yi += shift * xi;
        }
        let s = norm(&y);
        for (xi, yi) in x.iter_mut().zip(&y) {
            *xi = yi / s;
        }
    }
    unreachable!("loop returns by max_iter")
}
