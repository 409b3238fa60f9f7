//! Adjacency spectral radius with a residual certificate, and the
//! inequality checks used by the verification suites.
//!
//! For a symmetric matrix and a unit vector `x` with Rayleigh quotient
//! `θ`, some eigenvalue lies within `‖Ax − θx‖₂` of `θ`. For a nonnegative
//! `x` close to the Perron vector that eigenvalue is the spectral radius,
//! and `θ` itself never exceeds it.

mod bounds;
mod solver;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

pub use bounds::{
    check_eigenvector_box, check_lower_bound_claim11, check_path_boxes, check_shu_bound,
    BoundReport, HubStyle, NUMERIC_TOLERANCE,
};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_MAX_ITERATIONS: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralEstimate {
    pub rho: f64,
    /// `‖A x − rho x‖₂` for the unit vector `perron`.
    pub residual: f64,
    pub iterations: usize,
    /// Unit two-norm; zero outside the component attaining `rho`.
    pub perron: Vec<f64>,
    /// `perron` rescaled so its largest entry is exactly 1.
    pub perron_max1: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: DEFAULT_TOLERANCE,
            max_iter: DEFAULT_MAX_ITERATIONS,
        }
    }
}

pub fn spectral_radius(g: &Graph, tol: f64) -> Result<SpectralEstimate> {
    spectral_radius_with(
        g,
        SolverOptions {
            tol,
            ..SolverOptions::default()
        },
    )
}

pub fn spectral_radius_with(g: &Graph, opts: SolverOptions) -> Result<SpectralEstimate> {
    if !(opts.tol > 0.0) {
        return Err(invalid(format!("tolerance must be positive, got {}", opts.tol)));
    }
    if g.n() == 0 {
        return Err(invalid("spectral radius of the empty graph is undefined"));
    }
    let mut best: Option<(Vec<usize>, solver::Solution)> = None;
    let mut iterations = 0;
    for comp in g.components() {
        let csr = solver::Csr::of_component(g, &comp);
        let sol = solver::perron(&csr, opts.tol, opts.max_iter)?;
        iterations += sol.iterations;
        if best.as_ref().is_none_or(|(_, b)| sol.rho > b.rho) {
            best = Some((comp, sol));
        }
    }
    let (comp, sol) = best.expect("nonempty graph has a component");
    let mut perron = vec![0.0; g.n()];
    for (i, &v) in comp.iter().enumerate() {
        perron[v] = sol.vector[i];
    }
    let top = perron.iter().copied().fold(0.0f64, f64::max);
    let perron_max1 = perron
        .iter()
        .map(|&x| if x == top { 1.0 } else { x / top })
        .collect();
    Ok(SpectralEstimate {
        rho: sol.rho,
        residual: sol.residual,
        iterations,
        perron,
        perron_max1,
    })
}

pub fn rayleigh_quotient(g: &Graph, x: &[f64]) -> Result<f64> {
    if x.len() != g.n() {
        return Err(invalid(format!(
            "vector of length {} for a graph on {} vertices",
            x.len(),
            g.n()
        )));
    }
    let xx: f64 = x.iter().map(|v| v * v).sum();
    if xx == 0.0 {
        return Err(invalid("Rayleigh quotient of the zero vector"));
    }
    let xax: f64 = g.edges().map(|(u, v)| 2.0 * x[u] * x[v]).sum();
    Ok(xax / xx)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Greater,
    Less,
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub verdict: Verdict,
    pub rho_a: f64,
    pub rho_b: f64,
    /// `rho_a − rho_b`.
    pub gap: f64,
    pub residual_sum: f64,
}

/// Best certified estimate at tolerance `tol`; a stalled solve still yields
/// its best residual.
fn certified(g: &Graph, tol: f64) -> Result<(f64, f64)> {
    match spectral_radius(g, tol) {
        Ok(e) => Ok((e.rho, e.residual)),
        Err(Error::Convergence {
            estimate, residual, ..
        }) => Ok((estimate, residual)),
        Err(e) => Err(e),
    }
}

/// Strict comparison of `ρ(a)` with `ρ(b)`. A side is declared larger only
/// when the gap exceeds the sum of both residuals. Starting from `tol`, the
/// solves are tightened tenfold at a time until the gap is resolved or the
/// residuals reach the rounding floor, in which case the verdict is
/// [`Verdict::Indeterminate`].
pub fn compare_spectral_radii(a: &Graph, b: &Graph, tol: f64) -> Result<Comparison> {
    if !(tol > 0.0) {
        return Err(invalid(format!("tolerance must be positive, got {tol}")));
    }
    let mut t = tol;
    loop {
        let (ra, ea) = certified(a, t)?;
        let (rb, eb) = certified(b, t)?;
        let gap = ra - rb;
        let sum = ea + eb;
        let verdict = if gap > sum {
            Verdict::Greater
        } else if -gap > sum {
            Verdict::Less
        } else {
            Verdict::Indeterminate
        };
        let floor = 1e-15 * ra.max(rb).max(1.0);
        let stalled = ea > t || eb > t;
        if verdict != Verdict::Indeterminate || t <= floor || stalled {
            return Ok(Comparison {
                verdict,
                rho_a: ra,
                rho_b: rb,
                gap,
                residual_sum: sum,
            });
        }
        t /= 10.0;
    }
}
