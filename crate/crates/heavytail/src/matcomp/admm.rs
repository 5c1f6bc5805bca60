//! ADMM solver for the completion program
//!
//! ```text
//!     min  (d1 d2 / n) sum_jk N_jk theta_jk^2
//!          - 2 (sqrt(d1 d2) / n) sum_jk T_jk theta_jk
//!          + lambda ||Theta||_*
//!     s.t. ||Theta||_max <= R / sqrt(d1 d2)
//! ```
//!
//! Splitting Theta = W gives closed sub-steps: an entry-wise clipped
//! quadratic for Theta and singular-value soft thresholding for W.

use crate::core::matrix::DenseMatrix;
use crate::error::Result;
use crate::matcomp::{svt, McConfig, McSufficientStats};

#[derive(Debug, Clone, PartialEq)]
pub struct AdmmParams {
    /// Penalty parameter of the augmented Lagrangian.
    pub rho: f64,
    pub max_iter: usize,
    pub primal_tol: f64,
    pub dual_tol: f64,
    /// Residual balancing: double/halve rho when one residual exceeds the
    /// other tenfold. Off by default.
    pub adapt_rho: bool,
    /// Record the objective value at every iteration (costs one extra SVD
    /// per iteration; diagnostics only).
    pub track_objective: bool,
}

impl Default for AdmmParams {
    fn default() -> Self {
        Self {
            rho: 1.0,
            max_iter: 500,
            primal_tol: 1e-7,
            dual_tol: 1e-7,
            adapt_rho: false,
            track_objective: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct McSolution {
    /// The low-rank iterate W; the estimator returned to callers.
    pub theta: DenseMatrix,
    /// The box-feasible iterate; satisfies the max-norm constraint exactly.
    pub box_iterate: DenseMatrix,
    pub converged: bool,
    pub iterations: usize,
    pub primal_residual: f64,
    pub dual_residual: f64,
    /// Objective value at the returned iterate.
    pub objective: f64,
    /// Per-iteration objective at the box iterate, when tracking is on.
    pub objective_trace: Vec<f64>,
    /// Per-iteration combined step norm sqrt(|dW|_F^2 + |dU|_F^2), when
    /// tracking is on. For fixed rho this sequence is non-increasing (the
    /// splitting iteration is firmly nonexpansive); the raw objective is not
    /// a descent quantity and may rise transiently.
    pub step_trace: Vec<f64>,
    /// Final penalty parameter (differs from the input under adaptation).
    pub rho: f64,
}

/// Quadratic part of the objective at `theta`.
fn quad_objective(stats: &McSufficientStats, theta: &DenseMatrix) -> f64 {
    let n = stats.n.max(1) as f64;
    let d1d2 = (stats.d1() * stats.d2()) as f64;
    let a_scale = d1d2 / n;
    let b_scale = d1d2.sqrt() / n;
    let mut val = 0.0;
    for (idx, t) in theta.entries().iter().enumerate() {
        let cnt = stats.counts.entries()[idx];
        let sum = stats.truncated_sums.entries()[idx];
        val += a_scale * cnt * t * t - 2.0 * b_scale * sum * t;
    }
    val
}

/// Full objective (quadratic + nuclear penalty) at `theta`.
pub fn objective(stats: &McSufficientStats, theta: &DenseMatrix, lambda: f64) -> Result<f64> {
    let s = crate::core::linalg::svd(theta)?;
    Ok(quad_objective(stats, theta) + lambda * s.singular_values.iter().sum::<f64>())
}

/// Runs ADMM from the zero start. Returns the W iterate with convergence
/// diagnostics; non-convergence at `max_iter` is reported in the flags, not
/// as an error.
pub fn solve_mc(stats: &McSufficientStats, cfg: &McConfig, lambda: f64) -> Result<McSolution> {
    cfg.validate()?;
    let d1 = stats.d1();
    let d2 = stats.d2();
    let n = stats.n.max(1) as f64;
    let d1d2 = (d1 * d2) as f64;
    let radius = cfg.box_radius();
    let p = &cfg.admm;

    // Entry-wise quadratic coefficients: a_jk theta^2 - 2 b_jk theta.
    let a_scale = d1d2 / n;
    let b_scale = d1d2.sqrt() / n;

    let mut theta = DenseMatrix::zeros(d1, d2);
    let mut w = DenseMatrix::zeros(d1, d2);
    let mut u = DenseMatrix::zeros(d1, d2);
    let mut rho = p.rho;

    let mut converged = false;
    let mut iterations = 0;
    let mut primal_residual = f64::INFINITY;
    let mut dual_residual = f64::INFINITY;
    let mut objective_trace = Vec::new();
    let mut step_trace = Vec::new();

    for iter in 0..p.max_iter {
        iterations = iter + 1;

        // Theta step: per-entry quadratic with box projection.
        for idx in 0..theta.entries().len() {
            let a = a_scale * stats.counts.entries()[idx];
            let b = b_scale * stats.truncated_sums.entries()[idx];
            let v = w.entries()[idx] - u.entries()[idx];
            let unconstrained = (2.0 * b + rho * v) / (2.0 * a + rho);
            theta.entries_mut()[idx] = unconstrained.clamp(-radius, radius);
        }

        // W step: proximal map of the nuclear norm at Theta + U.
        let w_prev = w;
        w = svt(&theta.add(&u), lambda / rho)?;

        // Dual update.
        let diff = theta.sub(&w);
        u = u.add(&diff);

        primal_residual = diff.frobenius_norm();
        let w_step = w.sub(&w_prev).frobenius_norm();
        dual_residual = rho * w_step;

        if p.track_objective {
            objective_trace.push(objective(stats, &theta, lambda)?);
            // dU = Theta - W (the dual update), dW from the W step.
            step_trace.push((w_step * w_step + primal_residual * primal_residual).sqrt());
        }

        if primal_residual <= p.primal_tol * theta.frobenius_norm().max(1.0)
            && dual_residual <= p.dual_tol
        {
            converged = true;
            break;
        }

        if p.adapt_rho {
            // Scaled dual variable must shrink/grow inversely with rho.
            if primal_residual > 10.0 * dual_residual {
                rho *= 2.0;
                u = u.scale(0.5);
            } else if dual_residual > 10.0 * primal_residual {
                rho *= 0.5;
                u = u.scale(2.0);
            }
        }
    }

    let obj = objective(stats, &w, lambda)?;
    Ok(McSolution {
        theta: w,
        box_iterate: theta,
        converged,
        iterations,
        primal_residual,
        dual_residual,
        objective: obj,
        objective_trace,
        step_trace,
        rho,
    })
}
