//! Truncated-response matrix completion.
//!
//! Observations are single entries of an unknown low-rank matrix at uniform
//! random positions, `y = <X, Theta*> + eps` with `X = sqrt(d1 d2) e_j e_k^T`.
//! Clipping the responses at a moment-adapted level and penalizing the
//! nuclear norm yields an estimator whose error rate degrades gracefully as
//! the noise loses moments; the ADMM solver below handles the resulting
//! box-constrained quadratic plus nuclear-norm program.

mod admm;
mod schedule;

pub use admm::{objective, solve_mc, AdmmParams, McSolution};
pub use schedule::{tuning_schedule, TuningSchedule};

use crate::core::matrix::DenseMatrix;
use crate::error::{Error, Result};
use crate::transforms::psi;

/// One matrix-completion observation. The design `sqrt(d1 d2) e_row e_col^T`
/// is stored implicitly by its cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McSample {
    pub row: usize,
    pub col: usize,
    pub response: f64,
}

/// Per-cell observation counts and truncated response sums; everything the
/// solver needs from the data.
#[derive(Debug, Clone)]
pub struct McSufficientStats {
    /// N_jk = number of observations of cell (j, k).
    pub counts: DenseMatrix,
    /// T_jk = sum of psi_tau(y_i) over observations of cell (j, k).
    pub truncated_sums: DenseMatrix,
    pub n: usize,
    pub tau: f64,
}

impl McSufficientStats {
    pub fn d1(&self) -> usize {
        self.counts.rows()
    }

    pub fn d2(&self) -> usize {
        self.counts.cols()
    }
}

/// Tuning inputs of the completion estimator.
#[derive(Debug, Clone)]
pub struct McConfig {
    pub d1: usize,
    pub d2: usize,
    /// Rank bound r of the target (enters the schedules only through docs).
    pub rank_bound: usize,
    /// Max-norm budget: the solver constrains |Theta_jk| <= R / sqrt(d1 d2).
    pub max_norm_budget: f64,
    /// Moment index alpha in (1, 2] of the noise.
    pub moment_index: f64,
    /// Confidence parameter delta > 1.
    pub confidence: f64,
    /// Scale C1 multiplying the truncation schedule.
    pub tau_scale: f64,
    /// Scale C2 multiplying the penalty schedule.
    pub lambda_scale: f64,
    pub admm: AdmmParams,
}

impl McConfig {
    pub fn new(d1: usize, d2: usize) -> Self {
        Self {
            d1,
            d2,
            rank_bound: 5,
            max_norm_budget: 1.0,
            moment_index: 2.0,
            confidence: 2.0,
            tau_scale: 1.0,
            lambda_scale: 1.0,
            admm: AdmmParams::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.moment_index <= 1.0 || self.moment_index.is_nan() {
            return Err(Error::Parameter {
                name: "moment_index",
                reason: format!("alpha must exceed 1, got {}", self.moment_index),
            });
        }
        if self.confidence <= 1.0 || self.confidence.is_nan() {
            return Err(Error::Parameter {
                name: "confidence",
                reason: format!("delta must exceed 1, got {}", self.confidence),
            });
        }
        if self.tau_scale <= 0.0 || self.lambda_scale <= 0.0 {
            return Err(Error::Parameter {
                name: "scales",
                reason: "tau_scale and lambda_scale must be positive".into(),
            });
        }
        if self.max_norm_budget < 0.0 {
            return Err(Error::Parameter {
                name: "max_norm_budget",
                reason: "R must be non-negative".into(),
            });
        }
        Ok(())
    }

    /// Entry-wise box radius R / sqrt(d1 d2).
    pub fn box_radius(&self) -> f64 {
        self.max_norm_budget / ((self.d1 * self.d2) as f64).sqrt()
    }
}

/// Single pass over the samples accumulating counts and truncated sums.
/// `tau = f64::INFINITY` leaves responses unclipped (the standard baseline).
pub fn accumulate_stats(
    samples: &[McSample],
    d1: usize,
    d2: usize,
    tau: f64,
) -> Result<McSufficientStats> {
    if tau <= 0.0 {
        return Err(Error::Parameter {
            name: "tau",
            reason: format!("truncation level must be positive, got {tau}"),
        });
    }
    let mut counts = DenseMatrix::zeros(d1, d2);
    let mut sums = DenseMatrix::zeros(d1, d2);
    for (pos, s) in samples.iter().enumerate() {
        if s.row >= d1 || s.col >= d2 {
            return Err(Error::Data {
                position: pos,
                reason: format!("cell ({}, {}) outside {d1}x{d2}", s.row, s.col),
            });
        }
        counts[(s.row, s.col)] += 1.0;
        sums[(s.row, s.col)] += if tau.is_finite() {
            psi(s.response, tau)
        } else {
            s.response
        };
    }
    Ok(McSufficientStats {
        counts,
        truncated_sums: sums,
        n: samples.len(),
        tau,
    })
}

/// Singular value soft thresholding: the proximal operator of
/// `threshold * ||.||_*`.
pub fn svt(m: &DenseMatrix, threshold: f64) -> Result<DenseMatrix> {
    if threshold < 0.0 {
        return Err(Error::Parameter {
            name: "threshold",
            reason: format!("must be non-negative, got {threshold}"),
        });
    }
    let s = crate::core::linalg::svd(m)?;
    let (rows, k) = s.u.shape();
    let cols = s.vt.cols();
    let mut out = DenseMatrix::zeros(rows, cols);
    for r in 0..k {
        let sv = s.singular_values[r] - threshold;
        if sv <= 0.0 {
            // Sorted non-increasing: everything after is below threshold too.
            break;
        }
        for i in 0..rows {
            let us = s.u[(i, r)] * sv;
            for j in 0..cols {
                out[(i, j)] += us * s.vt[(r, j)];
            }
        }
    }
    Ok(out)
}
