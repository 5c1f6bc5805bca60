//! The element-wise truncated direction estimator.
//!
//! Minimizes `||Theta||_F^2 - 2 <M Omega, Theta> + lambda ||Theta||_{1,1}`
//! where M is the (optionally truncated) cross-moment matrix and Omega the
//! CLIME precision estimate. The objective separates per entry, so the exact
//! minimizer is the entry-wise soft threshold of `A = M Omega` at lambda / 2.

use crate::core::matrix::DenseMatrix;
use crate::error::{Error, Result};
use crate::transforms::{calibrate_vicm_levels, default_targets, CalibratedLevels};
use crate::vicm::clime::clime;
use crate::vicm::moments::{
    raw_covariance, raw_cross_moment, truncated_covariance, truncated_cross_moment,
};
use crate::vicm::score::ScoreKind;
use crate::vicm::VicmSample;

/// Whether the pipeline truncates (robust) or uses raw moments (standard).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TruncationMode {
    /// Data-driven levels from the adaptive calibration equations.
    Calibrated,
    /// No truncation anywhere; the comparison baseline.
    None,
}

#[derive(Debug, Clone)]
pub struct VicmConfig {
    pub d1: usize,
    pub d2: usize,
    pub score: ScoreKind,
    /// Infinity-norm slack of the CLIME constraint.
    pub clime_gamma: f64,
    /// l1 penalty weight of the direction estimator.
    pub lambda: f64,
    pub truncation: TruncationMode,
    /// Multiplier in the calibration targets `factor * log(d1 d2)` and
    /// `factor * log d2`.
    pub calibration_factor: f64,
    /// Explicit calibration targets, overriding `calibration_factor`.
    pub targets: Option<(f64, f64)>,
    /// Optional l1-operator-norm bound on the true precision matrix; carried
    /// as metadata for schedule calculators, not used by the estimator.
    pub omega_l1_bound: Option<f64>,
}

impl VicmConfig {
    pub fn new(d1: usize, d2: usize, score: ScoreKind, clime_gamma: f64, lambda: f64) -> Self {
        Self {
            d1,
            d2,
            score,
            clime_gamma,
            lambda,
            truncation: TruncationMode::Calibrated,
            calibration_factor: 10.0,
            targets: None,
            omega_l1_bound: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.clime_gamma <= 0.0 || !self.clime_gamma.is_finite() {
            return Err(Error::Parameter {
                name: "clime_gamma",
                reason: format!("must be positive, got {}", self.clime_gamma),
            });
        }
        if self.lambda < 0.0 || !self.lambda.is_finite() {
            return Err(Error::Parameter {
                name: "lambda",
                reason: format!("must be non-negative, got {}", self.lambda),
            });
        }
        Ok(())
    }
}

/// Everything the pipeline produced on the way to the direction estimate.
#[derive(Debug, Clone)]
pub struct VicmFit {
    pub theta_hat: DenseMatrix,
    pub omega_hat: DenseMatrix,
    pub moment_matrix: DenseMatrix,
    /// The matrix `moment_matrix * omega_hat` the threshold acts on.
    pub assembled: DenseMatrix,
    pub levels: Option<CalibratedLevels>,
}

/// Entry-wise soft threshold `sign(a) * max(|a| - threshold, 0)`.
pub fn soft_threshold_matrix(m: &DenseMatrix, threshold: f64) -> DenseMatrix {
    assert!(threshold >= 0.0, "threshold must be non-negative");
    DenseMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        let a = m[(i, j)];
        (a.abs() - threshold).max(0.0).copysign(a)
    })
}

/// Runs the complete pipeline: calibration (robust mode), moment matrices,
/// CLIME, and the closed-form soft-threshold minimizer.
pub fn estimate_vicm(samples: &[VicmSample], cfg: &VicmConfig) -> Result<VicmFit> {
    cfg.validate()?;
    if samples.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: samples.len(),
        });
    }

    let (moment_matrix, sigma_hat, levels) = match cfg.truncation {
        TruncationMode::Calibrated => {
            let (t1, t2) = cfg
                .targets
                .unwrap_or_else(|| default_targets(cfg.d1, cfg.d2, cfg.calibration_factor));
            let levels = calibrate_vicm_levels(samples, cfg.score, t1, t2)?;
            let m = truncated_cross_moment(samples, &levels.gamma1, cfg.score)?;
            let s = truncated_covariance(samples, &levels.gamma2)?;
            (m, s, Some(levels))
        }
        TruncationMode::None => {
            let m = raw_cross_moment(samples, cfg.score, cfg.d1, cfg.d2)?;
            let s = raw_covariance(samples, cfg.d2)?;
            (m, s, None)
        }
    };

    let omega_hat = clime(&sigma_hat, cfg.clime_gamma)?;
    let assembled = moment_matrix.matmul(&omega_hat);
    let theta_hat = soft_threshold_matrix(&assembled, cfg.lambda / 2.0);

    Ok(VicmFit {
        theta_hat,
        omega_hat,
        moment_matrix,
        assembled,
        levels,
    })
}
