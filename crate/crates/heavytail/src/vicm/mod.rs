//! Direction estimation for the varying index coefficient model
//! `y = sum_k z_k f_k(<X, theta_k>) + eps` with unknown link functions.
//!
//! The pipeline: score transform of the design, element-wise truncated
//! cross-moment and second-moment matrices, CLIME precision recovery, and a
//! closed-form soft-threshold estimator of the direction matrix. Estimation
//! quality is measured by a column-normalized, sign-resolved distance.

mod clime;
mod distance;
mod estimator;
mod moments;
mod schedule;
mod score;
pub(crate) mod simplex;

pub use clime::{clime, clime_columns};
pub use distance::{direction_distance, DirectionDistance};
pub use estimator::{estimate_vicm, soft_threshold_matrix, TruncationMode, VicmConfig, VicmFit};
pub use moments::{truncated_covariance, truncated_cross_moment};
pub use schedule::{oracle_schedule, OracleInputs, OracleSchedule};
pub use score::{score, score_component, ScoreKind};

/// One observation of the model: response, index design vector and loading
/// covariates.
#[derive(Debug, Clone, PartialEq)]
pub struct VicmSample {
    pub y: f64,
    pub x: Vec<f64>,
    pub z: Vec<f64>,
}

impl VicmSample {
    pub fn new(y: f64, x: Vec<f64>, z: Vec<f64>) -> Self {
        Self { y, x, z }
    }
}
