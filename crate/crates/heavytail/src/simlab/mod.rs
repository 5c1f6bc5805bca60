//! Synthetic-data generators and seeded experiment drivers for the rate
//! studies, with log-log slope fitting over replicate means.

pub mod generate;
pub mod links;
mod mc_experiment;
mod slope;
pub mod targets;
mod vicm_experiment;

use serde::{Deserialize, Serialize};

pub use generate::{
    ar1_matrix, generate_mc_data, generate_vicm_data, CovariateDist, LoadingDist, NoiseDist,
    VicmDesign,
};
pub use links::LinkFn;
pub use mc_experiment::{run_mc_experiment, McExperimentOutput, McNoisePlan, McPlan};
pub use slope::{fit_loglog_slope, fit_points, group_means, MeanPoint, SlopeFit};
pub use targets::{make_low_rank_target, make_vicm_target};
pub use vicm_experiment::{run_vicm_experiment, VicmExperimentOutput, VicmPlan};

/// Which pipeline produced a record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimatorTag {
    Robust = 0,
    Standard = 1,
}

impl std::fmt::Display for EstimatorTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EstimatorTag::Robust => write!(f, "robust"),
            EstimatorTag::Standard => write!(f, "standard"),
        }
    }
}

impl std::str::FromStr for EstimatorTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "robust" => Ok(EstimatorTag::Robust),
            "standard" => Ok(EstimatorTag::Standard),
            other => Err(format!("unknown estimator tag: {other}")),
        }
    }
}

/// One (estimator, noise, n, replicate) measurement.
///
/// `seconds` is the replicate's wall time; it is kept in memory for runtime
/// reporting but never written to result files, which must be byte-identical
/// across reruns of the same (plan, seed).
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub experiment: String,
    pub estimator: EstimatorTag,
    pub noise: String,
    pub n: u64,
    pub replicate: u64,
    pub error: f64,
    pub converged: bool,
    pub seconds: f64,
}

impl ExperimentRecord {
    /// Everything except the wall time, with the error as raw bits; two runs
    /// of the same (plan, seed) agree on this view exactly.
    pub fn deterministic_view(&self) -> (&str, EstimatorTag, &str, u64, u64, u64, bool) {
        (
            &self.experiment,
            self.estimator,
            &self.noise,
            self.n,
            self.replicate,
            self.error.to_bits(),
            self.converged,
        )
    }
}
