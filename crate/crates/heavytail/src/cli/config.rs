//! Strict TOML configuration schemas for the command-line entry points.
//! Unknown keys are rejected; numeric ranges are validated on load.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcomp::AdmmParams;
use crate::simlab::{LinkFn, McNoisePlan, McPlan, VicmPlan};
use crate::vicm::ScoreKind;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Csv,
    JsonLines,
}

impl OutputFormat {
    pub fn as_str(&self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::JsonLines => "json-lines",
        }
    }
}

fn read_toml<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text)
        .map_err(|e| Error::Config(format!("invalid config {}: {e}", path.display())))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdmmConfig {
    #[serde(default = "default_rho")]
    pub rho: f64,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    #[serde(default = "default_tol")]
    pub primal_tol: f64,
    #[serde(default = "default_tol")]
    pub dual_tol: f64,
    #[serde(default)]
    pub adapt_rho: bool,
}

fn default_rho() -> f64 {
    1.0
}
fn default_max_iter() -> usize {
    500
}
fn default_tol() -> f64 {
    1e-7
}

impl Default for AdmmConfig {
    fn default() -> Self {
        Self {
            rho: default_rho(),
            max_iter: default_max_iter(),
            primal_tol: default_tol(),
            dual_tol: default_tol(),
            adapt_rho: false,
        }
    }
}

impl AdmmConfig {
    fn to_params(&self) -> Result<AdmmParams> {
        if self.rho <= 0.0 || self.primal_tol <= 0.0 || self.dual_tol <= 0.0 {
            return Err(Error::Config(
                "admm rho and tolerances must be positive".into(),
            ));
        }
        Ok(AdmmParams {
            rho: self.rho,
            max_iter: self.max_iter,
            primal_tol: self.primal_tol,
            dual_tol: self.dual_tol,
            adapt_rho: self.adapt_rho,
            track_objective: false,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McNoiseConfig {
    pub label: String,
    pub nu: f64,
    pub scale: f64,
    #[serde(default = "default_l_alpha")]
    pub l_alpha: f64,
    pub tau_scale: f64,
    pub lambda_scale: f64,
    #[serde(default)]
    pub alpha: Option<f64>,
}

fn default_l_alpha() -> f64 {
    1.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McPlanConfig {
    pub d1: usize,
    pub d2: usize,
    #[serde(default = "default_rank")]
    pub rank: usize,
    #[serde(default = "default_n_vectors")]
    pub n_vectors: usize,
    pub n_grid: Vec<u64>,
    pub replicates: u64,
    pub noises: Vec<McNoiseConfig>,
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default)]
    pub max_norm_budget: Option<f64>,
    #[serde(default)]
    pub admm: AdmmConfig,
    #[serde(default = "default_true")]
    pub include_standard: bool,
}

fn default_rank() -> usize {
    5
}
fn default_n_vectors() -> usize {
    100
}
fn default_delta() -> f64 {
    2.0
}
fn default_true() -> bool {
    true
}

/// Config file for `mc-experiment`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McExperimentFile {
    pub seed: u64,
    #[serde(default)]
    pub out: Option<String>,
    #[serde(default)]
    pub format: Option<OutputFormat>,
    pub plan: McPlanConfig,
}

impl McExperimentFile {
    pub fn load(path: &Path) -> Result<Self> {
        let file: Self = read_toml(path)?;
        file.validate()?;
        Ok(file)
    }

    fn validate(&self) -> Result<()> {
        let p = &self.plan;
        if p.d1 == 0 || p.d2 == 0 {
            return Err(Error::Config("d1 and d2 must be positive".into()));
        }
        if p.rank == 0 || p.rank > p.d1.min(p.d2) {
            return Err(Error::Config(format!(
                "rank must lie in 1..=min(d1, d2), got {}",
                p.rank
            )));
        }
        if p.n_grid.is_empty() || p.n_grid.contains(&0) {
            return Err(Error::Config("n_grid must be non-empty and positive".into()));
        }
        if p.replicates == 0 {
            return Err(Error::Config("replicates must be positive".into()));
        }
        if p.noises.is_empty() {
            return Err(Error::Config("at least one noise law is required".into()));
        }
        for noise in &p.noises {
            if noise.nu <= 0.0 || noise.scale < 0.0 || noise.l_alpha <= 0.0 {
                return Err(Error::Config(format!(
                    "noise '{}': nu and l_alpha must be positive, scale non-negative",
                    noise.label
                )));
            }
            let alpha = noise.alpha.unwrap_or(noise.nu - 0.01);
            if alpha <= 1.0 {
                return Err(Error::Config(format!(
                    "noise '{}': moment index {alpha} must exceed 1",
                    noise.label
                )));
            }
            if noise.tau_scale <= 0.0 || noise.lambda_scale <= 0.0 {
                return Err(Error::Config(format!(
                    "noise '{}': tau_scale and lambda_scale must be positive",
                    noise.label
                )));
            }
        }
        if self.plan.delta <= 1.0 || self.plan.delta.is_nan() {
            return Err(Error::Config("delta must exceed 1".into()));
        }
        Ok(())
    }

    pub fn to_plan(&self, seed_override: Option<u64>) -> Result<McPlan> {
        Ok(McPlan {
            d1: self.plan.d1,
            d2: self.plan.d2,
            rank: self.plan.rank,
            n_vectors: self.plan.n_vectors,
            n_grid: self.plan.n_grid.clone(),
            replicates: self.plan.replicates,
            noises: self
                .plan
                .noises
                .iter()
                .map(|n| McNoisePlan {
                    label: n.label.clone(),
                    nu: n.nu,
                    scale: n.scale,
                    l_alpha: n.l_alpha,
                    tau_scale: n.tau_scale,
                    lambda_scale: n.lambda_scale,
                    alpha: n.alpha,
                })
                .collect(),
            seed: seed_override.unwrap_or(self.seed),
            delta: self.plan.delta,
            max_norm_budget: self.plan.max_norm_budget,
            admm: self.plan.admm.to_params()?,
            include_standard: self.plan.include_standard,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VicmPlanConfig {
    pub d1: usize,
    pub d2: usize,
    pub s: usize,
    pub n_grid: Vec<u64>,
    pub replicates: u64,
    #[serde(default = "default_nu")]
    pub nu: f64,
    #[serde(default = "default_noise_scale")]
    pub noise_scale: f64,
    #[serde(default = "default_z_ar_rho")]
    pub z_ar_rho: f64,
    #[serde(default = "default_calibration_factor")]
    pub calibration_factor: f64,
    #[serde(default = "default_gamma_scale")]
    pub gamma_scale: f64,
    #[serde(default = "default_lambda_fractions")]
    pub lambda_fractions: Vec<f64>,
    #[serde(default = "default_true")]
    pub include_standard: bool,
    #[serde(default)]
    pub links: Option<Vec<LinkFn>>,
}

fn default_nu() -> f64 {
    5.0
}
fn default_noise_scale() -> f64 {
    1.0
}
fn default_z_ar_rho() -> f64 {
    0.5
}
fn default_calibration_factor() -> f64 {
    10.0
}
fn default_gamma_scale() -> f64 {
    1.0
}
fn default_lambda_fractions() -> Vec<f64> {
    VicmPlan::desk_scale(0).lambda_fractions
}

/// Config file for `vicm-experiment`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VicmExperimentFile {
    pub seed: u64,
    #[serde(default)]
    pub out: Option<String>,
    #[serde(default)]
    pub format: Option<OutputFormat>,
    pub plan: VicmPlanConfig,
}

impl VicmExperimentFile {
    pub fn load(path: &Path) -> Result<Self> {
        let file: Self = read_toml(path)?;
        file.validate()?;
        Ok(file)
    }

    fn validate(&self) -> Result<()> {
        let p = &self.plan;
        if p.d1 == 0 || p.d2 == 0 {
            return Err(Error::Config("d1 and d2 must be positive".into()));
        }
        if p.s == 0 || p.s > p.d1 {
            return Err(Error::Config(format!(
                "support size s = {} must lie in 1..=d1 = {}",
                p.s, p.d1
            )));
        }
        if p.n_grid.is_empty() || p.n_grid.iter().any(|&n| n < 2) {
            return Err(Error::Config("n_grid entries must be at least 2".into()));
        }
        if p.replicates == 0 {
            return Err(Error::Config("replicates must be positive".into()));
        }
        if p.nu <= 2.0 {
            return Err(Error::Config(
                "nu must exceed 2 so the loading covariance exists".into(),
            ));
        }
        if p.noise_scale < 0.0 || p.gamma_scale <= 0.0 || p.calibration_factor <= 0.0 {
            return Err(Error::Config(
                "noise_scale must be non-negative; gamma_scale and calibration_factor positive"
                    .into(),
            ));
        }
        if p.z_ar_rho.abs() >= 1.0 || p.z_ar_rho.is_nan() {
            return Err(Error::Config("z_ar_rho must lie in (-1, 1)".into()));
        }
        if p.lambda_fractions.is_empty()
            || p.lambda_fractions.iter().any(|&f| !(0.0..=1.0).contains(&f))
        {
            return Err(Error::Config(
                "lambda_fractions must be non-empty with entries in [0, 1]".into(),
            ));
        }
        if let Some(links) = &p.links {
            if links.len() != p.d2 {
                return Err(Error::Config(format!(
                    "need {} links, got {}",
                    p.d2,
                    links.len()
                )));
            }
        }
        Ok(())
    }

    pub fn to_plan(&self, seed_override: Option<u64>) -> VicmPlan {
        let p = &self.plan;
        VicmPlan {
            d1: p.d1,
            d2: p.d2,
            s: p.s,
            n_grid: p.n_grid.clone(),
            replicates: p.replicates,
            seed: seed_override.unwrap_or(self.seed),
            nu: p.nu,
            noise_scale: p.noise_scale,
            z_ar_rho: p.z_ar_rho,
            calibration_factor: p.calibration_factor,
            gamma_scale: p.gamma_scale,
            lambda_fractions: p.lambda_fractions.clone(),
            include_standard: p.include_standard,
            links: p.links.clone(),
        }
    }
}

/// Config file for `calibrate`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CalibrateFile {
    /// Data file: header `d1=<int> d2=<int>`, then one sample per line
    /// (y, d1 x-values, d2 z-values, whitespace-separated).
    pub data: String,
    pub score: ScoreKind,
    #[serde(default = "default_calibration_factor")]
    pub calibration_factor: f64,
    #[serde(default)]
    pub target1: Option<f64>,
    #[serde(default)]
    pub target2: Option<f64>,
    #[serde(default)]
    pub out: Option<String>,
    #[serde(default)]
    pub format: Option<OutputFormat>,
}

impl CalibrateFile {
    pub fn load(path: &Path) -> Result<Self> {
        let file: Self = read_toml(path)?;
        if file.calibration_factor <= 0.0 {
            return Err(Error::Config("calibration_factor must be positive".into()));
        }
        for (name, t) in [("target1", file.target1), ("target2", file.target2)] {
            if let Some(v) = t {
                if v <= 0.0 || !v.is_finite() {
                    return Err(Error::Config(format!("{name} must be positive and finite")));
                }
            }
        }
        if let ScoreKind::StudentT { nu } = file.score {
            if nu <= 0.0 {
                return Err(Error::Config("score nu must be positive".into()));
            }
        }
        Ok(file)
    }
}
