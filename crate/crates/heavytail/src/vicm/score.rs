//! First-order score functions `S(x) = -grad p(x) / p(x)` for the supported
//! design densities. Both densities factor over coordinates, so the score
//! acts component-wise.

use serde::{Deserialize, Serialize};

/// Supported design densities for the score transform.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScoreKind {
    /// Standard Gaussian coordinates: S(x) = x.
    Gaussian,
    /// I.i.d. Student t coordinates: S(x)_j = (nu + 1) x_j / (nu + x_j^2).
    StudentT { nu: f64 },
}

#[inline]
pub fn score_component(kind: ScoreKind, x: f64) -> f64 {
    match kind {
        ScoreKind::Gaussian => x,
        ScoreKind::StudentT { nu } => (nu + 1.0) * x / (nu + x * x),
    }
}

/// Applies the score transform to a design vector.
pub fn score(x: &[f64], kind: ScoreKind) -> Vec<f64> {
    x.iter().map(|&v| score_component(kind, v)).collect()
}
