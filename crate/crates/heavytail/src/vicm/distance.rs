//! Column-normalized, sign-resolved distance between an estimated direction
//! matrix and the truth:
//!
//! ```text
//!     rho(Theta_hat, Theta*)^2 = sum_k min( ||u_k - theta*_k||^2,
//!                                           ||u_k + theta*_k||^2 )
//! ```
//!
//! with `u_k = theta_hat_k / ||theta_hat_k||`. Invariant to per-column
//! rescaling and sign flips of the estimate.

use crate::core::matrix::DenseMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct DirectionDistance {
    pub value: f64,
    /// Columns of the estimate that were identically zero; each contributes
    /// 1 to the squared distance by convention (normalization impossible).
    pub zero_columns: Vec<usize>,
}

pub fn direction_distance(
    theta_hat: &DenseMatrix,
    theta_star: &DenseMatrix,
) -> Result<DirectionDistance> {
    if theta_hat.shape() != theta_star.shape() {
        return Err(Error::Shape {
            context: "direction_distance",
            expected: format!("{:?}", theta_star.shape()),
            got: format!("{:?}", theta_hat.shape()),
        });
    }
    let (d1, d2) = theta_star.shape();
    for k in 0..d2 {
        let norm: f64 = (0..d1)
            .map(|i| theta_star[(i, k)] * theta_star[(i, k)])
            .sum::<f64>()
            .sqrt();
        if (norm - 1.0).abs() > 1e-8 {
            return Err(Error::Parameter {
                name: "theta_star",
                reason: format!("column {k} must be unit norm, got {norm}"),
            });
        }
    }

    let mut total = 0.0;
    let mut zero_columns = Vec::new();
    for k in 0..d2 {
        let col: Vec<f64> = theta_hat.column(k);
        let norm = col.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            zero_columns.push(k);
            total += 1.0;
            continue;
        }
        let mut minus = 0.0;
        let mut plus = 0.0;
        for i in 0..d1 {
            let u = col[i] / norm;
            let t = theta_star[(i, k)];
            minus += (u - t) * (u - t);
            plus += (u + t) * (u + t);
        }
        total += minus.min(plus);
    }
    Ok(DirectionDistance {
        value: total.sqrt(),
        zero_columns,
    })
}
