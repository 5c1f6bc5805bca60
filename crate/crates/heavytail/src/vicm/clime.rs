//! Constrained l1-minimization estimator of a precision matrix: each column
//! solves
//!
//! ```text
//!     min ||w||_1   s.t.   || sigma_hat w - e_k ||_inf <= gamma
//! ```
//!
//! as an exact linear program over the split w = w+ - w-; the final matrix is
//! symmetrized by keeping, for every (j, k) pair, the entry of smaller
//! magnitude.

use rayon::prelude::*;

use crate::core::matrix::DenseMatrix;
use crate::error::{Error, Result};
use crate::vicm::simplex::{solve_lp_leq, LpError, LpSolution};

/// Raw column-wise solutions (no symmetrization). Column k of the returned
/// matrix solves the k-th constrained l1 program; each satisfies
/// `||sigma_hat w - e_k||_inf <= gamma` up to LP tolerance.
pub fn clime_columns(sigma_hat: &DenseMatrix, gamma: f64) -> Result<DenseMatrix> {
    let (rows, cols) = sigma_hat.shape();
    if rows != cols {
        return Err(Error::Shape {
            context: "clime",
            expected: "square matrix".into(),
            got: format!("{rows}x{cols}"),
        });
    }
    if gamma < 0.0 || !gamma.is_finite() {
        return Err(Error::Parameter {
            name: "gamma",
            reason: format!("gamma must be non-negative and finite, got {gamma}"),
        });
    }
    let d = rows;

    // Shared constraint matrix: variables (w+, w-), rows are
    //   sigma (w+ - w-) <= e_k + gamma,  -sigma (w+ - w-) <= gamma - e_k.
    let mut a: Vec<Vec<f64>> = Vec::with_capacity(2 * d);
    for i in 0..d {
        let mut row = vec![0.0; 2 * d];
        for j in 0..d {
            row[j] = sigma_hat[(i, j)];
            row[d + j] = -sigma_hat[(i, j)];
        }
        a.push(row);
    }
    for i in 0..d {
        let neg: Vec<f64> = a[i].iter().map(|v| -v).collect();
        a.push(neg);
    }
    let c = vec![1.0; 2 * d];

    let columns: Vec<Result<LpSolution>> = (0..d)
        .into_par_iter()
        .map(|k| {
            let mut b = vec![gamma; 2 * d];
            b[k] += 1.0;
            b[d + k] -= 1.0;
            solve_lp_leq(&c, &a, &b).map_err(|e| match e {
                LpError::Infeasible => Error::Infeasible { column: k, gamma },
                LpError::Unbounded => Error::NumericalFailure {
                    op: "clime_lp_unbounded",
                    rows: d,
                    cols: d,
                },
            })
        })
        .collect();

    let mut omega = DenseMatrix::zeros(d, d);
    for (k, sol) in columns.into_iter().enumerate() {
        let sol = sol?;
        for j in 0..d {
            omega[(j, k)] = sol.x[j] - sol.x[d + j];
        }
    }
    Ok(omega)
}

/// CLIME precision estimate: column programs plus the smaller-magnitude
/// symmetrization rule.
pub fn clime(sigma_hat: &DenseMatrix, gamma: f64) -> Result<DenseMatrix> {
    let raw = clime_columns(sigma_hat, gamma)?;
    let d = raw.rows();
    let mut omega = DenseMatrix::zeros(d, d);
    for j in 0..d {
        omega[(j, j)] = raw[(j, j)];
        for k in j + 1..d {
            let keep = if raw[(j, k)].abs() <= raw[(k, j)].abs() {
                raw[(j, k)]
            } else {
                raw[(k, j)]
            };
            omega[(j, k)] = keep;
            omega[(k, j)] = keep;
        }
    }
    Ok(omega)
}
