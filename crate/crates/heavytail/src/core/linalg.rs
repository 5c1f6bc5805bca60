//! Dense factorizations behind the [`DenseMatrix`] contract.
//!
//! The SVD is a one-sided Jacobi (Hestenes) implementation: slower than
//! bidiagonalization on large inputs but accurate to high relative precision
//! on the small, often exactly rank-deficient matrices the solvers produce
//! (thresholded iterates re-enter the SVD every iteration). nalgebra supplies
//! the symmetric eigendecomposition, Cholesky and LU kernels.

use nalgebra::{Cholesky, DMatrix, DVector, SymmetricEigen};

use crate::core::matrix::DenseMatrix;
use crate::error::{Error, Result};

/// Sweep cap for the Jacobi SVD before declaring non-convergence.
const SVD_MAX_SWEEPS: usize = 60;
/// Off-diagonal tolerance relative to the product of column norms.
const SVD_TOL: f64 = 1e-14;

/// Thin singular value decomposition `m = u * diag(s) * vt`.
///
/// `u` is rows x k, `vt` is k x cols with k = min(rows, cols); singular
/// values are non-negative and sorted non-increasing.
#[derive(Debug, Clone)]
pub struct SvdResult {
    pub u: DenseMatrix,
    pub singular_values: Vec<f64>,
    pub vt: DenseMatrix,
}

impl SvdResult {
    /// Reassembles `u * diag(s) * vt`.
    pub fn reconstruct(&self) -> DenseMatrix {
        let (rows, k) = self.u.shape();
        let cols = self.vt.cols();
        let mut out = DenseMatrix::zeros(rows, cols);
        for r in 0..k {
            let s = self.singular_values[r];
            if s == 0.0 {
                continue;
            }
            for i in 0..rows {
                let us = self.u[(i, r)] * s;
                for j in 0..cols {
                    out[(i, j)] += us * self.vt[(r, j)];
                }
            }
        }
        out
    }
}

pub(crate) fn to_nalgebra(m: &DenseMatrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.entries())
}

pub(crate) fn from_nalgebra(m: &DMatrix<f64>) -> DenseMatrix {
    DenseMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Thin SVD with singular values sorted non-increasing.
///
/// Columns of `u` paired with zero singular values are zero vectors; they
/// never contribute to reconstructions or proximal maps.
pub fn svd(m: &DenseMatrix) -> Result<SvdResult> {
    let (rows, cols) = m.shape();
    if rows >= cols {
        jacobi_svd_tall(m)
    } else {
        // Work on the transpose and swap the factors back.
        let t = jacobi_svd_tall(&m.transpose())?;
        Ok(SvdResult {
            u: t.vt.transpose(),
            singular_values: t.singular_values,
            vt: t.u.transpose(),
        })
    }
}

/// One-sided Jacobi SVD for rows >= cols: orthogonalizes the columns of a
/// working copy B = A V by plane rotations, so A = (B / ||B_j||) diag(||B_j||) V^T.
#[allow(clippy::needless_range_loop)] // paired-column rotations index two rows at once
fn jacobi_svd_tall(m: &DenseMatrix) -> Result<SvdResult> {
    let (rows, cols) = m.shape();
    debug_assert!(rows >= cols);
    let mut b: Vec<Vec<f64>> = (0..cols).map(|j| m.column(j)).collect();
    let mut v: Vec<Vec<f64>> = (0..cols)
        .map(|j| {
            let mut e = vec![0.0; cols];
            e[j] = 1.0;
            e
        })
        .collect();

    let mut converged = false;
    for _ in 0..SVD_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in p + 1..cols {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = 0.0;
                for i in 0..rows {
                    app += b[p][i] * b[p][i];
                    aqq += b[q][i] * b[q][i];
                    apq += b[p][i] * b[q][i];
                }
                if apq.abs() <= SVD_TOL * (app * aqq).sqrt() || apq == 0.0 {
                    continue;
                }
                rotated = true;
                let zeta = (aqq - app) / (2.0 * apq);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for i in 0..rows {
                    let bp = b[p][i];
                    let bq = b[q][i];
                    b[p][i] = cs * bp - sn * bq;
                    b[q][i] = sn * bp + cs * bq;
                }
                for i in 0..cols {
                    let vp = v[p][i];
                    let vq = v[q][i];
                    v[p][i] = cs * vp - sn * vq;
                    v[q][i] = sn * vp + cs * vq;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NumericalFailure {
            op: "svd",
            rows,
            cols,
        });
    }

    let mut order: Vec<usize> = (0..cols).collect();
    let norms: Vec<f64> = b
        .iter()
        .map(|col| col.iter().map(|x| x * x).sum::<f64>().sqrt())
        .collect();
    order.sort_by(|&a, &c| norms[c].partial_cmp(&norms[a]).expect("finite norms"));

    let singular_values: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let mut u = DenseMatrix::zeros(rows, cols);
    for (r, &j) in order.iter().enumerate() {
        if norms[j] > 0.0 {
            for i in 0..rows {
                u[(i, r)] = b[j][i] / norms[j];
            }
        }
    }
    let vt = DenseMatrix::from_fn(cols, cols, |r, i| v[order[r]][i]);
    Ok(SvdResult {
        u,
        singular_values,
        vt,
    })
}

/// Symmetric eigendecomposition with eigenvalues sorted non-increasing.
/// Returns (eigenvalues, eigenvectors-as-columns).
pub fn sym_eigen(m: &DenseMatrix) -> Result<(Vec<f64>, DenseMatrix)> {
    let (rows, cols) = m.shape();
    if rows != cols {
        return Err(Error::Shape {
            context: "sym_eigen",
            expected: "square matrix".into(),
            got: format!("{rows}x{cols}"),
        });
    }
    let eig = SymmetricEigen::new(to_nalgebra(m));
    let mut order: Vec<usize> = (0..rows).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .expect("finite eigenvalues")
    });
    let values: Vec<f64> = order.iter().map(|&r| eig.eigenvalues[r]).collect();
    let vectors = DenseMatrix::from_fn(rows, rows, |i, r| eig.eigenvectors[(i, order[r])]);
    Ok((values, vectors))
}

/// Lower Cholesky factor L with L * L^T = m. Errors if m is not positive definite.
pub fn cholesky_lower(m: &DenseMatrix) -> Result<DenseMatrix> {
    let (rows, cols) = m.shape();
    if rows != cols {
        return Err(Error::Shape {
            context: "cholesky",
            expected: "square matrix".into(),
            got: format!("{rows}x{cols}"),
        });
    }
    let chol = Cholesky::new(to_nalgebra(m)).ok_or(Error::NumericalFailure {
        op: "cholesky",
        rows,
        cols,
    })?;
    Ok(from_nalgebra(&chol.l()))
}

/// Solves L^T x = b for x given a lower-triangular L (back substitution).
pub fn solve_lower_transpose(l: &DenseMatrix, b: &[f64]) -> Vec<f64> {
    let n = l.rows();
    assert_eq!(n, b.len());
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = b[i];
        for j in i + 1..n {
            // (L^T)[i, j] = L[j, i]
            s -= l[(j, i)] * x[j];
        }
        x[i] = s / l[(i, i)];
    }
    x
}

/// Inverse of a symmetric positive definite matrix via its Cholesky factor.
pub fn spd_inverse(m: &DenseMatrix) -> Result<DenseMatrix> {
    let (rows, cols) = m.shape();
    let chol = Cholesky::new(to_nalgebra(m)).ok_or(Error::NumericalFailure {
        op: "cholesky",
        rows,
        cols,
    })?;
    Ok(from_nalgebra(&chol.inverse()))
}

/// Solves the dense linear system `a x = b` (LU with partial pivoting).
pub fn solve(a: &DenseMatrix, b: &[f64]) -> Result<Vec<f64>> {
    let (rows, cols) = a.shape();
    if rows != cols || rows != b.len() {
        return Err(Error::Shape {
            context: "solve",
            expected: "square system".into(),
            got: format!("{rows}x{cols} with rhs {}", b.len()),
        });
    }
    let lu = to_nalgebra(a).lu();
    let x = lu
        .solve(&DVector::from_column_slice(b))
        .ok_or(Error::NumericalFailure {
            op: "lu_solve",
            rows,
            cols,
        })?;
    Ok(x.iter().copied().collect())
}

/// The norm battery used throughout: Frobenius, nuclear, max, operator,
/// entry-wise l1, maximum row sum and maximum column sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixNorms {
    pub frobenius: f64,
    pub nuclear: f64,
    pub max_abs: f64,
    pub operator: f64,
    pub l1_entrywise: f64,
    pub row_sum_max: f64,
    pub col_sum_max: f64,
}

/// Computes all supported norms in one pass (one SVD for nuclear/operator).
pub fn matrix_norms(m: &DenseMatrix) -> Result<MatrixNorms> {
    let s = svd(m)?;
    let nuclear: f64 = s.singular_values.iter().sum();
    let operator = s.singular_values.first().copied().unwrap_or(0.0);

    let mut l1 = 0.0;
    let mut row_sums = vec![0.0; m.rows()];
    let mut col_sums = vec![0.0; m.cols()];
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let a = m[(i, j)].abs();
            l1 += a;
            row_sums[i] += a;
            col_sums[j] += a;
        }
    }
    Ok(MatrixNorms {
        frobenius: m.frobenius_norm(),
        nuclear,
        max_abs: m.max_abs(),
        operator,
        l1_entrywise: l1,
        row_sum_max: row_sums.iter().fold(0.0, |a: f64, &b| a.max(b)),
        col_sum_max: col_sums.iter().fold(0.0, |a: f64, &b| a.max(b)),
    })
}
