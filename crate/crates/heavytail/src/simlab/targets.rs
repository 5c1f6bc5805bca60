//! Synthetic ground-truth parameter matrices.

use rand::Rng;

use crate::core::linalg::sym_eigen;
use crate::core::matrix::DenseMatrix;
use crate::core::rng::RngHandle;
use crate::core::sampling::standard_normal;
use crate::error::{Error, Result};

/// Rank-r projection-style target `V_r V_r^T / sqrt(r)` where `V_r` holds the
/// top eigenvectors of a sample covariance built from `n_vectors` i.i.d.
/// standard Gaussian d-vectors. Symmetric, rank r, unit Frobenius norm.
pub fn make_low_rank_target(
    rng: &mut RngHandle,
    d: usize,
    r: usize,
    n_vectors: usize,
) -> Result<DenseMatrix> {
    if r == 0 || r > d {
        return Err(Error::Parameter {
            name: "r",
            reason: format!("rank must be in 1..=d, got {r} for d = {d}"),
        });
    }
    let mut cov = DenseMatrix::zeros(d, d);
    for _ in 0..n_vectors {
        let g: Vec<f64> = (0..d).map(|_| standard_normal(rng)).collect();
        for i in 0..d {
            for j in 0..d {
                cov[(i, j)] += g[i] * g[j];
            }
        }
    }
    let cov = cov.scale(1.0 / n_vectors as f64);
    let (_, vectors) = sym_eigen(&cov)?;
    let scale = 1.0 / (r as f64).sqrt();
    let mut theta = DenseMatrix::zeros(d, d);
    for c in 0..r {
        for i in 0..d {
            let vi = vectors[(i, c)];
            for j in 0..d {
                theta[(i, j)] += vi * vectors[(j, c)] * scale;
            }
        }
    }
    Ok(theta)
}

/// Sparse unit-norm direction columns: each column has exactly `s` nonzero
/// entries of magnitude `1/sqrt(s)` with random signs, on a support chosen
/// uniformly at random.
pub fn make_vicm_target(rng: &mut RngHandle, d1: usize, d2: usize, s: usize) -> Result<DenseMatrix> {
    if s == 0 || s > d1 {
        return Err(Error::Parameter {
            name: "s",
            reason: format!("support size must be in 1..=d1, got {s} for d1 = {d1}"),
        });
    }
    let mag = 1.0 / (s as f64).sqrt();
    let mut theta = DenseMatrix::zeros(d1, d2);
    for k in 0..d2 {
        // Partial Fisher-Yates: the first s entries of `idx` become the support.
        let mut idx: Vec<usize> = (0..d1).collect();
        for i in 0..s {
            let j = rng.random_range(i..d1);
            idx.swap(i, j);
        }
        for &row in &idx[..s] {
            let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
            theta[(row, k)] = sign * mag;
        }
    }
    Ok(theta)
}
