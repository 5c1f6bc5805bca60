//! Element-wise truncated moment matrices for the index-coefficient pipeline.

use rayon::prelude::*;

use crate::core::matrix::DenseMatrix;
use crate::error::{Error, Result};
use crate::transforms::{psi, TruncationMatrix};
use crate::vicm::score::{score_component, ScoreKind};
use crate::vicm::VicmSample;

fn check_dims(samples: &[VicmSample], d1: usize, d2: usize) -> Result<()> {
    for (pos, s) in samples.iter().enumerate() {
        if s.x.len() != d1 || s.z.len() != d2 {
            return Err(Error::Data {
                position: pos,
                reason: format!(
                    "inconsistent dimensions: expected x {d1} z {d2}, got x {} z {}",
                    s.x.len(),
                    s.z.len()
                ),
            });
        }
    }
    Ok(())
}

/// Truncated empirical cross moment `(1/n) sum_i psi(y_i S(X_i)_j z_k^(i))`
/// with per-cell levels. Every entry is bounded by its level in magnitude.
pub fn truncated_cross_moment(
    samples: &[VicmSample],
    levels: &TruncationMatrix,
    kind: ScoreKind,
) -> Result<DenseMatrix> {
    let (d1, d2) = levels.shape();
    if samples.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    check_dims(samples, d1, d2)?;
    let n = samples.len() as f64;

    let entries: Vec<f64> = (0..d1 * d2)
        .into_par_iter()
        .map(|flat| {
            let (j, k) = (flat / d2, flat % d2);
            let tau = levels.level(j, k);
            let sum: f64 = samples
                .iter()
                .map(|s| psi(s.y * score_component(kind, s.x[j]) * s.z[k], tau))
                .sum();
            sum / n
        })
        .collect();
    DenseMatrix::new(d1, d2, entries)
}

/// Untruncated cross moment (the "standard" pipeline's moment matrix).
pub fn raw_cross_moment(samples: &[VicmSample], kind: ScoreKind, d1: usize, d2: usize) -> Result<DenseMatrix> {
    if samples.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    check_dims(samples, d1, d2)?;
    let n = samples.len() as f64;
    let mut m = DenseMatrix::zeros(d1, d2);
    for s in samples {
        for j in 0..d1 {
            let sx = score_component(kind, s.x[j]);
            let ysx = s.y * sx;
            for k in 0..d2 {
                m[(j, k)] += ysx * s.z[k];
            }
        }
    }
    Ok(m.scale(1.0 / n))
}

/// Element-wise truncated second-moment matrix of Z, symmetrized as
/// `(A + A^T) / 2` after clipping.
pub fn truncated_covariance(
    samples: &[VicmSample],
    levels: &TruncationMatrix,
) -> Result<DenseMatrix> {
    let (rows, cols) = levels.shape();
    if rows != cols {
        return Err(Error::Shape {
            context: "truncated_covariance",
            expected: "square level matrix".into(),
            got: format!("{rows}x{cols}"),
        });
    }
    if samples.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    let d2 = rows;
    for (pos, s) in samples.iter().enumerate() {
        if s.z.len() != d2 {
            return Err(Error::Data {
                position: pos,
                reason: format!("expected z of length {d2}, got {}", s.z.len()),
            });
        }
    }
    let n = samples.len() as f64;
    let mut a = DenseMatrix::zeros(d2, d2);
    for k in 0..d2 {
        for s_idx in 0..d2 {
            let tau = levels.level(k, s_idx);
            let sum: f64 = samples.iter().map(|smp| psi(smp.z[k] * smp.z[s_idx], tau)).sum();
            a[(k, s_idx)] = sum / n;
        }
    }
    // Symmetrize.
    Ok(DenseMatrix::from_fn(d2, d2, |i, j| {
        0.5 * (a[(i, j)] + a[(j, i)])
    }))
}

/// Untruncated empirical second moment of Z.
pub fn raw_covariance(samples: &[VicmSample], d2: usize) -> Result<DenseMatrix> {
    if samples.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    let n = samples.len() as f64;
    let mut a = DenseMatrix::zeros(d2, d2);
    for (pos, s) in samples.iter().enumerate() {
        if s.z.len() != d2 {
            return Err(Error::Data {
                position: pos,
                reason: format!("expected z of length {d2}, got {}", s.z.len()),
            });
        }
        for k in 0..d2 {
            for j in 0..d2 {
                a[(k, j)] += s.z[k] * s.z[j];
            }
        }
    }
    Ok(a.scale(1.0 / n))
}
