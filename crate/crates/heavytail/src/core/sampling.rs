//! Samplers for the noise and covariate laws used across the toolkit.

use rand_distr::{ChiSquared, Distribution, StandardNormal};

use crate::core::linalg::{cholesky_lower, solve_lower_transpose};
use crate::core::matrix::DenseMatrix;
use crate::core::rng::RngHandle;
use crate::error::{Error, Result};

pub fn standard_normal(rng: &mut RngHandle) -> f64 {
    StandardNormal.sample(rng)
}

/// One draw of `scale * t_nu`, built as N(0,1) / sqrt(chi2(nu) / nu).
pub fn student_t(rng: &mut RngHandle, nu: f64, scale: f64) -> f64 {
    let g: f64 = StandardNormal.sample(rng);
    let chi = ChiSquared::new(nu).expect("validated nu > 0");
    let w: f64 = chi.sample(rng);
    scale * g / (w / nu).sqrt()
}

/// `count` i.i.d. draws of a scaled Student t distribution.
pub fn sample_student_t(rng: &mut RngHandle, nu: f64, scale: f64, count: usize) -> Result<Vec<f64>> {
    if nu <= 0.0 || !nu.is_finite() {
        return Err(Error::Parameter {
            name: "nu",
            reason: format!("degrees of freedom must be positive, got {nu}"),
        });
    }
    if scale <= 0.0 || !scale.is_finite() {
        return Err(Error::Parameter {
            name: "scale",
            reason: format!("scale must be positive, got {scale}"),
        });
    }
    Ok((0..count).map(|_| student_t(rng, nu, scale)).collect())
}

/// Multivariate t sampler parameterized by its precision matrix.
///
/// With L the lower Cholesky factor of `precision`, returns
/// `L^{-T} g * sqrt(nu / w)` for g standard normal and w ~ chi2(nu); the
/// scale matrix of the draw is precision^{-1}, so E[x x^T] =
/// nu/(nu-2) * precision^{-1} for nu > 2.
pub struct MultivariateT {
    nu: f64,
    chol_lower: DenseMatrix,
}

impl MultivariateT {
    pub fn new(nu: f64, precision: &DenseMatrix) -> Result<Self> {
        if nu <= 0.0 || !nu.is_finite() {
            return Err(Error::Parameter {
                name: "nu",
                reason: format!("degrees of freedom must be positive, got {nu}"),
            });
        }
        let chol_lower = cholesky_lower(precision)?;
        Ok(Self { nu, chol_lower })
    }

    pub fn dim(&self) -> usize {
        self.chol_lower.rows()
    }

    pub fn sample(&self, rng: &mut RngHandle) -> Vec<f64> {
        let d = self.dim();
        let g: Vec<f64> = (0..d).map(|_| standard_normal(rng)).collect();
        let chi = ChiSquared::new(self.nu).expect("validated nu > 0");
        let w: f64 = chi.sample(rng);
        let t = (self.nu / w).sqrt();
        let mut x = solve_lower_transpose(&self.chol_lower, &g);
        for v in &mut x {
            *v *= t;
        }
        x
    }
}

/// One multivariate t draw; convenience over [`MultivariateT`] when the
/// factorization is not reused.
pub fn sample_multivariate_t(
    rng: &mut RngHandle,
    nu: f64,
    precision: &DenseMatrix,
) -> Result<Vec<f64>> {
    Ok(MultivariateT::new(nu, precision)?.sample(rng))
}
