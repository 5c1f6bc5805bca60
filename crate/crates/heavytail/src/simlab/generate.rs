//! Synthetic data generators for both models.

use rand::Rng;

use crate::core::matrix::DenseMatrix;
use crate::core::rng::RngHandle;
use crate::core::sampling::{standard_normal, student_t, MultivariateT};
use crate::error::Result;
use crate::matcomp::McSample;
use crate::simlab::links::LinkFn;
use crate::vicm::VicmSample;

/// Uniform-cell completion samples `y = sqrt(d1 d2) Theta*_jk + scale * t_nu`.
/// `scale = 0` produces noiseless responses.
pub fn generate_mc_data(
    rng: &mut RngHandle,
    theta_star: &DenseMatrix,
    n: usize,
    nu: f64,
    scale: f64,
) -> Vec<McSample> {
    assert!(scale >= 0.0, "noise scale must be non-negative");
    assert!(nu > 0.0, "noise degrees of freedom must be positive");
    let (d1, d2) = theta_star.shape();
    let signal_scale = ((d1 * d2) as f64).sqrt();
    (0..n)
        .map(|_| {
            let row = rng.random_range(0..d1);
            let col = rng.random_range(0..d2);
            let noise = if scale > 0.0 {
                student_t(rng, nu, scale)
            } else {
                0.0
            };
            McSample {
                row,
                col,
                response: signal_scale * theta_star[(row, col)] + noise,
            }
        })
        .collect()
}

/// AR(1)-style matrix with entries `rho^|i-j|`.
pub fn ar1_matrix(d: usize, rho: f64) -> DenseMatrix {
    DenseMatrix::from_fn(d, d, |i, j| rho.powi((i as i32 - j as i32).abs()))
}

/// Design-vector law for X.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CovariateDist {
    GaussianIid,
    StudentTIid { nu: f64 },
}

/// Additive-noise law for eps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseDist {
    None,
    Gaussian { scale: f64 },
    StudentT { nu: f64, scale: f64 },
}

/// Loading-vector law for Z.
#[derive(Debug, Clone)]
pub enum LoadingDist {
    GaussianIid,
    /// Multivariate t with the given precision matrix.
    MultivariateT { nu: f64, precision: DenseMatrix },
}

/// Full specification of a synthetic index-coefficient dataset.
#[derive(Debug, Clone)]
pub struct VicmDesign {
    pub theta_star: DenseMatrix,
    pub links: Vec<LinkFn>,
    pub x_dist: CovariateDist,
    pub z_dist: LoadingDist,
    pub noise: NoiseDist,
}

impl VicmDesign {
    pub fn d1(&self) -> usize {
        self.theta_star.rows()
    }

    pub fn d2(&self) -> usize {
        self.theta_star.cols()
    }
}

/// Draws `y = sum_k z_k f_k(<X, theta*_k>) + eps` with the configured laws.
pub fn generate_vicm_data(
    rng: &mut RngHandle,
    n: usize,
    design: &VicmDesign,
) -> Result<Vec<VicmSample>> {
    let d1 = design.d1();
    let d2 = design.d2();
    assert_eq!(
        design.links.len(),
        d2,
        "need one link per column of theta_star"
    );
    let z_sampler = match &design.z_dist {
        LoadingDist::GaussianIid => None,
        LoadingDist::MultivariateT { nu, precision } => {
            Some(MultivariateT::new(*nu, precision)?)
        }
    };

    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let x: Vec<f64> = (0..d1)
            .map(|_| match design.x_dist {
                CovariateDist::GaussianIid => standard_normal(rng),
                CovariateDist::StudentTIid { nu } => student_t(rng, nu, 1.0),
            })
            .collect();
        let z: Vec<f64> = match &z_sampler {
            Some(dist) => dist.sample(rng),
            None => (0..d2).map(|_| standard_normal(rng)).collect(),
        };
        let mut y = 0.0;
        for (k, zk) in z.iter().enumerate() {
            let mut index = 0.0;
            for (l, xl) in x.iter().enumerate() {
                index += xl * design.theta_star[(l, k)];
            }
            y += zk * design.links[k].eval(index);
        }
        y += match design.noise {
            NoiseDist::None => 0.0,
            NoiseDist::Gaussian { scale } => scale * standard_normal(rng),
            NoiseDist::StudentT { nu, scale } => student_t(rng, nu, scale),
        };
        out.push(VicmSample::new(y, x, z));
    }
    Ok(out)
}
