//! Precision-matrix recovery by constrained l1 minimization from truncated
//! second moments of heavy-tailed loadings.
//!
//! ```bash
//! cargo run --release --example clime_precision
//! ```

use heavytail::core::linalg::spd_inverse;
use heavytail::core::sampling::MultivariateT;
use heavytail::core::{DenseMatrix, RngHandle};
use heavytail::simlab::ar1_matrix;
use heavytail::transforms::{calibrate_vicm_levels, default_targets};
use heavytail::vicm::{clime, truncated_covariance, ScoreKind, VicmSample};

fn main() {
    let d2 = 6;
    let nu = 5.0;
    let n = 30_000;

    // Z ~ multivariate t_nu with precision K (inverse scale matrix), so
    // E[Z Z^T] = nu/(nu-2) K^{-1} and the covariance inverse is (nu-2)/nu K.
    let k = ar1_matrix(d2, 0.5);
    let omega_star = k.scale((nu - 2.0) / nu);
    let sigma_star = spd_inverse(&k).unwrap().scale(nu / (nu - 2.0));

    let dist = MultivariateT::new(nu, &k).unwrap();
    let mut rng = RngHandle::new(31);
    // Only the loadings matter here; y and x are placeholders, nonzero so
    // the unused cross-moment calibration stays well posed.
    let samples: Vec<VicmSample> = (0..n)
        .map(|_| VicmSample::new(1.0, vec![1.0], dist.sample(&mut rng)))
        .collect();

    let (t1, t2) = default_targets(1, d2, 10.0);
    let levels = calibrate_vicm_levels(&samples, ScoreKind::Gaussian, t1, t2).unwrap();
    let sigma_hat = truncated_covariance(&samples, &levels.gamma2).unwrap();
    println!(
        "truncated second moment vs truth: max entry gap {:.4} (scale {:.3})",
        sigma_hat.sub(&sigma_star).max_abs(),
        sigma_star.max_abs()
    );

    let gamma = 2.0 * ((d2 as f64).ln() / n as f64).sqrt();
    let omega_hat = clime(&sigma_hat, gamma).unwrap();
    println!("clime at gamma = {gamma:.4}:");
    println!("estimate =\n{omega_hat}");
    println!("truth =\n{omega_star}");
    println!(
        "max entry error {:.4}; constraint residual |Sigma Omega - I|_max = {:.4}",
        omega_hat.sub(&omega_star).max_abs(),
        infnorm_residual(&sigma_hat, &omega_hat)
    );
}

fn infnorm_residual(sigma: &DenseMatrix, omega: &DenseMatrix) -> f64 {
    let d = sigma.rows();
    let mut prod = sigma.matmul(omega);
    for i in 0..d {
        prod[(i, i)] -= 1.0;
    }
    prod.max_abs()
}
