//! Data-driven truncation levels: solving sum_i psi(x_i, tau)^2 / tau^2 = m
//! per coordinate, the tuning-free alternative to cross-validating every
//! level.
//!
//! ```bash
//! cargo run --release --example adaptive_calibration
//! ```

use heavytail::core::sampling::sample_student_t;
use heavytail::core::RngHandle;
use heavytail::transforms::{calibrate_tau, calibrate_vicm_levels, default_targets, psi};
use heavytail::vicm::{ScoreKind, VicmSample};

fn main() {
    // Closed form: n copies of a constant c solve to tau = c sqrt(n/m).
    let (c, n, m) = (2.5, 40usize, 7.0);
    let got = calibrate_tau(&vec![c; n], m).unwrap();
    println!(
        "constant data: tau = {:.6} (closed form {:.6}), residual {:+.1e}",
        got.tau,
        c * (n as f64 / m).sqrt(),
        got.residual
    );

    // Heavy-tailed sample: the level lands between the bulk and the spikes.
    let mut rng = RngHandle::new(7);
    let values = sample_student_t(&mut rng, 1.5, 1.0, 5_000).unwrap();
    let target = 10.0 * (5_000f64).ln();
    let got = calibrate_tau(&values, target).unwrap();
    let clipped = values.iter().filter(|v| v.abs() > got.tau).count();
    let max_abs = values.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
    println!(
        "t_1.5 sample: tau = {:.3} clips {clipped}/{} points (max |x| = {max_abs:.1}), residual {:+.1e}",
        got.tau,
        values.len(),
        got.residual
    );
    println!(
        "  psi squeezes the worst point to {:.3}",
        psi(max_abs, got.tau)
    );

    // Level matrices for the index-coefficient pipeline.
    let (d1, d2) = (4usize, 3usize);
    let samples: Vec<VicmSample> = (0..2_000)
        .map(|_| {
            let x = sample_student_t(&mut rng, 5.0, 1.0, d1).unwrap();
            let z = sample_student_t(&mut rng, 5.0, 1.0, d2).unwrap();
            let y = x[0] * z[0] + sample_student_t(&mut rng, 5.0, 1.0, 1).unwrap()[0];
            VicmSample::new(y, x, z)
        })
        .collect();
    let (t1, t2) = default_targets(d1, d2, 10.0);
    let levels =
        calibrate_vicm_levels(&samples, ScoreKind::StudentT { nu: 5.0 }, t1, t2).unwrap();
    println!(
        "\nlevel matrices for {d1}x{d2} cross moments (targets {t1:.2}, {t2:.2}):\ngamma1 =\n{}",
        levels.gamma1.levels()
    );
    println!("gamma2 =\n{}", levels.gamma2.levels());
    let worst1 = levels.residuals1.max_abs();
    let worst2 = levels.residuals2.max_abs();
    println!("worst residuals: {worst1:.2e} (gamma1), {worst2:.2e} (gamma2)");
}
