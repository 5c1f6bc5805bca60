//! Truncation primitives and the data-driven calibration of truncation levels.
//!
//! The clipping map `psi(x, tau) = sign(x) * min(|x|, tau)` robustifies
//! empirical moments against heavy tails. Calibration picks, per coordinate,
//! the smallest clipping level consistent with a target effective sample
//! size: it solves `sum_i psi(x_i, tau)^2 / tau^2 = target` for tau.

use rayon::prelude::*;

use crate::core::matrix::DenseMatrix;
use crate::error::{Error, Result};
use crate::vicm::{score_component, ScoreKind, VicmSample};

/// Entry-wise clipping to `[-tau, tau]`, preserving sign.
///
/// Panics if `tau` is not positive (mirrors `f64::clamp` on invalid bounds);
/// level matrices are validated at construction instead.
#[inline]
pub fn psi(x: f64, tau: f64) -> f64 {
    assert!(tau > 0.0, "truncation level must be positive, got {tau}");
    x.abs().min(tau).copysign(x)
}

/// A matrix of strictly positive truncation levels, one per entry position.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationMatrix {
    levels: DenseMatrix,
}

impl TruncationMatrix {
    pub fn new(levels: DenseMatrix) -> Result<Self> {
        if let Some(pos) = levels.entries().iter().position(|&v| v <= 0.0) {
            return Err(Error::Parameter {
                name: "levels",
                reason: format!(
                    "level at flat index {pos} is {}; all levels must be positive",
                    levels.entries()[pos]
                ),
            });
        }
        Ok(Self { levels })
    }

    /// Constant level everywhere.
    pub fn uniform(rows: usize, cols: usize, tau: f64) -> Result<Self> {
        if tau <= 0.0 || !tau.is_finite() {
            return Err(Error::Parameter {
                name: "tau",
                reason: format!("uniform level must be positive and finite, got {tau}"),
            });
        }
        Ok(Self {
            levels: DenseMatrix::from_fn(rows, cols, |_, _| tau),
        })
    }

    pub fn levels(&self) -> &DenseMatrix {
        &self.levels
    }

    pub fn shape(&self) -> (usize, usize) {
        self.levels.shape()
    }

    pub fn level(&self, i: usize, j: usize) -> f64 {
        self.levels[(i, j)]
    }
}

/// Applies `psi` entry-wise with per-position levels.
pub fn psi_matrix(m: &DenseMatrix, levels: &TruncationMatrix) -> Result<DenseMatrix> {
    if m.shape() != levels.shape() {
        return Err(Error::Shape {
            context: "psi_matrix",
            expected: format!("{:?}", levels.shape()),
            got: format!("{:?}", m.shape()),
        });
    }
    Ok(DenseMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        psi(m[(i, j)], levels.level(i, j))
    }))
}

/// Result of one adaptive-level calibration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalibratedTau {
    pub tau: f64,
    /// Equation residual `sum psi^2/tau^2 - target` at the returned tau.
    pub residual: f64,
    /// Set when the target exceeds the number of nonzero values, in which
    /// case no finite tau solves the equation and `tau = max |x|` is returned
    /// (the untruncated limit).
    pub saturated: bool,
}

const CALIBRATE_MAX_ITER: usize = 200;
const CALIBRATE_REL_TOL: f64 = 1e-6;

fn calibration_objective(values: &[f64], tau: f64) -> f64 {
    values
        .iter()
        .map(|&x| {
            let c = x.abs().min(tau);
            (c / tau) * (c / tau)
        })
        .sum()
}

/// Solves `sum_i psi(x_i, tau)^2 / tau^2 = target` for tau.
///
/// The left side decreases from the count of nonzero values (tau -> 0) to
/// zero (tau -> inf). For tau at or above max|x| the equation has the closed
/// form `tau = sqrt(sum x^2 / target)`, used directly when applicable;
/// otherwise bisection on `[min nonzero |x| * 1e-12, max |x|]` applies.
pub fn calibrate_tau(values: &[f64], target: f64) -> Result<CalibratedTau> {
    if target <= 0.0 || !target.is_finite() {
        return Err(Error::Parameter {
            name: "target",
            reason: format!("calibration target must be positive and finite, got {target}"),
        });
    }
    let nnz = values.iter().filter(|&&x| x != 0.0).count();
    if nnz == 0 {
        return Err(Error::DegenerateData {
            what: "calibration data is identically zero".into(),
        });
    }
    let max_abs = values.iter().fold(0.0_f64, |m, &x| m.max(x.abs()));
    let min_nonzero = values
        .iter()
        .filter(|&&x| x != 0.0)
        .fold(f64::INFINITY, |m, &x| m.min(x.abs()));

    if target >= nnz as f64 {
        // No finite solution: the objective never exceeds nnz. Return the
        // untruncated limit.
        let tau = max_abs;
        return Ok(CalibratedTau {
            tau,
            residual: calibration_objective(values, tau) - target,
            saturated: true,
        });
    }

    let sum_sq: f64 = values.iter().map(|&x| x * x).sum();
    // objective(max_abs) == sum_sq / max_abs^2, so the closed-form branch is
    // exactly the tau >= max|x| regime.
    let closed = (sum_sq / target).sqrt();
    if closed >= max_abs {
        return Ok(CalibratedTau {
            tau: closed,
            residual: calibration_objective(values, closed) - target,
            saturated: false,
        });
    }

    let mut lo = min_nonzero * 1e-12;
    let mut hi = max_abs;
    let mut tau = 0.5 * (lo + hi);
    let tol = CALIBRATE_REL_TOL * target;
    for _ in 0..CALIBRATE_MAX_ITER {
        tau = 0.5 * (lo + hi);
        let g = calibration_objective(values, tau);
        if (g - target).abs() <= tol {
            break;
        }
        // Objective is non-increasing in tau.
        if g > target {
            lo = tau;
        } else {
            hi = tau;
        }
    }
    Ok(CalibratedTau {
        tau,
        residual: calibration_objective(values, tau) - target,
        saturated: false,
    })
}

/// Calibrated level matrices for the index-coefficient pipeline, with the
/// per-cell equation residuals retained for reporting.
#[derive(Debug, Clone)]
pub struct CalibratedLevels {
    /// d1 x d2 levels for the products `y * S(X)_j * z_k`.
    pub gamma1: TruncationMatrix,
    /// d2 x d2 levels for the products `z_k * z_s`.
    pub gamma2: TruncationMatrix,
    pub residuals1: DenseMatrix,
    pub residuals2: DenseMatrix,
    /// Cells whose target exceeded the nonzero count (untruncated limit).
    pub saturated1: Vec<(usize, usize)>,
    pub saturated2: Vec<(usize, usize)>,
    pub target1: f64,
    pub target2: f64,
}

/// Solves the adaptive calibration equations for every cell of the two level
/// matrices: target1 (default `10 log(d1 d2)`) for the cross-moment products
/// and target2 (default `10 log d2`) for the second-moment products.
pub fn calibrate_vicm_levels(
    samples: &[VicmSample],
    score: ScoreKind,
    target1: f64,
    target2: f64,
) -> Result<CalibratedLevels> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::InsufficientData { needed: 2, got: n });
    }
    let d1 = samples[0].x.len();
    let d2 = samples[0].z.len();
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

    let cells1: Vec<(usize, usize)> = (0..d1)
        .flat_map(|j| (0..d2).map(move |k| (j, k)))
        .collect();
    let solved1: Vec<Result<CalibratedTau>> = cells1
        .par_iter()
        .map(|&(j, k)| {
            let products: Vec<f64> = samples
                .iter()
                .map(|s| s.y * score_component(score, s.x[j]) * s.z[k])
                .collect();
            calibrate_tau(&products, target1).map_err(|e| attach_cell(e, "gamma1", j, k))
        })
        .collect();

    let cells2: Vec<(usize, usize)> = (0..d2)
        .flat_map(|k| (0..d2).map(move |s| (k, s)))
        .collect();
    let solved2: Vec<Result<CalibratedTau>> = cells2
        .par_iter()
        .map(|&(k, s)| {
            let products: Vec<f64> = samples.iter().map(|smp| smp.z[k] * smp.z[s]).collect();
            calibrate_tau(&products, target2).map_err(|e| attach_cell(e, "gamma2", k, s))
        })
        .collect();

    let mut levels1 = DenseMatrix::zeros(d1, d2);
    let mut residuals1 = DenseMatrix::zeros(d1, d2);
    let mut saturated1 = Vec::new();
    for (&(j, k), r) in cells1.iter().zip(solved1) {
        let c = r?;
        levels1[(j, k)] = c.tau;
        residuals1[(j, k)] = c.residual;
        if c.saturated {
            saturated1.push((j, k));
        }
    }
    let mut levels2 = DenseMatrix::zeros(d2, d2);
    let mut residuals2 = DenseMatrix::zeros(d2, d2);
    let mut saturated2 = Vec::new();
    for (&(k, s), r) in cells2.iter().zip(solved2) {
        let c = r?;
        levels2[(k, s)] = c.tau;
        residuals2[(k, s)] = c.residual;
        if c.saturated {
            saturated2.push((k, s));
        }
    }

    Ok(CalibratedLevels {
        gamma1: TruncationMatrix::new(levels1)?,
        gamma2: TruncationMatrix::new(levels2)?,
        residuals1,
        residuals2,
        saturated1,
        saturated2,
        target1,
        target2,
    })
}

fn attach_cell(e: Error, which: &str, i: usize, j: usize) -> Error {
    match e {
        Error::DegenerateData { what } => Error::DegenerateData {
            what: format!("{which}[{i},{j}]: {what}"),
        },
        other => other,
    }
}

/// Default calibration targets: `factor * log(d1 * d2)` and `factor * log d2`
/// with factor 10.
pub fn default_targets(d1: usize, d2: usize, factor: f64) -> (f64, f64) {
    (
        factor * ((d1 * d2) as f64).ln(),
        factor * (d2 as f64).ln(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn psi_basic_values() {
        assert_eq!(psi(5.0, 2.0), 2.0);
        assert_eq!(psi(-0.5, 2.0), -0.5);
        assert_eq!(psi(0.0, 3.7), 0.0);
        assert_eq!(psi(-9.0, 1.5), -1.5);
    }

    #[test]
    #[should_panic(expected = "truncation level must be positive")]
    fn psi_rejects_nonpositive_level() {
        psi(1.0, 0.0);
    }

    #[test]
    fn psi_matrix_cases() {
        let lv = TruncationMatrix::uniform(1, 2, 1.0).unwrap();
        let m = DenseMatrix::from_rows(&[&[3.0, -3.0]]);
        assert_eq!(psi_matrix(&m, &lv).unwrap().entries(), &[1.0, -1.0]);

        let small = DenseMatrix::from_rows(&[&[0.3, -0.9]]);
        assert_eq!(psi_matrix(&small, &lv).unwrap(), small);

        let mixed_levels =
            TruncationMatrix::new(DenseMatrix::from_rows(&[&[1.0, 2.0]])).unwrap();
        let mixed = DenseMatrix::from_rows(&[&[0.5, 10.0]]);
        assert_eq!(
            psi_matrix(&mixed, &mixed_levels).unwrap().entries(),
            &[0.5, 2.0]
        );

        let wrong = DenseMatrix::zeros(2, 2);
        assert!(psi_matrix(&wrong, &lv).is_err());
    }

    #[test]
    fn truncation_matrix_rejects_nonpositive_levels() {
        let bad = DenseMatrix::from_rows(&[&[1.0, 0.0]]);
        assert!(TruncationMatrix::new(bad).is_err());
    }

    #[test]
    fn calibrate_constant_data_closed_form() {
        // n copies of c > 0 with target z < n solve exactly to c * sqrt(n/z).
        let n = 40;
        let c = 2.5;
        let z = 7.0;
        let values = vec![c; n];
        let got = calibrate_tau(&values, z).unwrap();
        assert!(!got.saturated);
        assert_abs_diff_eq!(got.tau, c * (n as f64 / z).sqrt(), epsilon = 1e-9);
        assert!(got.residual.abs() <= 1e-9 * z);
    }

    #[test]
    fn calibrate_single_nonzero() {
        let got = calibrate_tau(&[1.0, 0.0, 0.0], 0.5).unwrap();
        assert_abs_diff_eq!(got.tau, 2.0_f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn calibrate_high_dimensional_target() {
        // target = 10 log(d1 d2) with d1 = 200, d2 = 9.
        let target = 10.0 * (200.0_f64 * 9.0).ln();
        assert_abs_diff_eq!(target, 74.96, epsilon = 0.005);
        let values: Vec<f64> = (1..=500).map(|i| ((i * 37) % 101) as f64 / 9.0 - 5.0).collect();
        let got = calibrate_tau(&values, target).unwrap();
        assert!(got.residual.abs() <= 1e-6 * target);
    }

    #[test]
    fn calibrate_degenerate_and_saturated() {
        assert!(matches!(
            calibrate_tau(&[0.0, 0.0], 1.0),
            Err(Error::DegenerateData { .. })
        ));
        // target >= nonzero count: untruncated limit, flagged.
        let got = calibrate_tau(&[1.0, -2.0, 3.0], 5.0).unwrap();
        assert!(got.saturated);
        assert_eq!(got.tau, 3.0);
    }

    #[test]
    fn calibrate_monotone_in_target() {
        let values: Vec<f64> = (0..200).map(|i| ((i * 13 + 5) % 47) as f64 - 23.0).collect();
        let mut last = f64::INFINITY;
        for target in [2.0, 5.0, 10.0, 30.0, 80.0] {
            let tau = calibrate_tau(&values, target).unwrap().tau;
            assert!(tau <= last + 1e-12, "target {target}: tau {tau} > {last}");
            last = tau;
        }
    }

    #[test]
    fn calibrate_residuals_on_random_data() {
        use crate::core::rng::RngHandle;
        use crate::core::sampling::standard_normal;
        let mut rng = RngHandle::new(0xca11b);
        for trial in 0..500 {
            let n = 20 + (trial % 200);
            let values: Vec<f64> = (0..n).map(|_| 3.0 * standard_normal(&mut rng)).collect();
            let nnz = values.iter().filter(|&&v| v != 0.0).count() as f64;
            let target = 0.5 + 0.8 * nnz * ((trial % 7) as f64 / 7.0);
            let target = target.min(0.9 * nnz).max(0.5);
            let got = calibrate_tau(&values, target).unwrap();
            assert!(
                got.residual.abs() <= 1e-6 * target,
                "trial {trial}: residual {} target {target}",
                got.residual
            );
        }
    }

    #[test]
    fn vicm_levels_zero_column_is_named() {
        let samples = vec![
            VicmSample::new(1.0, vec![1.0], vec![0.0, 1.0]),
            VicmSample::new(-1.0, vec![2.0], vec![0.0, -1.0]),
        ];
        let err = calibrate_vicm_levels(&samples, ScoreKind::Gaussian, 1.0, 1.0).unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("gamma"), "unexpected message: {msg}");
        assert!(msg.contains("0"), "unexpected message: {msg}");
    }

    #[test]
    fn vicm_levels_scalar_reduction_and_determinism() {
        // d1 = d2 = 1 with constant products reduces to the scalar closed form.
        let samples: Vec<VicmSample> = (0..10)
            .map(|_| VicmSample::new(2.0, vec![1.0], vec![1.0]))
            .collect();
        // products y * S(x) * z = 2 (gaussian score of 1 is 1).
        let target = 2.5;
        let lv = calibrate_vicm_levels(&samples, ScoreKind::Gaussian, target, target).unwrap();
        assert_abs_diff_eq!(
            lv.gamma1.level(0, 0),
            2.0 * (10.0 / target).sqrt(),
            epsilon = 1e-9
        );

        let again = calibrate_vicm_levels(&samples, ScoreKind::Gaussian, target, target).unwrap();
        assert_eq!(lv.gamma1.levels(), again.gamma1.levels());
        assert_eq!(lv.gamma2.levels(), again.gamma2.levels());
    }
}
