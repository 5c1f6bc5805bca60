//! Log-log rate fitting: ordinary least squares of log(mean error) on log(n).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::simlab::{EstimatorTag, ExperimentRecord};

/// Fitted line `log(error) = intercept + slope * log(n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeFit {
    pub intercept: f64,
    pub slope: f64,
    pub r_squared: f64,
    pub points: usize,
}

/// Mean error over replicates for one (estimator, noise, n) group.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanPoint {
    pub estimator: EstimatorTag,
    pub noise: String,
    pub n: u64,
    pub mean_error: f64,
    pub replicates: usize,
}

/// Replicate means per group, in deterministic (noise, estimator, n) order.
pub fn group_means(records: &[ExperimentRecord]) -> Vec<MeanPoint> {
    let mut groups: BTreeMap<(String, u8, u64), (f64, usize)> = BTreeMap::new();
    for r in records {
        let e = groups
            .entry((r.noise.clone(), r.estimator as u8, r.n))
            .or_insert((0.0, 0));
        e.0 += r.error;
        e.1 += 1;
    }
    groups
        .into_iter()
        .map(|((noise, est, n), (sum, count))| MeanPoint {
            estimator: if est == 0 {
                EstimatorTag::Robust
            } else {
                EstimatorTag::Standard
            },
            noise,
            n,
            mean_error: sum / count as f64,
            replicates: count,
        })
        .collect()
}

/// OLS on pre-built (log n, log error) points.
pub fn fit_points(points: &[(f64, f64)]) -> Result<SlopeFit> {
    if points.len() < 3 {
        return Err(Error::InsufficientData {
            needed: 3,
            got: points.len(),
        });
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.0 - mean_x)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - mean_y) * (p.1 - mean_y)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateData {
            what: "all points share one n; cannot fit a slope".into(),
        });
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = points
        .iter()
        .map(|p| {
            let fitted = intercept + slope * p.0;
            (p.1 - fitted) * (p.1 - fitted)
        })
        .sum();
    let r_squared = if syy <= 1e-30 {
        1.0
    } else {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    };
    Ok(SlopeFit {
        intercept,
        slope,
        r_squared,
        points: points.len(),
    })
}

/// Fits the rate line for one (estimator, noise) group of records, averaging
/// replicates at each n first. Requires at least three distinct n values and
/// strictly positive mean errors.
pub fn fit_loglog_slope(
    records: &[ExperimentRecord],
    estimator: EstimatorTag,
    noise: &str,
) -> Result<SlopeFit> {
    let points: Vec<(f64, f64)> = group_means(records)
        .into_iter()
        .filter(|m| m.estimator == estimator && m.noise == noise)
        .map(|m| {
            if m.mean_error <= 0.0 {
                Err(Error::DegenerateData {
                    what: format!("mean error {} at n = {} has no logarithm", m.mean_error, m.n),
                })
            } else {
                Ok(((m.n as f64).ln(), m.mean_error.ln()))
            }
        })
        .collect::<Result<_>>()?;
    fit_points(&points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn record(noise: &str, n: u64, rep: u64, error: f64) -> ExperimentRecord {
        ExperimentRecord {
            experiment: "test".into(),
            estimator: EstimatorTag::Robust,
            noise: noise.into(),
            n,
            replicate: rep,
            error,
            converged: true,
            seconds: 0.0,
        }
    }

    #[test]
    fn exact_power_law_recovers_exponent() {
        let records: Vec<ExperimentRecord> = [100u64, 400, 1600, 6400]
            .iter()
            .map(|&n| record("t", n, 0, (n as f64).powf(-0.5)))
            .collect();
        let fit = fit_loglog_slope(&records, EstimatorTag::Robust, "t").unwrap();
        assert_abs_diff_eq!(fit.slope, -0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(fit.r_squared, 1.0, epsilon = 1e-12);
        assert_eq!(fit.points, 4);
    }

    #[test]
    fn constant_errors_give_zero_slope() {
        let records: Vec<ExperimentRecord> = [100u64, 200, 400]
            .iter()
            .map(|&n| record("t", n, 0, 0.37))
            .collect();
        let fit = fit_loglog_slope(&records, EstimatorTag::Robust, "t").unwrap();
        assert_abs_diff_eq!(fit.slope, 0.0, epsilon = 1e-14);
        assert_eq!(fit.r_squared, 1.0);
    }

    #[test]
    fn too_few_points_is_an_error() {
        let records = vec![record("t", 100, 0, 1.0), record("t", 200, 0, 0.5)];
        assert!(matches!(
            fit_loglog_slope(&records, EstimatorTag::Robust, "t"),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn replicates_average_before_fitting() {
        let mut records = Vec::new();
        for &n in &[100u64, 400, 1600] {
            // Mean of the two replicates is n^{-1/2}.
            let e = (n as f64).powf(-0.5);
            records.push(record("t", n, 0, 0.5 * e));
            records.push(record("t", n, 1, 1.5 * e));
        }
        let fit = fit_loglog_slope(&records, EstimatorTag::Robust, "t").unwrap();
        assert_abs_diff_eq!(fit.slope, -0.5, epsilon = 1e-12);
    }
}
