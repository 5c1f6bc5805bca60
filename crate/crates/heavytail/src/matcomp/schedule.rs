//! Moment-adapted tuning schedules for the completion estimator.
//!
//! With D = (d1 v d2) log(d1 + d2) and noise moment index alpha:
//!
//! ```text
//!     tau    = C1 * (L n / D)^(1/alpha)
//!     lambda = C2 * (D / n)^((alpha-1)/alpha) * (L^(1/alpha) delta + R delta + L^(1/alpha))
//! ```
//!
//! The error-rate exponent (alpha-1)/alpha saturates at 1/2: moment indices
//! above 2 buy nothing, so alpha is clamped to 2 before the exponents are
//! formed (equivalently, exponents max(1/alpha, 1/2) and
//! min((alpha-1)/alpha, 1/2)).

use super::McConfig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TuningSchedule {
    pub tau: f64,
    pub lambda: f64,
    /// False when n < (d1 v d2) log(d1 + d2); the schedule still evaluates,
    /// the flag is a warning.
    pub sample_size_ok: bool,
}

/// Evaluates the truncation and penalty schedules at sample size `n` for a
/// noise-scale proxy `l_alpha > 0`.
pub fn tuning_schedule(cfg: &McConfig, n: u64, l_alpha: f64) -> TuningSchedule {
    assert!(l_alpha > 0.0, "l_alpha must be positive");
    let alpha = cfg.moment_index.min(2.0);
    let dmax = cfg.d1.max(cfg.d2) as f64;
    let dim_factor = dmax * ((cfg.d1 + cfg.d2) as f64).ln();
    let nf = n as f64;

    let tau = cfg.tau_scale * (l_alpha * nf / dim_factor).powf(1.0 / alpha);
    let l_pow = l_alpha.powf(1.0 / alpha);
    let delta = cfg.confidence;
    let lambda = cfg.lambda_scale
        * (dim_factor / nf).powf((alpha - 1.0) / alpha)
        * (l_pow * delta + cfg.max_norm_budget * delta + l_pow);

    TuningSchedule {
        tau,
        lambda,
        sample_size_ok: nf >= dim_factor,
    }
}
