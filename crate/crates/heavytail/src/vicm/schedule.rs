//! Theory-driven tuning schedules for the index-coefficient estimator, given
//! oracle population quantities. The simulation lab prefers the data-driven
//! calibration; these calculators exist to check the n-scaling of the
//! theoretical choices.

/// Population quantities the schedules depend on.
#[derive(Debug, Clone, Copy)]
pub struct OracleInputs {
    /// Fourth-moment bound M on response, score components and loadings.
    pub moment_bound: f64,
    /// ||Omega*||_{1,1} of the true precision matrix.
    pub omega_l1: f64,
    /// l1-operator-norm bound varpi on Omega*.
    pub varpi: f64,
    /// max_j |mu*_j| over the link-derivative means.
    pub mu_max: f64,
    /// Maximum row sum ||Theta* Sigma*||_inf.
    pub theta_sigma_row_sum: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSchedule {
    /// Cross-moment truncation level (uniform over cells).
    pub tau1: f64,
    /// Second-moment truncation level (uniform over cells).
    pub tau2: f64,
    /// CLIME constraint slack.
    pub gamma: f64,
    /// Soft-threshold penalty.
    pub lambda: f64,
}

/// Evaluates the theoretical schedules
/// `tau1 = M^{3/4} sqrt(n / log(d1 d2))`, `tau2 = M^{1/2} sqrt(n / log d2)`,
/// `gamma = M^{1/2} varpi sqrt(log d2 / n)` and the two-term lambda.
pub fn oracle_schedule(inputs: &OracleInputs, n: u64, d1: usize, d2: usize) -> OracleSchedule {
    let m = inputs.moment_bound;
    let n = n as f64;
    let log_d1d2 = ((d1 * d2) as f64).ln();
    let log_d2 = (d2 as f64).ln();
    let tau1 = m.powf(0.75) * (n / log_d1d2).sqrt();
    let tau2 = m.sqrt() * (n / log_d2).sqrt();
    let gamma = m.sqrt() * inputs.varpi * (log_d2 / n).sqrt();
    let lambda = 8.0 * m.powf(0.75) * inputs.omega_l1 * (3.0 * log_d1d2 / n).sqrt()
        + 16.0
            * inputs.mu_max
            * inputs.theta_sigma_row_sum
            * m.sqrt()
            * inputs.varpi
            * inputs.varpi
            * (4.0 * log_d2 / n).sqrt();
    OracleSchedule {
        tau1,
        tau2,
        gamma,
        lambda,
    }
}
