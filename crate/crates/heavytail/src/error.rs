use thiserror::Error;

/// Error type shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Matrix or vector dimensions do not line up.
    #[error("shape mismatch in {context}: expected {expected}, got {got}")]
    Shape {
        context: &'static str,
        expected: String,
        got: String,
    },

    /// A scalar parameter is outside its admissible range.
    #[error("invalid parameter {name}: {reason}")]
    Parameter { name: &'static str, reason: String },

    /// An iterative numeric routine failed to converge or a factorization broke down.
    #[error("numerical failure in {op} on a {rows}x{cols} matrix")]
    NumericalFailure {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    /// Input data cannot support the requested computation (e.g. all-zero column).
    #[error("degenerate data: {what}")]
    DegenerateData { what: String },

    /// A sample carries an out-of-range index or a non-finite value.
    #[error("bad sample at position {position}: {reason}")]
    Data { position: usize, reason: String },

    /// A CLIME column program has an empty feasible region.
    #[error("infeasible linear program for column {column} at gamma = {gamma}")]
    Infeasible { column: usize, gamma: f64 },

    /// Not enough data points for a fit.
    #[error("insufficient data: need {needed}, got {got}")]
    InsufficientData { needed: usize, got: usize },

    /// Configuration file is missing, malformed, or semantically invalid.
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status for the CLI: 2 for validation problems, 3 for
    /// numerical/data failures discovered while computing.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Shape { .. }
            | Error::Parameter { .. }
            | Error::Config(_)
            | Error::InsufficientData { .. }
            | Error::Io(_) => 2,
            Error::NumericalFailure { .. }
            | Error::DegenerateData { .. }
            | Error::Data { .. }
            | Error::Infeasible { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
