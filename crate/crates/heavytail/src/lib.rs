//! Robust estimation for heavy-tailed regression.
//!
//! Two estimators built around the clipping map
//! `psi(x, tau) = sign(x) * min(|x|, tau)`:
//!
//! - **Matrix completion** ([`matcomp`]): noisy single-entry observations of
//!   a low-rank matrix with heavy-tailed responses. Responses are truncated
//!   at a moment-adapted level and the nuclear-norm-penalized quadratic is
//!   solved by ADMM under a max-norm box. The error-rate exponent moves
//!   continuously with the noise moment index and saturates at the
//!   square-root rate.
//! - **Varying index coefficient models** ([`vicm`]): directions of
//!   `y = sum_k z_k f_k(<X, theta_k>) + eps` recovered without knowing the
//!   links, via a score-function moment identity, element-wise truncated
//!   moment matrices, CLIME precision recovery and a closed-form
//!   soft-threshold step.
//!
//! [`transforms`] houses truncation and the data-driven level calibration;
//! [`simlab`] generates synthetic data and drives seeded rate experiments;
//! [`cli`] backs the `heavytail` binary (subcommands `mc-experiment`,
//! `vicm-experiment`, `calibrate`).
//!
//! Randomness is fully deterministic: every sampler draws from a ChaCha12
//! stream keyed by a user seed, and parallel replicates use independent
//! child streams, so identical seeds give identical results on any machine
//! and any thread count.
//!
//! The `examples/` directory has one runnable program per major capability;
//! start with `cargo run --release --example matrix_completion`.

pub mod cli;
pub mod core;
pub mod error;
pub mod matcomp;
pub mod simlab;
pub mod transforms;
pub mod vicm;

pub use error::{Error, Result};
