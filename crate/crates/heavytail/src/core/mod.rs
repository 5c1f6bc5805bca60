//! Foundational numeric types: dense matrices, factorizations, deterministic
//! randomness and the heavy-tailed samplers.
//!
//! Everything here is immutable after construction and safe to share across
//! threads; [`RngHandle`] is single-owner and splits into independent child
//! streams for parallel work.

pub mod linalg;
pub mod matrix;
pub mod rng;
pub mod sampling;

pub use linalg::{matrix_norms, svd, MatrixNorms, SvdResult};
pub use matrix::DenseMatrix;
pub use rng::RngHandle;
pub use sampling::{sample_multivariate_t, sample_student_t, MultivariateT};
