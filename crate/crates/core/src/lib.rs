//! Exact finite-dimensional toolkit for Dirac-Manin triples, their doubles
//! and reductions, linear groupoids, dressing actions and the classification
//! data of Dirac actions on homogeneous spaces.
//!
//! Everything is generic over an exact [`Scalar`]; the aliases below fix it
//! to `BigRational`, which is what the CLI and the fixtures use.

pub mod catalog;
pub mod dressing;
pub mod error;
pub mod format;
pub mod lie;
pub mod groupoid;
pub mod homsp;
pub mod linalg;
pub mod manin;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Q = num_rational::BigRational;
pub type QMat = linalg::Mat<Q>;
pub type QSubspace = linalg::Subspace<Q>;
