//! Lie algebras given by structure constants, morphisms, matrix
//! representations and invariant metrics.

mod algebra;
mod metrized;
mod morphism;

pub use algebra::{default_labels, LieAlgebra};
pub use metrized::MetrizedLieAlgebra;
pub use morphism::{LieMorphism, MatrixRep, RepReport};
