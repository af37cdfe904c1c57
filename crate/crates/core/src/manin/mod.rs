//! Dirac-Manin triples, the double `d ⋉ d*_beta`, coisotropic reduction and
//! the Manin pair `(q, g)` with its morphism `f_q: q -> d`.

mod double;
mod triple;

pub use double::{build_double, build_q_pair, check_q_pair, reduce_coisotropic, Double, ManinPair, QPair, Reduction};
pub use triple::{ad_invariance_failure, build_beta, check_ad_invariant_bivector, DiracManinTriple, TripleReport};
pub use crate::lie::MetrizedLieAlgebra;
