//! Exact linear algebra: matrices, canonical subspaces, symmetric tensors
//! and quotients.

mod form;
mod mat;
mod quotient;
mod subspace;

pub use form::{coisotropy_witness, is_coisotropic, is_coisotropic_by_quotient, SymBilinearForm, SymBivector};
pub use mat::Mat;
pub use quotient::{QuotientSpace, SubQuotient};
pub use subspace::Subspace;

use crate::Scalar;

pub fn dot<F: Scalar>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn vadd<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn vsub<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn vscale<F: Scalar>(c: &F, a: &[F]) -> Vec<F> {
    a.iter().map(|x| c.clone() * x.clone()).collect()
}

pub fn vneg<F: Scalar>(a: &[F]) -> Vec<F> {
    a.iter().map(|x| -x.clone()).collect()
}

pub fn is_zero_vec<F: Scalar>(a: &[F]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn zero_vec<F: Scalar>(n: usize) -> Vec<F> {
    vec![F::zero(); n]
}

pub fn unit_vec<F: Scalar>(n: usize, i: usize) -> Vec<F> {
    let mut v = zero_vec(n);
    v[i] = F::one();
    v
}

pub fn vec_from_i64<F: Scalar>(v: &[i64]) -> Vec<F> {
    v.iter().map(|&x| F::from_i64(x)).collect()
}

/// Formats a vector as `(a, b, c)`; used for witnesses in reports.
pub fn fmt_vec<F: Scalar>(v: &[F]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}
