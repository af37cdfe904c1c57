use std::fmt;

use super::{is_zero_vec, Mat, SymBilinearForm};
use crate::error::{check_dim, Error, Result};
use crate::Scalar;

/// A subspace of `F^n`, stored as the rows of its reduced row-echelon basis.
///
/// The RREF representative is unique, so equality of subspaces is plain
/// equality of the stored matrices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Mat<F>,
    pivots: Vec<usize>,
}

impl<F: Scalar> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: &[Vec<F>]) -> Result<Self> {
        let m = Mat::from_rows(ambient, vectors.to_vec())?;
        Ok(Self::row_space(&m))
    }

    pub fn span_i64(ambient: usize, vectors: &[&[i64]]) -> Result<Self> {
        let vs: Vec<Vec<F>> = vectors.iter().map(|v| super::vec_from_i64(v)).collect();
        Self::span(ambient, &vs)
    }

    /// Span of the rows of `m`.
    pub fn row_space(m: &Mat<F>) -> Self {
        let (r, pivots) = m.rref();
        let basis = r.select_rows(&(0..pivots.len()).collect::<Vec<_>>());
        Subspace {
            ambient: m.cols(),
            basis,
            pivots,
        }
    }

    /// Span of the columns of `m`, i.e. its image.
    pub fn column_space(m: &Mat<F>) -> Self {
        Self::row_space(&m.transpose())
    }

    pub fn coordinate(ambient: usize, idx: &[usize]) -> Self {
        let vs: Vec<Vec<F>> = idx.iter().map(|&i| super::unit_vec(ambient, i)).collect();
        Self::span(ambient, &vs).expect("coordinate indices in range")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// RREF basis, one vector per row.
    pub fn basis(&self) -> &Mat<F> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<F>> {
        self.basis.to_rows()
    }

    /// `ambient x dim` matrix whose columns are the basis vectors.
    pub fn basis_cols(&self) -> Mat<F> {
        self.basis.transpose()
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[F]) -> Option<Vec<F>> {
        if v.len() != self.ambient {
            return None;
        }
        let c: Vec<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.basis.vec_mul(&c);
        (back.as_slice() == v).then_some(c)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.ambient == self.ambient && other.basis.to_rows().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        check_dim("subspace sum", self.ambient, other.ambient)?;
        Ok(Self::row_space(&self.basis.vstack(&other.basis)?))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        check_dim("subspace intersection", self.ambient, other.ambient)?;
        self.annihilator().sum(&other.annihilator()).map(|s| s.annihilator())
    }

    /// `{mu : mu(x) = 0 for all x in S}` in the dual coordinates.
    pub fn annihilator(&self) -> Self {
        let null = self.basis.nullspace();
        Self::span(self.ambient, &null).expect("nullspace vectors have ambient length")
    }

    /// `{x : <x, s> = 0 for all s in S}`; the form may be degenerate.
    pub fn orth_complement(&self, form: &SymBilinearForm<F>) -> Result<Self> {
        check_dim("orthogonal complement", self.ambient, form.dim())?;
        let m = self.basis.try_mul(form.gram())?;
        Ok(Self::span(self.ambient, &m.nullspace()).expect("nullspace vectors have ambient length"))
    }

    /// Image under the linear map `f`.
    pub fn image(&self, f: &Mat<F>) -> Result<Self> {
        check_dim("subspace image", f.cols(), self.ambient)?;
        Ok(Self::row_space(&self.basis.try_mul(&f.transpose())?))
    }

    /// Preimage `{x : f(x) in U}`.
    pub fn preimage(f: &Mat<F>, u: &Self) -> Result<Self> {
        check_dim("subspace preimage", f.rows(), u.ambient)?;
        let ann = u.annihilator();
        let m = ann.basis.try_mul(f)?;
        Ok(Self::span(f.cols(), &m.nullspace()).expect("nullspace vectors have ambient length"))
    }

    pub fn kernel(f: &Mat<F>) -> Self {
        Self::span(f.cols(), &f.nullspace()).expect("nullspace vectors have ambient length")
    }

    /// True when `self + other` is the whole space and the sum is direct.
    pub fn is_complement(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.dim() + other.dim() == self.ambient
            && self.sum(other).map(|s| s.is_full()).unwrap_or(false)
    }

    /// Projection onto `self` along the complementary subspace `along`.
    pub fn projector_along(&self, along: &Self) -> Result<Mat<F>> {
        if !self.is_complement(along) {
            return Err(Error::NotComplement(format!(
                "dimensions {} and {} in ambient {}",
                self.dim(),
                along.dim(),
                self.ambient
            )));
        }
        let t = self.basis_cols().hstack(&along.basis_cols())?;
        let mut keep = vec![F::zero(); self.ambient];
        for x in keep.iter_mut().take(self.dim()) {
            *x = F::one();
        }
        let t_inv = t.inverse()?;
        Ok(&(&t * &Mat::diag(&keep)) * &t_inv)
    }

    /// Some vector of `self` not in `other`, if any.
    pub fn witness_not_in(&self, other: &Self) -> Option<Vec<F>> {
        self.basis
            .to_rows()
            .into_iter()
            .find(|v| !other.contains(v) && !is_zero_vec(v))
    }
}

impl<F: Scalar> fmt::Display for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .basis
            .to_rows()
            .iter()
            .map(|v| super::fmt_vec(v))
            .collect();
        write!(f, "span{{{}}}", parts.join(", "))
    }
}
