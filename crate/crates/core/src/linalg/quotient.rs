use super::{Mat, Subspace};
use crate::error::{Error, Result};
use crate::Scalar;

/// `F^n / K` in the coordinates not occupied by pivots of `K`'s RREF basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuotientSpace<F> {
    kernel: Subspace<F>,
    projection: Mat<F>,
    section: Mat<F>,
}

impl<F: Scalar> QuotientSpace<F> {
    pub fn new(kernel: Subspace<F>) -> Self {
        let n = kernel.ambient();
        let pivots = kernel.pivots().to_vec();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let basis = kernel.basis();
        // pi(x)_j = x_{free_j} - sum_i x_{pivot_i} k_i[free_j]
        let projection = Mat::from_fn(free.len(), n, |j, c| {
            if c == free[j] {
                F::one()
            } else if let Some(i) = pivots.iter().position(|&p| p == c) {
                -basis.get(i, free[j]).clone()
            } else {
                F::zero()
            }
        });
        let section = Mat::from_fn(n, free.len(), |r, j| {
            if r == free[j] {
                F::one()
            } else {
                F::zero()
            }
        });
        QuotientSpace {
            kernel,
            projection,
            section,
        }
    }

    pub fn ambient(&self) -> usize {
        self.kernel.ambient()
    }

    pub fn dim(&self) -> usize {
        self.projection.rows()
    }

    pub fn kernel(&self) -> &Subspace<F> {
        &self.kernel
    }

    pub fn projection(&self) -> &Mat<F> {
        &self.projection
    }

    pub fn section(&self) -> &Mat<F> {
        &self.section
    }

    pub fn project(&self, v: &[F]) -> Vec<F> {
        self.projection.mul_vec(v)
    }

    pub fn lift(&self, v: &[F]) -> Vec<F> {
        self.section.mul_vec(v)
    }
}

/// A subquotient `S / K` with `K ⊆ S ⊆ F^n`.
///
/// Coordinates on `S` are the pivot coordinates of its RREF basis; the
/// quotient then uses [`QuotientSpace`] coordinates inside `S`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubQuotient<F> {
    sub: Subspace<F>,
    kernel: Subspace<F>,
    inner: QuotientSpace<F>,
    lift: Mat<F>,
    project: Mat<F>,
}

impl<F: Scalar> SubQuotient<F> {
    pub fn new(sub: Subspace<F>, kernel: Subspace<F>) -> Result<Self> {
        if !sub.contains_subspace(&kernel) {
            return Err(Error::Invalid(format!(
                "{kernel} is not contained in {sub}"
            )));
        }
        // Left inverse of the basis embedding: read off pivot coordinates.
        let coords = Mat::from_fn(sub.dim(), sub.ambient(), |i, j| {
            if sub.pivots()[i] == j {
                F::one()
            } else {
                F::zero()
            }
        });
        let kernel_in_sub = kernel.image(&coords)?;
        let inner = QuotientSpace::new(kernel_in_sub);
        let lift = sub.basis_cols().try_mul(inner.section())?;
        let project = inner.projection().try_mul(&coords)?;
        Ok(SubQuotient {
            sub,
            kernel,
            inner,
            lift,
            project,
        })
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn sub(&self) -> &Subspace<F> {
        &self.sub
    }

    pub fn kernel(&self) -> &Subspace<F> {
        &self.kernel
    }

    /// `n x dim` matrix lifting quotient coordinates into `S ⊆ F^n`.
    pub fn lift(&self) -> &Mat<F> {
        &self.lift
    }

    /// `dim x n` matrix; only meaningful on vectors of `S`.
    pub fn project(&self) -> &Mat<F> {
        &self.project
    }

    pub fn project_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if !self.sub.contains(v) {
            return Err(Error::Invalid("vector outside the subspace being reduced".into()));
        }
        Ok(self.project.mul_vec(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vec_from_i64;
    use crate::Q;

    #[test]
    fn quotient_examples() {
        let q = QuotientSpace::<Q>::new(Subspace::zero(2));
        assert_eq!(q.projection(), &Mat::identity(2));
        assert_eq!(QuotientSpace::<Q>::new(Subspace::full(2)).dim(), 0);
        let q = QuotientSpace::<Q>::new(Subspace::span_i64(2, &[&[1, 1]]).unwrap());
        assert_eq!(q.dim(), 1);
        assert_eq!(q.project(&vec_from_i64(&[1, 1])), vec_from_i64(&[0]));
        assert_eq!(q.project(&vec_from_i64(&[0, 1])), vec_from_i64(&[1]));
        assert_eq!(q.projection() * q.section(), Mat::identity(1));
    }

    #[test]
    fn subquotient_dims() {
        let s = Subspace::<Q>::span_i64(3, &[&[1, 0, 0], &[0, 1, 1]]).unwrap();
        let k = Subspace::<Q>::span_i64(3, &[&[1, 1, 1]]).unwrap();
        let sq = SubQuotient::new(s, k.clone()).unwrap();
        assert_eq!(sq.dim(), 1);
        assert_eq!(sq.project_vec(&vec_from_i64(&[1, 1, 1])).unwrap(), vec_from_i64(&[0]));
        assert_eq!(&sq.project().clone() * sq.lift(), Mat::identity(1));
        assert!(SubQuotient::new(Subspace::<Q>::zero(3), k).is_err());
    }
}
