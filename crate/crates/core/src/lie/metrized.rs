use super::LieAlgebra;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{SymBilinearForm, SymBivector};
use crate::Scalar;

/// Lie algebra with a nondegenerate ad-invariant symmetric form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MetrizedLieAlgebra<F> {
    pub algebra: LieAlgebra<F>,
    pub metric: SymBilinearForm<F>,
}

impl<F: Scalar> MetrizedLieAlgebra<F> {
    /// Checks nondegeneracy and invariance.
    pub fn new(algebra: LieAlgebra<F>, metric: SymBilinearForm<F>) -> Result<Self> {
        let m = Self::new_unchecked(algebra, metric)?;
        if !m.metric.is_nondegenerate() {
            return Err(Error::Degenerate);
        }
        if let Some(i) = m.invariance_failure() {
            return Err(Error::Invalid(format!(
                "metric is not ad-invariant under basis vector {i}"
            )));
        }
        Ok(m)
    }

    pub fn new_unchecked(algebra: LieAlgebra<F>, metric: SymBilinearForm<F>) -> Result<Self> {
        check_dim("metric dimension", algebra.dim(), metric.dim())?;
        Ok(MetrizedLieAlgebra { algebra, metric })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// First basis index `i` with `ad(e_i)` not skew for the metric.
    pub fn invariance_failure(&self) -> Option<usize> {
        (0..self.dim()).find(|&i| !self.metric.is_invariant_under(&self.algebra.ad_basis(i)))
    }

    /// The inverse of the metric, `gamma` in `S^2`.
    pub fn gamma(&self) -> Result<SymBivector<F>> {
        self.metric.inverse()
    }

    /// Same algebra with the metric negated.
    pub fn opposite(&self) -> Self {
        MetrizedLieAlgebra {
            algebra: self.algebra.clone(),
            metric: self.metric.neg(),
        }
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let g = self.metric.gram().block_diag(other.metric.gram());
        MetrizedLieAlgebra {
            algebra: self.algebra.direct_sum(&other.algebra),
            metric: SymBilinearForm::new(g).expect("block sum of symmetric forms"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Mat;
    use crate::lie::algebra::default_labels;
    use crate::Q;

    #[test]
    fn opposite_negates_metric_only() {
        let q = Q::from_i64;
        let l = LieAlgebra::from_records(
            default_labels(3),
            &[(0, 1, 2, q(1)), (0, 2, 0, q(-2)), (1, 2, 1, q(2))],
        )
        .unwrap();
        let b = SymBilinearForm::new(Mat::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 2]])).unwrap();
        let m = MetrizedLieAlgebra::new(l.clone(), b.clone()).unwrap();
        let o = m.opposite();
        assert_eq!(o.algebra, l);
        assert_eq!(o.metric, b.neg());
        assert!(o.invariance_failure().is_none());
    }

    #[test]
    fn rejects_non_invariant() {
        let q = Q::from_i64;
        let l = LieAlgebra::from_records(
            default_labels(3),
            &[(0, 1, 2, q(1)), (0, 2, 0, q(-2)), (1, 2, 1, q(2))],
        )
        .unwrap();
        assert!(MetrizedLieAlgebra::new(l, SymBilinearForm::new(Mat::identity(3)).unwrap()).is_err());
    }
}
