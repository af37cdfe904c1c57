use super::LieAlgebra;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{Mat, SymBilinearForm};
use crate::Scalar;

/// Linear map between Lie algebras, not yet known to respect brackets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieMorphism<F> {
    pub source: LieAlgebra<F>,
    pub target: LieAlgebra<F>,
    pub matrix: Mat<F>,
}

impl<F: Scalar> LieMorphism<F> {
    pub fn new(source: LieAlgebra<F>, target: LieAlgebra<F>, matrix: Mat<F>) -> Result<Self> {
        check_dim("morphism rows", target.dim(), matrix.rows())?;
        check_dim("morphism columns", source.dim(), matrix.cols())?;
        Ok(LieMorphism {
            source,
            target,
            matrix,
        })
    }

    /// First basis pair `(i, j)` with `f[e_i, e_j] != [f e_i, f e_j]`.
    pub fn failure(&self) -> Option<(usize, usize)> {
        let n = self.source.dim();
        let cols = self.matrix.to_cols();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.matrix.mul_vec(&self.source.bracket_basis(i, j));
                let rhs = self.target.bracket(&cols[i], &cols[j]);
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_morphism(&self) -> bool {
        self.failure().is_none()
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.dim()
    }

    pub fn is_bijective(&self) -> bool {
        self.matrix.is_square() && self.matrix.is_invertible()
    }
}

/// Matrix representation `rho: L -> gl(rep_dim)`, one image per basis vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixRep<F> {
    algebra: LieAlgebra<F>,
    rep_dim: usize,
    images: Vec<Mat<F>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepReport {
    pub homomorphism: bool,
    pub faithful: bool,
    /// First basis pair where `rho[e_i, e_j] != [rho e_i, rho e_j]`.
    pub failing_pair: Option<(usize, usize)>,
}

impl<F: Scalar> MatrixRep<F> {
    pub fn new(algebra: LieAlgebra<F>, rep_dim: usize, images: Vec<Mat<F>>) -> Result<Self> {
        check_dim("representation images", algebra.dim(), images.len())?;
        for m in &images {
            check_dim("representation image rows", rep_dim, m.rows())?;
            check_dim("representation image columns", rep_dim, m.cols())?;
        }
        Ok(MatrixRep {
            algebra,
            rep_dim,
            images,
        })
    }

    pub fn algebra(&self) -> &LieAlgebra<F> {
        &self.algebra
    }

    pub fn rep_dim(&self) -> usize {
        self.rep_dim
    }

    pub fn images(&self) -> &[Mat<F>] {
        &self.images
    }

    pub fn image_of(&self, x: &[F]) -> Mat<F> {
        let mut out = Mat::zeros(self.rep_dim, self.rep_dim);
        for (c, m) in x.iter().zip(&self.images) {
            if !c.is_zero() {
                out = &out + &m.scale(c);
            }
        }
        out
    }

    /// `rep_dim^2 x dim` matrix whose columns are the flattened images.
    fn coordinate_map(&self) -> Mat<F> {
        let cols: Vec<Vec<F>> = self.images.iter().map(|m| m.flatten()).collect();
        Mat::from_cols(self.rep_dim * self.rep_dim, &cols).expect("flattened image length")
    }

    pub fn check(&self) -> RepReport {
        let n = self.algebra.dim();
        let mut failing_pair = None;
        'outer: for i in 0..n {
            for j in i + 1..n {
                let lhs = self.image_of(&self.algebra.bracket_basis(i, j));
                if lhs != self.images[i].commutator(&self.images[j]) {
                    failing_pair = Some((i, j));
                    break 'outer;
                }
            }
        }
        RepReport {
            homomorphism: failing_pair.is_none(),
            faithful: self.coordinate_map().rank() == n,
            failing_pair,
        }
    }

    /// Coordinates of a matrix lying in the image of the representation.
    pub fn coords_of(&self, m: &Mat<F>) -> Result<Vec<F>> {
        let sol = self
            .coordinate_map()
            .solve(&m.flatten())
            .ok_or_else(|| Error::InvalidGroupElement("matrix is outside the represented algebra".into()))?;
        if self.image_of(&sol) != *m {
            return Err(Error::InvalidGroupElement("matrix is outside the represented algebra".into()));
        }
        Ok(sol)
    }

    /// `B(x, y) = tr(rho(x) rho(y))`.
    pub fn trace_form(&self) -> SymBilinearForm<F> {
        let n = self.algebra.dim();
        let g = Mat::from_fn(n, n, |i, j| (&self.images[i] * &self.images[j]).trace());
        SymBilinearForm::new(g).expect("trace pairing is symmetric")
    }

    /// Representation of `L1 ⊕ L2` by block-diagonal matrices.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let z1 = Mat::zeros(self.rep_dim, self.rep_dim);
        let z2 = Mat::zeros(other.rep_dim, other.rep_dim);
        let mut images: Vec<Mat<F>> = self.images.iter().map(|m| m.block_diag(&z2)).collect();
        images.extend(other.images.iter().map(|m| z1.block_diag(m)));
        MatrixRep {
            algebra: self.algebra.direct_sum(&other.algebra),
            rep_dim: self.rep_dim + other.rep_dim,
            images,
        }
    }
}
