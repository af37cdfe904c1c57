use super::{Mat, QuotientSpace, Subspace};
use crate::error::{check_dim, Error, Result};
use crate::Scalar;

/// Symmetric bilinear form on `V`: `<x, y> = x^T G y`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymBilinearForm<F> {
    gram: Mat<F>,
}

/// Symmetric bivector, i.e. a symmetric form on `V*`: `beta(mu, nu) = mu^T B nu`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymBivector<F> {
    gram: Mat<F>,
}

macro_rules! sym_common {
    ($t:ident) => {
        impl<F: Scalar> $t<F> {
            pub fn new(gram: Mat<F>) -> Result<Self> {
                if !gram.is_symmetric() {
                    return Err(Error::Invalid(format!(
                        "{} gram matrix is not symmetric",
                        stringify!($t)
                    )));
                }
                Ok($t { gram })
            }

            pub fn zero(dim: usize) -> Self {
                $t {
                    gram: Mat::zeros(dim, dim),
                }
            }

            pub fn dim(&self) -> usize {
                self.gram.rows()
            }

            pub fn gram(&self) -> &Mat<F> {
                &self.gram
            }

            pub fn into_gram(self) -> Mat<F> {
                self.gram
            }

            pub fn is_nondegenerate(&self) -> bool {
                self.gram.is_invertible()
            }

            pub fn scale(&self, c: &F) -> Self {
                $t {
                    gram: self.gram.scale(c),
                }
            }

            pub fn neg(&self) -> Self {
                $t { gram: -&self.gram }
            }

            pub fn is_zero(&self) -> bool {
                self.gram.is_zero()
            }
        }
    };
}

sym_common!(SymBilinearForm);
sym_common!(SymBivector);

impl<F: Scalar> SymBilinearForm<F> {
    pub fn eval(&self, x: &[F], y: &[F]) -> F {
        self.gram.bilinear(x, y)
    }

    /// `x -> <x, .>` as a covector.
    pub fn flat(&self, x: &[F]) -> Vec<F> {
        self.gram.mul_vec(x)
    }

    /// Pullback `f^* G = F^T G F` along `f: U -> V`.
    pub fn pullback(&self, f: &Mat<F>) -> Result<Self> {
        check_dim("form pullback", self.dim(), f.rows())?;
        let g = f.transpose().try_mul(&self.gram)?.try_mul(f)?;
        Ok(SymBilinearForm { gram: g })
    }

    /// The bivector dual to a nondegenerate form.
    pub fn inverse(&self) -> Result<SymBivector<F>> {
        self.gram
            .inverse()
            .map(|gram| SymBivector { gram })
            .map_err(|_| Error::Degenerate)
    }

    /// True when `<[x,y],z> + <y,[x,z]> = 0` for the given adjoint matrices.
    pub fn is_invariant_under(&self, ad: &Mat<F>) -> bool {
        (&(&ad.transpose() * &self.gram) + &(&self.gram * ad)).is_zero()
    }
}

impl<F: Scalar> SymBivector<F> {
    pub fn pair(&self, mu: &[F], nu: &[F]) -> F {
        self.gram.bilinear(mu, nu)
    }

    /// `beta^sharp(mu) = B mu`.
    pub fn sharp(&self, mu: &[F]) -> Vec<F> {
        self.gram.mul_vec(mu)
    }

    /// Pushforward `f(beta) = F B F^T` along `f: V -> W`.
    pub fn pushforward(&self, f: &Mat<F>) -> Result<Self> {
        check_dim("bivector pushforward", self.dim(), f.cols())?;
        let g = f.try_mul(&self.gram)?.try_mul(&f.transpose())?;
        Ok(SymBivector { gram: g })
    }

    /// The form dual to a nondegenerate bivector.
    pub fn inverse(&self) -> Result<SymBilinearForm<F>> {
        self.gram
            .inverse()
            .map(|gram| SymBilinearForm { gram })
            .map_err(|_| Error::Degenerate)
    }

    /// Infinitesimal invariance under a derivation with matrix `ad`:
    /// `ad B + B ad^T = 0`.
    pub fn is_invariant_under(&self, ad: &Mat<F>) -> bool {
        (&(ad * &self.gram) + &(&self.gram * &ad.transpose())).is_zero()
    }
}

/// Coisotropy via the quotient: `pr_{V/U}(beta) = 0`.
pub fn is_coisotropic_by_quotient<F: Scalar>(u: &Subspace<F>, beta: &SymBivector<F>) -> Result<bool> {
    check_dim("coisotropy test", beta.dim(), u.ambient())?;
    let q = QuotientSpace::new(u.clone());
    Ok(beta.pushforward(q.projection())?.is_zero())
}

/// An annihilator vector `mu` with `beta^sharp(mu)` outside `U`, if any.
pub fn coisotropy_witness<F: Scalar>(u: &Subspace<F>, beta: &SymBivector<F>) -> Result<Option<Vec<F>>> {
    check_dim("coisotropy test", beta.dim(), u.ambient())?;
    Ok(u.annihilator()
        .basis_vectors()
        .into_iter()
        .find(|mu| !u.contains(&beta.sharp(mu))))
}

/// `beta` vanishes on `ann(U)`. Both characterizations are evaluated and
/// must agree.
pub fn is_coisotropic<F: Scalar>(u: &Subspace<F>, beta: &SymBivector<F>) -> Result<bool> {
    let by_quotient = is_coisotropic_by_quotient(u, beta)?;
    let by_sharp = coisotropy_witness(u, beta)?.is_none();
    debug_assert_eq!(by_quotient, by_sharp, "coisotropy characterizations disagree");
    Ok(by_quotient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn biv(rows: &[&[i64]]) -> SymBivector<Q> {
        SymBivector::new(Mat::from_i64(rows)).unwrap()
    }

    #[test]
    fn rejects_asymmetric() {
        assert!(SymBivector::<Q>::new(Mat::from_i64(&[&[0, 1], &[0, 0]])).is_err());
    }

    #[test]
    fn pushforward_examples() {
        let b = biv(&[&[0, 1], &[1, 0]]);
        assert_eq!(b.pushforward(&Mat::identity(2)).unwrap(), b);
        assert!(b.pushforward(&Mat::zeros(3, 2)).unwrap().is_zero());
        let pr = Mat::from_i64(&[&[1, 0]]);
        assert_eq!(b.pushforward(&pr).unwrap().gram(), &Mat::from_i64(&[&[0]]));
    }

    #[test]
    fn coisotropy_examples() {
        let e1 = Subspace::<Q>::span_i64(2, &[&[1, 0]]).unwrap();
        assert!(is_coisotropic(&e1, &SymBivector::zero(2)).unwrap());
        assert!(is_coisotropic(&Subspace::full(2), &biv(&[&[1, 0], &[0, 1]])).unwrap());
        assert!(!is_coisotropic(&e1, &biv(&[&[1, 0], &[0, 1]])).unwrap());
        let w = coisotropy_witness(&e1, &biv(&[&[1, 0], &[0, 1]])).unwrap().unwrap();
        assert_eq!(w, crate::linalg::vec_from_i64(&[0, 1]));
        assert!(is_coisotropic(&e1, &biv(&[&[0, 1], &[1, 0]])).unwrap());
    }

    #[test]
    fn inverse_round_trip() {
        let b = biv(&[&[1, 0], &[0, -1]]);
        assert_eq!(b.inverse().unwrap().inverse().unwrap(), b);
        assert_eq!(biv(&[&[1, 0], &[0, 0]]).inverse(), Err(Error::Degenerate));
    }
}
