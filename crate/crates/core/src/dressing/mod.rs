//! Group-level formulas on rational matrix groups: `Ad`, the dressing
//! action, the bullet actions on `g`, stabilizers and the exact-case
//! splitting.

use crate::error::{check_dim, Error, Result};
use crate::lie::{LieMorphism, MatrixRep};
use crate::linalg::{fmt_vec, vadd, vscale, vsub, Mat, Subspace, SymBilinearForm};
use crate::manin::DiracManinTriple;
use crate::Scalar;

mod semidirect;

pub use semidirect::{Semidirect, SemidirectElement};

/// An invertible matrix normalizing the image of a faithful representation,
/// together with the automorphism `Ad_h` of the represented algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupElement<F> {
    matrix: Mat<F>,
    ad: Mat<F>,
    ad_inv: Mat<F>,
}

impl<F: Scalar> GroupElement<F> {
    /// Solves `rho(Ad_h x) = h rho(x) h^{-1}` for every basis vector.
    pub fn new(rep: &MatrixRep<F>, matrix: Mat<F>) -> Result<Self> {
        check_dim("group element size", rep.rep_dim(), matrix.rows())?;
        let inv = matrix
            .inverse()
            .map_err(|_| Error::InvalidGroupElement("matrix is singular".into()))?;
        let n = rep.algebra().dim();
        let mut cols = Vec::with_capacity(n);
        for m in rep.images() {
            cols.push(rep.coords_of(&(&(&matrix * m) * &inv))?);
        }
        let ad = Mat::from_cols(n, &cols)?;
        let ad_inv = ad
            .inverse()
            .map_err(|_| Error::InvalidGroupElement("conjugation is not invertible on the algebra".into()))?;
        let f = LieMorphism::new(rep.algebra().clone(), rep.algebra().clone(), ad.clone())?;
        if let Some((i, j)) = f.failure() {
            return Err(Error::InvalidGroupElement(format!(
                "Ad fails to preserve the bracket of basis pair ({i}, {j})"
            )));
        }
        Ok(GroupElement {
            matrix,
            ad,
            ad_inv,
        })
    }

    /// Like [`GroupElement::new`], additionally requiring `Ad_h(h) = h` and
    /// `Ad_h(beta) = beta`.
    pub fn for_triple(t: &DiracManinTriple<F>, rep: &MatrixRep<F>, matrix: Mat<F>) -> Result<Self> {
        let x = Self::new(rep, matrix)?;
        x.check_triple(t)?;
        Ok(x)
    }

    pub fn check_triple(&self, t: &DiracManinTriple<F>) -> Result<()> {
        check_dim("group element algebra", t.dim(), self.ad.rows())?;
        if t.h.image(&self.ad)? != t.h {
            return Err(Error::InvalidGroupElement("Ad_h does not preserve h".into()));
        }
        if t.beta.pushforward(&self.ad)? != t.beta {
            return Err(Error::InvalidGroupElement("Ad_h does not preserve beta".into()));
        }
        Ok(())
    }

    /// Element with a prescribed automorphism and no matrix; used for
    /// abstract samples such as those of an abelian group.
    pub fn from_ad(ad: Mat<F>) -> Result<Self> {
        let ad_inv = ad.inverse().map_err(|_| Error::InvalidGroupElement("Ad is singular".into()))?;
        Ok(GroupElement {
            matrix: Mat::zeros(0, 0),
            ad,
            ad_inv,
        })
    }

    pub fn identity(dim: usize, rep_dim: usize) -> Self {
        GroupElement {
            matrix: Mat::identity(rep_dim),
            ad: Mat::identity(dim),
            ad_inv: Mat::identity(dim),
        }
    }

    pub fn matrix(&self) -> &Mat<F> {
        &self.matrix
    }

    pub fn ad(&self) -> &Mat<F> {
        &self.ad
    }

    pub fn ad_inv(&self) -> &Mat<F> {
        &self.ad_inv
    }

    pub fn mul(&self, other: &Self) -> Self {
        let matrix = if self.matrix.rows() == other.matrix.rows() && self.matrix.rows() > 0 {
            &self.matrix * &other.matrix
        } else {
            Mat::zeros(0, 0)
        };
        GroupElement {
            matrix,
            ad: &self.ad * &other.ad,
            ad_inv: &other.ad_inv * &self.ad_inv,
        }
    }

    pub fn inverse(&self) -> Self {
        GroupElement {
            matrix: self.matrix.inverse().unwrap_or_else(|_| Mat::zeros(0, 0)),
            ad: self.ad_inv.clone(),
            ad_inv: self.ad.clone(),
        }
    }

    pub fn adjoint(&self, x: &[F]) -> Vec<F> {
        self.ad.mul_vec(x)
    }
}

/// `Ad_h x` in the coordinates of the represented algebra.
pub fn adjoint_of<F: Scalar>(rep: &MatrixRep<F>, h: &Mat<F>, x: &[F]) -> Result<Vec<F>> {
    Ok(GroupElement::new(rep, h.clone())?.adjoint(x))
}

/// Precomputed projections for evaluating the dressing formulas of a triple.
#[derive(Clone, Debug)]
pub struct Dressing<F> {
    pub triple: DiracManinTriple<F>,
    pr_g: Mat<F>,
    pr_h: Mat<F>,
}

impl<F: Scalar> Dressing<F> {
    pub fn new(triple: &DiracManinTriple<F>) -> Result<Self> {
        Ok(Dressing {
            pr_g: triple.pr_g()?,
            pr_h: triple.pr_h()?,
            triple: triple.clone(),
        })
    }

    pub fn pr_g(&self) -> &Mat<F> {
        &self.pr_g
    }

    pub fn pr_h(&self) -> &Mat<F> {
        &self.pr_h
    }

    /// `rho(lambda)_h = Ad_{h^{-1}} pr_h Ad_h lambda`, in left trivialization.
    pub fn dressing_field(&self, h: &GroupElement<F>, lambda: &[F]) -> Vec<F> {
        h.ad_inv.mul_vec(&self.pr_h.mul_vec(&h.ad.mul_vec(lambda)))
    }

    /// The matrix of `lambda -> rho(lambda)_h`.
    pub fn dressing_matrix(&self, h: &GroupElement<F>) -> Mat<F> {
        &(&h.ad_inv * &self.pr_h) * &h.ad
    }

    /// `u(h, lambda) = pr_g(Ad_h lambda)`.
    pub fn ehat_moment(&self, h: &GroupElement<F>, lambda: &[F]) -> Vec<F> {
        self.pr_g.mul_vec(&h.ad.mul_vec(lambda))
    }

    /// `h • xi = pr_g(Ad_h xi)` for `xi` in `g`.
    pub fn bullet_on_g(&self, h: &GroupElement<F>, xi: &[F]) -> Result<Vec<F>> {
        if !self.triple.g.contains(xi) {
            return Err(Error::Invalid(format!("{} is not in g", fmt_vec(xi))));
        }
        Ok(self.ehat_moment(h, xi))
    }

    /// Anchor of the action algebroid `H x q`: the dressing field of `f_q(lambda)`.
    pub fn anchor(&self, fq: &Mat<F>, h: &GroupElement<F>, lambda: &[F]) -> Vec<F> {
        self.dressing_field(h, &fq.mul_vec(lambda))
    }

    /// Kernel of the dressing map at `h`, and whether it equals `Ad_h(g)`.
    pub fn stabilizer_kernel(&self, h: &GroupElement<F>) -> Result<(Subspace<F>, bool)> {
        let k = Subspace::kernel(&self.dressing_matrix(h));
        let ad_g = self.triple.g.image(&h.ad)?;
        let matches = k == ad_g;
        Ok((k, matches))
    }

    /// `sigma(nu) = nu - 1/2 Ad_{h^{-1}} (1 - pr_{h⊥}) Ad_h nu`, where
    /// `pr_{h⊥}` projects onto `h⊥` along `g` for the metric `beta^{-1}`.
    pub fn exact_splitting(&self, h: &GroupElement<F>, nu: &[F]) -> Result<Vec<F>> {
        let s = self.splitting_projection()?;
        let corr = h.ad_inv.mul_vec(&s.mul_vec(&h.ad.mul_vec(nu)));
        Ok(vsub(nu, &vscale(&F::half(), &corr)))
    }

    /// `1 - pr_{h⊥}`, i.e. the projection onto `g` along `h⊥`.
    fn splitting_projection(&self) -> Result<Mat<F>> {
        if !self.triple.is_exact() {
            return Err(Error::NotExact);
        }
        let metric = self.metric()?;
        let h_perp = self.triple.h.orth_complement(&metric)?;
        self.triple.g.projector_along(&h_perp)
    }

    /// The metric `beta^{-1}` of an exact triple.
    pub fn metric(&self) -> Result<SymBilinearForm<F>> {
        self.triple.beta.inverse()
    }

    /// `(tau, xi) -> tau + Ad_{h^{-1}} xi` for `tau` in `h`, `xi` in `g`.
    pub fn th_g_lift(&self, h: &GroupElement<F>, tau: &[F], xi: &[F]) -> Result<Vec<F>> {
        if !self.triple.h.contains(tau) || !self.triple.g.contains(xi) {
            return Err(Error::Invalid("lift expects tau in h and xi in g".into()));
        }
        Ok(vadd(tau, &h.ad_inv.mul_vec(xi)))
    }

    /// Inverse of [`Dressing::th_g_lift`].
    pub fn th_g_split(&self, h: &GroupElement<F>, zeta: &[F]) -> (Vec<F>, Vec<F>) {
        let a = h.ad.mul_vec(zeta);
        (
            h.ad_inv.mul_vec(&self.pr_h.mul_vec(&a)),
            self.pr_g.mul_vec(&a),
        )
    }
}
