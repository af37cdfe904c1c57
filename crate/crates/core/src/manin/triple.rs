use crate::error::{check_dim, Error, Result};
use crate::lie::{LieAlgebra, LieMorphism};
use crate::linalg::{coisotropy_witness, fmt_vec, Mat, Subspace, SymBivector};
use crate::report::{first_diff, CheckReport};
use crate::Scalar;

/// `(d, g, h)_beta` together with sample automorphisms standing in for the
/// group `H` acting on `d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiracManinTriple<F> {
    pub d: LieAlgebra<F>,
    pub beta: SymBivector<F>,
    pub g: Subspace<F>,
    pub h: Subspace<F>,
    pub samples: Vec<Mat<F>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleReport {
    pub checks: CheckReport,
    pub exact: bool,
}

/// First basis index `i` with `ad(e_i) B + B ad(e_i)^T != 0`.
///
/// This is the coadjoint action on `S^2 d` written with `ad`, i.e.
/// `coad^T B + B coad = 0` for `coad = -ad^T`.
pub fn ad_invariance_failure<F: Scalar>(d: &LieAlgebra<F>, beta: &SymBivector<F>) -> Option<usize> {
    if beta.dim() != d.dim() {
        return Some(0);
    }
    (0..d.dim()).find(|&i| !beta.is_invariant_under(&d.ad_basis(i)))
}

pub fn check_ad_invariant_bivector<F: Scalar>(d: &LieAlgebra<F>, beta: &SymBivector<F>) -> bool {
    ad_invariance_failure(d, beta).is_none()
}

impl<F: Scalar> DiracManinTriple<F> {
    pub fn new(
        d: LieAlgebra<F>,
        beta: SymBivector<F>,
        g: Subspace<F>,
        h: Subspace<F>,
        samples: Vec<Mat<F>>,
    ) -> Result<Self> {
        let n = d.dim();
        check_dim("beta dimension", n, beta.dim())?;
        check_dim("g ambient dimension", n, g.ambient())?;
        check_dim("h ambient dimension", n, h.ambient())?;
        for s in &samples {
            check_dim("sample rows", n, s.rows())?;
            check_dim("sample columns", n, s.cols())?;
        }
        Ok(DiracManinTriple {
            d,
            beta,
            g,
            h,
            samples,
        })
    }

    pub fn dim(&self) -> usize {
        self.d.dim()
    }

    /// Projection of `d` onto `g` along `h`, as a `dim d x dim d` matrix.
    pub fn pr_g(&self) -> Result<Mat<F>> {
        self.g.projector_along(&self.h)
    }

    /// Projection of `d` onto `h` along `g`.
    pub fn pr_h(&self) -> Result<Mat<F>> {
        self.h.projector_along(&self.g)
    }

    /// `beta` nondegenerate and `g` Lagrangian, i.e. `beta^sharp(ann g) = g`.
    pub fn is_exact(&self) -> bool {
        if !self.beta.is_nondegenerate() {
            return false;
        }
        let ann = self.g.annihilator();
        let img = Subspace::span(self.dim(), &ann.basis_vectors().iter().map(|m| self.beta.sharp(m)).collect::<Vec<_>>());
        img.map(|s| s == self.g).unwrap_or(false)
    }

    pub fn validate(&self) -> TripleReport {
        let mut r = CheckReport::new();
        r.record(
            "d.jacobi",
            self.d.jacobi_failure().map(|(i, j, k)| format!("basis triple ({i}, {j}, {k})")),
        );
        r.record(
            "beta.ad_invariant",
            ad_invariance_failure(&self.d, &self.beta).map(|i| format!("basis vector {i}")),
        );
        r.record(
            "g.subalgebra",
            self.d
                .subalgebra_failure(&self.g)
                .map(|(i, j)| format!("g basis pair ({i}, {j})")),
        );
        r.record(
            "g.coisotropic",
            match coisotropy_witness(&self.g, &self.beta) {
                Ok(w) => w.map(|mu| format!("annihilator vector {}", fmt_vec(&mu))),
                Err(e) => Some(e.to_string()),
            },
        );
        r.record(
            "h.subalgebra",
            self.d
                .subalgebra_failure(&self.h)
                .map(|(i, j)| format!("h basis pair ({i}, {j})")),
        );
        r.expect("g_h.complementary", self.g.is_complement(&self.h), || {
            format!("dim g = {}, dim h = {}, dim g + h = {}", self.g.dim(), self.h.dim(), self.g.sum(&self.h).map(|s| s.dim()).unwrap_or(0))
        });
        r.absorb("", self.check_equivariance());
        TripleReport {
            checks: r,
            exact: self.is_exact(),
        }
    }

    /// Per-sample automorphism, `A(beta) = beta`, `A(h) = h`, plus the
    /// infinitesimal condition for the generators in `h`.
    pub fn check_equivariance(&self) -> CheckReport {
        let mut r = CheckReport::new();
        for (idx, a) in self.samples.iter().enumerate() {
            let f = LieMorphism {
                source: self.d.clone(),
                target: self.d.clone(),
                matrix: a.clone(),
            };
            let fail = if !a.is_invertible() {
                Some("matrix is singular".to_string())
            } else {
                f.failure().map(|(i, j)| format!("basis pair ({i}, {j})"))
            };
            r.record(format!("sample[{idx}].automorphism"), fail);
            let pushed = self.beta.pushforward(a);
            r.record(
                format!("sample[{idx}].preserves_beta"),
                match pushed {
                    Ok(b) if b == self.beta => None,
                    Ok(b) => first_diff(b.gram(), self.beta.gram()),
                    Err(e) => Some(e.to_string()),
                },
            );
            r.record(
                format!("sample[{idx}].preserves_h"),
                match self.h.image(a) {
                    Ok(img) if img == self.h => None,
                    Ok(img) => img.witness_not_in(&self.h).map(|v| format!("image vector {}", fmt_vec(&v))),
                    Err(e) => Some(e.to_string()),
                },
            );
        }
        let mut gen_fail = None;
        for (j, tau) in self.h.basis_vectors().iter().enumerate() {
            let ad = self.d.adjoint(tau);
            let preserves = self.h.image(&ad).map(|s| self.h.contains_subspace(&s)).unwrap_or(false);
            if !preserves || !self.beta.is_invariant_under(&ad) {
                gen_fail = Some(format!("h basis vector {j}"));
                break;
            }
        }
        r.record("h.generators", gen_fail);
        r
    }

    /// `T = [g basis | h basis]` as columns.
    fn split_basis(&self) -> Result<Mat<F>> {
        if !self.g.is_complement(&self.h) {
            return Err(Error::NotComplement("g and h".into()));
        }
        self.g.basis_cols().hstack(&self.h.basis_cols())
    }

    /// `(gamma_g, phi)` with `gamma_g = pr_g(beta)` in the RREF basis of `g`
    /// and `phi: h* -> g`, `phi(nu) = pr_g(beta^sharp nu)`.
    pub fn extract_gamma_phi(&self) -> Result<(SymBivector<F>, Mat<F>)> {
        let t = self.split_basis()?;
        let t_inv = t.inverse()?;
        let b = &(&t_inv * self.beta.gram()) * &t_inv.transpose();
        let a = self.g.dim();
        let n = self.dim();
        let ga: Vec<usize> = (0..a).collect();
        let ha: Vec<usize> = (a..n).collect();
        if !b.select_rows(&ha).select_cols(&ha).is_zero() {
            return Err(Error::NotCoisotropic("beta does not vanish on ann(g)".into()));
        }
        let gamma = SymBivector::new(b.select_rows(&ga).select_cols(&ga))?;
        Ok((gamma, b.select_rows(&ga).select_cols(&ha)))
    }
}

/// Assembles `beta` on `d* = g* ⊕ h*` from `gamma_g` on `g*`, the pairing
/// `<mu1, phi(mu2)>` between `g*` and `h*`, and zero on `h* x h*`.
pub fn build_beta<F: Scalar>(
    gamma_g: &SymBivector<F>,
    phi: &Mat<F>,
    g: &Subspace<F>,
    h: &Subspace<F>,
) -> Result<SymBivector<F>> {
    if !g.is_complement(h) {
        return Err(Error::NotComplement("g and h".into()));
    }
    check_dim("gamma_g dimension", g.dim(), gamma_g.dim())?;
    check_dim("phi rows", g.dim(), phi.rows())?;
    check_dim("phi columns", h.dim(), phi.cols())?;
    let t = g.basis_cols().hstack(&h.basis_cols())?;
    let zero = Mat::zeros(h.dim(), h.dim());
    let b = Mat::block(gamma_g.gram(), phi, &phi.transpose(), &zero)?;
    SymBivector::new(&(&t * &b) * &t.transpose())
}
