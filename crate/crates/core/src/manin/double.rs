use super::triple::{ad_invariance_failure, DiracManinTriple};
use crate::error::{check_dim, Error, Result};
use crate::lie::{LieAlgebra, LieMorphism, MetrizedLieAlgebra};
use crate::linalg::{fmt_vec, Mat, SubQuotient, Subspace, SymBilinearForm, SymBivector};
use crate::report::CheckReport;
use crate::Scalar;

/// The semidirect product `d ⋉ d*_beta` on the basis `(e_i, eps_i)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Double<F> {
    pub dtilde: MetrizedLieAlgebra<F>,
    pub s_map: Mat<F>,
    pub t_map: Mat<F>,
    pub beta_tilde: SymBivector<F>,
}

impl<F: Scalar> Double<F> {
    pub fn base_dim(&self) -> usize {
        self.s_map.rows()
    }

    /// `d -> d~`, `x -> (x, 0)`.
    pub fn embed_d(&self) -> Mat<F> {
        let n = self.base_dim();
        Mat::identity(n).vstack(&Mat::zeros(n, n)).expect("block shapes")
    }

    /// `d* -> d~`, `mu -> (0, mu)`.
    pub fn embed_dual(&self) -> Mat<F> {
        let n = self.base_dim();
        Mat::zeros(n, n).vstack(&Mat::identity(n)).expect("block shapes")
    }
}

pub fn build_double<F: Scalar>(d: &LieAlgebra<F>, beta: &SymBivector<F>) -> Result<Double<F>> {
    let n = d.dim();
    check_dim("beta dimension", n, beta.dim())?;
    if let Some(i) = ad_invariance_failure(d, beta) {
        return Err(Error::NotAdInvariant(i));
    }
    let b = beta.gram();
    let c = |i: usize, j: usize, k: usize| d.sc(i, j, k).clone();
    let mut labels: Vec<String> = d.labels().to_vec();
    labels.extend(d.labels().iter().map(|l| format!("{l}*")));
    // [mu_i, mu_j]_beta = coad(beta^sharp mu_i) mu_j
    let dual_bracket = |i: usize, j: usize| -> Vec<F> {
        (0..n)
            .map(|k| {
                (0..n).fold(F::zero(), |acc, l| acc - b.get(l, i).clone() * c(l, k, j))
            })
            .collect()
    };
    for i in 0..n {
        for j in i..n {
            let a = dual_bracket(i, j);
            let s = dual_bracket(j, i);
            if a.iter().zip(&s).any(|(x, y)| !(x.clone() + y.clone()).is_zero()) {
                return Err(Error::InconsistentBrackets(format!(
                    "[eps{i}, eps{j}]_beta is not skew"
                )));
            }
        }
    }
    let alg = LieAlgebra::from_bracket_fn(labels, |i, j| {
        let mut v = vec![F::zero(); 2 * n];
        match (i < n, j < n) {
            (true, true) => v[..n].clone_from_slice(&d.bracket_basis(i, j)),
            (true, false) => {
                // coad(e_i) eps_j
                for (k, x) in v[n..].iter_mut().enumerate() {
                    *x = -c(i, k, j - n);
                }
            }
            (false, false) => v[n..].clone_from_slice(&dual_bracket(i - n, j - n)),
            (false, true) => unreachable!("i < j"),
        }
        v
    });
    let id = Mat::identity(n);
    let zero = Mat::zeros(n, n);
    let metric = SymBilinearForm::new(Mat::block(&zero, &id, &id, b)?)?;
    let beta_tilde = SymBivector::new(Mat::block(&-b, &id, &id, &zero)?)?;
    Ok(Double {
        dtilde: MetrizedLieAlgebra::new_unchecked(alg, metric)?,
        s_map: id.hstack(&zero)?,
        t_map: id.hstack(b)?,
        beta_tilde,
    })
}

/// `c / c^⊥` with the induced bracket and metric.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Reduction<F> {
    pub quotient: MetrizedLieAlgebra<F>,
    pub sub: SubQuotient<F>,
}

impl<F: Scalar> Reduction<F> {
    /// Quotient coordinates to ambient vectors in `c`.
    pub fn lift(&self) -> &Mat<F> {
        self.sub.lift()
    }

    /// Ambient vectors of `c` to quotient coordinates.
    pub fn project(&self) -> &Mat<F> {
        self.sub.project()
    }
}

/// Reduces a metrized Lie algebra by a coisotropic subalgebra. Fails if `c`
/// is not a subalgebra, not coisotropic, or if `c^⊥` is not an ideal of `c`.
pub fn reduce_coisotropic<F: Scalar>(m: &MetrizedLieAlgebra<F>, c: &Subspace<F>) -> Result<Reduction<F>> {
    check_dim("reduced subspace", m.dim(), c.ambient())?;
    if let Some((i, j)) = m.algebra.subalgebra_failure(c) {
        return Err(Error::NotSubalgebra(i, j));
    }
    let perp = c.orth_complement(&m.metric)?;
    if let Some(v) = perp.witness_not_in(c) {
        return Err(Error::NotCoisotropic(format!(
            "orthogonal vector {} lies outside the subspace",
            fmt_vec(&v)
        )));
    }
    for x in c.basis_vectors() {
        for y in perp.basis_vectors() {
            let z = m.algebra.bracket(&x, &y);
            if !perp.contains(&z) {
                return Err(Error::NotIdeal(format!(
                    "[{}, {}] = {}",
                    fmt_vec(&x),
                    fmt_vec(&y),
                    fmt_vec(&z)
                )));
            }
        }
    }
    let sub = SubQuotient::new(c.clone(), perp)?;
    let lift = sub.lift().to_cols();
    let labels = crate::lie::default_labels(sub.dim());
    let alg = LieAlgebra::from_bracket_fn(labels, |i, j| {
        sub.project().mul_vec(&m.algebra.bracket(&lift[i], &lift[j]))
    });
    let metric = m.metric.pullback(sub.lift())?;
    if !metric.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    Ok(Reduction {
        quotient: MetrizedLieAlgebra::new_unchecked(alg, metric)?,
        sub,
    })
}

/// `(q, g)` with `f_q: q -> d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ManinPair<F> {
    pub q: MetrizedLieAlgebra<F>,
    pub g: Subspace<F>,
    pub fq: Option<LieMorphism<F>>,
}

impl<F: Scalar> ManinPair<F> {
    pub fn is_lagrangian(&self) -> bool {
        self.g
            .orth_complement(&self.q.metric)
            .map(|p| p == self.g)
            .unwrap_or(false)
    }
}

/// Everything produced while building `q = c / c^⊥` for `c = s~^{-1}(g)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QPair<F> {
    pub double: Double<F>,
    pub c: Subspace<F>,
    pub reduction: Reduction<F>,
    pub pair: ManinPair<F>,
    /// `q x dim g` matrix sending RREF coordinates of `g ⊆ d` into `q`.
    pub g_embed: Mat<F>,
}

impl<F: Scalar> QPair<F> {
    pub fn q(&self) -> &MetrizedLieAlgebra<F> {
        &self.pair.q
    }

    pub fn fq(&self) -> &LieMorphism<F> {
        self.pair.fq.as_ref().expect("built with f_q")
    }

    /// `gamma_q`, the inverse of the metric of `q`.
    pub fn gamma_q(&self) -> Result<SymBivector<F>> {
        self.pair.q.gamma()
    }

    /// Embedding `d -> q` restricted to `g`, as a map on all of `d` that is
    /// only meaningful on `g`.
    fn embed_from_d(&self) -> Mat<F> {
        self.reduction.project() * &self.double.embed_d()
    }

    /// Natural complement `r = f_q^{-1}(h)` of `g` in `q`.
    pub fn natural_complement(&self, h: &Subspace<F>) -> Result<Subspace<F>> {
        Subspace::preimage(&self.fq().matrix, h)
    }
}

pub fn build_q_pair<F: Scalar>(t: &DiracManinTriple<F>) -> Result<QPair<F>> {
    let double = build_double(&t.d, &t.beta)?;
    let c = Subspace::preimage(&double.s_map, &t.g)?;
    let reduction = reduce_coisotropic(&double.dtilde, &c)?;
    let perp = reduction.sub.kernel();
    for v in perp.basis_vectors() {
        if !crate::linalg::is_zero_vec(&double.t_map.mul_vec(&v)) {
            return Err(Error::Invalid(format!(
                "target map does not vanish on {}",
                fmt_vec(&v)
            )));
        }
    }
    let fq_mat = double.t_map.try_mul(reduction.lift())?;
    let fq = LieMorphism::new(reduction.quotient.algebra.clone(), t.d.clone(), fq_mat)?;
    let mut out = QPair {
        double,
        c,
        pair: ManinPair {
            q: reduction.quotient.clone(),
            g: Subspace::zero(reduction.quotient.dim()),
            fq: Some(fq),
        },
        reduction,
        g_embed: Mat::zeros(0, 0),
    };
    let e = out.embed_from_d();
    out.pair.g = t.g.image(&e)?;
    out.g_embed = e.try_mul(&t.g.basis_cols())?;
    Ok(out)
}

/// The identities every `q` built from a valid triple must satisfy.
pub fn check_q_pair<F: Scalar>(qp: &QPair<F>, t: &DiracManinTriple<F>) -> CheckReport {
    let mut r = CheckReport::new();
    let q = qp.q();
    r.expect("q.dim_is_twice_g", q.dim() == 2 * t.g.dim(), || {
        format!("dim q = {}, dim g = {}", q.dim(), t.g.dim())
    });
    r.record(
        "q.jacobi",
        q.algebra.jacobi_failure().map(|(i, j, k)| format!("basis triple ({i}, {j}, {k})")),
    );
    r.record(
        "q.metric_invariant",
        q.invariance_failure().map(|i| format!("basis vector {i}")),
    );
    r.expect("q.g_lagrangian", qp.pair.is_lagrangian() && qp.pair.g.dim() == t.g.dim(), || {
        format!("g image {}", qp.pair.g)
    });
    r.record(
        "q.g_subalgebra",
        q.algebra
            .subalgebra_failure(&qp.pair.g)
            .map(|(i, j)| format!("g basis pair ({i}, {j})")),
    );
    let fq = qp.fq();
    r.record(
        "fq.morphism",
        fq.failure().map(|(i, j)| format!("basis pair ({i}, {j})")),
    );
    let incl = t.g.basis_cols();
    let on_g = &fq.matrix * &qp.g_embed;
    r.record(
        "fq.restricts_to_inclusion",
        (on_g != incl).then(|| {
            let j = (0..incl.cols()).find(|&j| on_g.col(j) != incl.col(j)).unwrap_or(0);
            format!("g basis vector {j}: {} != {}", fmt_vec(&on_g.col(j)), fmt_vec(&incl.col(j)))
        }),
    );
    r.record(
        "fq.pushes_gamma_to_beta",
        match qp.gamma_q().and_then(|g| g.pushforward(&fq.matrix)) {
            Ok(b) if b == t.beta => None,
            Ok(b) => Some(format!("f_q(gamma_q) = {}", b.gram())),
            Err(e) => Some(e.to_string()),
        },
    );
    r
}
