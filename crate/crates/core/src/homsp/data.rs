use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, LieMorphism, MetrizedLieAlgebra};
use crate::linalg::{fmt_vec, Mat, SubQuotient, Subspace, SymBilinearForm};
use crate::manin::{build_double, reduce_coisotropic, DiracManinTriple, QPair};
use crate::report::{first_diff, CheckReport};
use crate::Scalar;

/// One element of `K`, through its action on `n` and on `d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KSample<F> {
    pub on_n: Mat<F>,
    pub on_d: Mat<F>,
}

/// `(n, gamma_n, u, k, f_n)` plus samples of `K`. `gamma_n` is stored as
/// the metric on `n`, i.e. the inverse of the element of `S^2 n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassificationData<F> {
    pub n: LieAlgebra<F>,
    pub gamma_n: SymBilinearForm<F>,
    pub u: Subspace<F>,
    pub k: Subspace<F>,
    /// `dim d x dim n`.
    pub f_n: Mat<F>,
    pub samples: Vec<KSample<F>>,
}

impl<F: Scalar> ClassificationData<F> {
    pub fn dim(&self) -> usize {
        self.n.dim()
    }

    pub fn metrized(&self) -> Result<MetrizedLieAlgebra<F>> {
        MetrizedLieAlgebra::new_unchecked(self.n.clone(), self.gamma_n.clone())
    }

    /// `f_n^*: d* -> n`, adjoint through the metric of `n`.
    pub fn f_n_dual(&self) -> Result<Mat<F>> {
        self.gamma_n.gram().inverse()?.try_mul(&self.f_n.transpose())
    }

    /// `c = f_n(u)`.
    pub fn image_of_u(&self) -> Result<Subspace<F>> {
        self.u.image(&self.f_n)
    }
}

fn shape_failure<F: Scalar>(data: &ClassificationData<F>, t: &DiracManinTriple<F>) -> Option<String> {
    let n = data.n.dim();
    if data.gamma_n.dim() != n || data.u.ambient() != n || data.k.ambient() != n {
        return Some(format!("n has dimension {n} but gamma_n, u or k does not"));
    }
    if data.f_n.rows() != t.dim() || data.f_n.cols() != n {
        return Some(format!("f_n must be {} x {n}", t.dim()));
    }
    for (i, s) in data.samples.iter().enumerate() {
        if s.on_n.rows() != n || s.on_n.cols() != n || s.on_d.rows() != t.dim() || s.on_d.cols() != t.dim() {
            return Some(format!("sample {i} has the wrong size"));
        }
    }
    None
}

fn preserves<F: Scalar>(s: &Subspace<F>, a: &Mat<F>) -> Option<String> {
    match s.image(a) {
        Ok(img) if img == *s => None,
        Ok(img) => img
            .witness_not_in(s)
            .map(|v| format!("image vector {}", fmt_vec(&v)))
            .or_else(|| Some("image is smaller".into())),
        Err(e) => Some(e.to_string()),
    }
}

fn automorphism_failure<F: Scalar>(l: &LieAlgebra<F>, a: &Mat<F>) -> Option<String> {
    if !a.is_invertible() {
        return Some("matrix is singular".into());
    }
    let f = LieMorphism {
        source: l.clone(),
        target: l.clone(),
        matrix: a.clone(),
    };
    f.failure().map(|(i, j)| format!("basis pair ({i}, {j})"))
}

/// Every invariant of the data (i)-(iii), itemized.
pub fn validate_classification<F: Scalar>(data: &ClassificationData<F>, t: &DiracManinTriple<F>) -> CheckReport {
    let mut r = CheckReport::new();
    if let Some(w) = shape_failure(data, t) {
        r.fail("shapes", w);
        return r;
    }
    r.pass("shapes");
    let n = &data.n;
    r.record("n.jacobi", n.jacobi_failure().map(|(i, j, k)| format!("basis triple ({i}, {j}, {k})")));
    r.expect("gamma_n.nondegenerate", data.gamma_n.is_nondegenerate(), || "metric on n is degenerate".into());
    r.record(
        "gamma_n.invariant",
        data.metrized().ok().and_then(|m| m.invariance_failure()).map(|i| format!("basis vector {i}")),
    );
    r.record("u.subalgebra", n.subalgebra_failure(&data.u).map(|(i, j)| format!("u basis pair ({i}, {j})")));
    r.record(
        "u.lagrangian",
        match data.u.orth_complement(&data.gamma_n) {
            Ok(p) if p == data.u => None,
            Ok(p) => Some(format!("u⊥ = {p}")),
            Err(e) => Some(e.to_string()),
        },
    );
    r.expect("k.in_u", data.u.contains_subspace(&data.k), || format!("k = {}", data.k));
    r.record("k.subalgebra", n.subalgebra_failure(&data.k).map(|(i, j)| format!("k basis pair ({i}, {j})")));
    let f = LieMorphism {
        source: n.clone(),
        target: t.d.clone(),
        matrix: data.f_n.clone(),
    };
    r.record("f_n.morphism", f.failure().map(|(i, j)| format!("basis pair ({i}, {j})")));
    r.record(
        "f_n.gamma_to_beta",
        match data.gamma_n.inverse().and_then(|g| g.pushforward(&data.f_n)) {
            Ok(b) if b == t.beta => None,
            Ok(b) => first_diff(b.gram(), t.beta.gram()),
            Err(e) => Some(e.to_string()),
        },
    );
    r.record(
        "f_n.k_into_h",
        match data.k.image(&data.f_n) {
            Ok(img) => img.witness_not_in(&t.h).map(|v| format!("f_n(k) contains {}", fmt_vec(&v))),
            Err(e) => Some(e.to_string()),
        },
    );
    for (i, s) in data.samples.iter().enumerate() {
        let p = format!("sample[{i}]");
        r.record(format!("{p}.n_automorphism"), automorphism_failure(n, &s.on_n));
        r.record(
            format!("{p}.preserves_gamma_n"),
            match data.gamma_n.pullback(&s.on_n) {
                Ok(g) if g == data.gamma_n => None,
                Ok(g) => first_diff(g.gram(), data.gamma_n.gram()),
                Err(e) => Some(e.to_string()),
            },
        );
        r.record(format!("{p}.preserves_u"), preserves(&data.u, &s.on_n));
        r.record(format!("{p}.preserves_k"), preserves(&data.k, &s.on_n));
        r.record(format!("{p}.d_automorphism"), automorphism_failure(&t.d, &s.on_d));
        r.record(
            format!("{p}.preserves_beta"),
            match t.beta.pushforward(&s.on_d) {
                Ok(b) if b == t.beta => None,
                Ok(b) => first_diff(b.gram(), t.beta.gram()),
                Err(e) => Some(e.to_string()),
            },
        );
        r.record(format!("{p}.preserves_h"), preserves(&t.h, &s.on_d));
        r.record(
            format!("{p}.intertwines"),
            first_diff(&(&data.f_n * &s.on_n), &(&s.on_d * &data.f_n)),
        );
    }
    r
}

/// Reads RREF coordinates off vectors of `s`.
pub(crate) fn coords_matrix<F: Scalar>(s: &Subspace<F>) -> Mat<F> {
    Mat::from_fn(s.dim(), s.ambient(), |i, j| if s.pivots()[i] == j { F::one() } else { F::zero() })
}

/// `zeta -> pr_g(f_n(zeta))`, as a map `n -> q` landing in `g ⊆ q`.
pub fn moment_into_q<F: Scalar>(data: &ClassificationData<F>, t: &DiracManinTriple<F>, qp: &QPair<F>) -> Result<Mat<F>> {
    qp.g_embed
        .try_mul(&coords_matrix(&t.g))?
        .try_mul(&t.pr_g()?)?
        .try_mul(&data.f_n)
}

/// `F_n: q -> n` with `<F_n(lambda), zeta> = <lambda, pr_g f_n(zeta)>`.
pub fn build_f_n<F: Scalar>(data: &ClassificationData<F>, t: &DiracManinTriple<F>, qp: &QPair<F>) -> Result<Mat<F>> {
    let u = moment_into_q(data, t, qp)?;
    data.gamma_n
        .gram()
        .inverse()
        .map_err(|_| Error::Degenerate)?
        .try_mul(&u.transpose())?
        .try_mul(qp.q().metric.gram())
}

/// `f_n|u` injective and `f_n(u) ∩ h = f_n(k)`.
pub fn check_transitive<F: Scalar>(data: &ClassificationData<F>, t: &DiracManinTriple<F>) -> bool {
    let on_u = &data.f_n * &data.u.basis_cols();
    if on_u.rank() != data.u.dim() {
        return false;
    }
    let c = Subspace::column_space(&on_u);
    match (c.intersect(&t.h), data.k.image(&data.f_n)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

/// `p = k⊥/k` with its reduced metric and `l = u/k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiberReduction<F> {
    pub p: SubQuotient<F>,
    pub metric: SymBilinearForm<F>,
    pub l: Subspace<F>,
}

pub fn reduce_fibers<F: Scalar>(data: &ClassificationData<F>) -> Result<FiberReduction<F>> {
    let k_perp = data.k.orth_complement(&data.gamma_n)?;
    if !k_perp.contains_subspace(&data.k) {
        return Err(Error::Invalid(format!("k = {} is not isotropic", data.k)));
    }
    if !k_perp.contains_subspace(&data.u) {
        return Err(Error::Invalid("u is not contained in k⊥".into()));
    }
    let p = SubQuotient::new(k_perp, data.k.clone())?;
    let metric = data.gamma_n.pullback(p.lift())?;
    if !metric.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    let l = data.u.image(p.project())?;
    Ok(FiberReduction { p, metric, l })
}

impl<F: Scalar> FiberReduction<F> {
    pub fn dim(&self) -> usize {
        self.p.dim()
    }

    pub fn l_is_lagrangian(&self) -> bool {
        self.l.orth_complement(&self.metric).map(|s| s == self.l).unwrap_or(false)
    }

    /// Moment map of `p` from one of `n` that vanishes on `k`.
    pub fn descend_moment(&self, u_n: &Mat<F>) -> Result<Mat<F>> {
        u_n.try_mul(self.p.lift())
    }
}

/// In the exact case: `Some(f_n(u))` when `dim n = dim d` and `f_n` is
/// bijective, `None` otherwise.
pub fn check_exact_case<F: Scalar>(data: &ClassificationData<F>, t: &DiracManinTriple<F>) -> Result<Option<Subspace<F>>> {
    if !t.is_exact() {
        return Err(Error::NotExact);
    }
    if data.n.dim() != t.dim() || !data.f_n.is_invertible() {
        return Ok(None);
    }
    Ok(Some(data.image_of_u()?))
}

/// The map `zeta + f_n^*(mu) -> [f_n(zeta) + mu]` from `n` onto
/// `(c ⋉ d*)/(c ⋉ d*)⊥` with `c = f_n(u)`, and its verification.
#[derive(Clone, Debug)]
pub struct Comparison<F> {
    pub target: MetrizedLieAlgebra<F>,
    pub map: Mat<F>,
    pub checks: CheckReport,
}

pub fn comparison_map<F: Scalar>(data: &ClassificationData<F>, t: &DiracManinTriple<F>) -> Result<Comparison<F>> {
    let double = build_double(&t.d, &t.beta)?;
    let c = data.image_of_u()?;
    let big_c = Subspace::preimage(&double.s_map, &c)?;
    let red = reduce_coisotropic(&double.dtilde, &big_c)?;
    let ub = data.u.basis_cols();
    let source = ub.hstack(&data.f_n_dual()?)?;
    let image = red
        .project()
        .try_mul(&double.embed_d().try_mul(&data.f_n)?.try_mul(&ub)?.hstack(&double.embed_dual())?)?;
    let mut checks = CheckReport::new();
    let map = source.transpose().solve_mat(&image.transpose()).map(|m| m.transpose());
    let map = match map {
        Some(m) if &m * &source == image => {
            checks.pass("comparison.well_defined");
            m
        }
        _ => {
            checks.fail("comparison.well_defined", "zeta + f_n*(mu) = 0 does not force f_n(zeta) + mu into the perp");
            return Ok(Comparison {
                target: red.quotient,
                map: Mat::zeros(0, 0),
                checks,
            });
        }
    };
    checks.expect("comparison.bijective", map.is_square() && map.is_invertible(), || {
        format!("{} x {} of rank {}", map.rows(), map.cols(), map.rank())
    });
    let f = LieMorphism {
        source: data.n.clone(),
        target: red.quotient.algebra.clone(),
        matrix: map.clone(),
    };
    checks.record("comparison.brackets", f.failure().map(|(i, j)| format!("basis pair ({i}, {j})")));
    checks.record(
        "comparison.isometric",
        match red.quotient.metric.pullback(&map) {
            Ok(g) if g == data.gamma_n => None,
            Ok(g) => first_diff(g.gram(), data.gamma_n.gram()),
            Err(e) => Some(e.to_string()),
        },
    );
    checks.expect("comparison.u_to_c", data.u.image(&map).ok() == c.image(&red.project().try_mul(&double.embed_d())?).ok(), || {
        "u does not map onto the image of c".into()
    });
    Ok(Comparison {
        target: red.quotient,
        map,
        checks,
    })
}

/// `n = d ⋉ d*_beta`, `u = d`, `k = 0`, `f_n = t`.
pub fn trivial_datum<F: Scalar>(t: &DiracManinTriple<F>) -> Result<ClassificationData<F>> {
    let double = build_double(&t.d, &t.beta)?;
    let u = Subspace::column_space(&double.embed_d());
    let m2 = double.dtilde.dim();
    let samples = t
        .samples
        .iter()
        .map(|a| {
            let inv_t = a.inverse()?.transpose();
            Ok(KSample {
                on_n: Mat::block_diag(a, &inv_t),
                on_d: a.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassificationData {
        n: double.dtilde.algebra.clone(),
        gamma_n: double.dtilde.metric.clone(),
        u,
        k: Subspace::zero(m2),
        f_n: double.t_map.clone(),
        samples,
    })
}
