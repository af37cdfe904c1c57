use super::linear::LinearGroupoid;
use super::module::LinearModule;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{fmt_vec, Mat, Subspace, SymBilinearForm, SymBivector};
use crate::manin::ManinPair;
use crate::report::CheckReport;
use crate::Scalar;

/// `q ⇉ g` for a Manin pair `(q, g)` and a complement `r = ker t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MetrizedLinearGroupoid<F> {
    pub groupoid: LinearGroupoid<F>,
    pub metric: SymBilinearForm<F>,
    pub g: Subspace<F>,
    pub r: Subspace<F>,
}

/// `s = 1 - pr_{r⊥}`, `t = 1 - pr_r`, both projections taken along `g`.
pub fn from_manin_pair<F: Scalar>(pair: &ManinPair<F>, r: &Subspace<F>) -> Result<MetrizedLinearGroupoid<F>> {
    let n = pair.q.dim();
    check_dim("complement ambient", n, r.ambient())?;
    let g = &pair.g;
    if !r.is_complement(g) {
        return Err(Error::NotComplement(format!("r = {r} and g = {g}")));
    }
    let r_perp = r.orth_complement(&pair.q.metric)?;
    if !r_perp.is_complement(g) {
        return Err(Error::NotComplement(format!("r⊥ = {r_perp} and g = {g}")));
    }
    let s = g.projector_along(&r_perp)?;
    let t = g.projector_along(r)?;
    let mg = MetrizedLinearGroupoid {
        groupoid: LinearGroupoid::new(n, g.clone(), s, t)?,
        metric: pair.q.metric.clone(),
        g: g.clone(),
        r: r.clone(),
    };
    if let Some(w) = mg.multiplicativity_failure() {
        return Err(Error::InvalidGroupoid(format!("metric is not multiplicative: {w}")));
    }
    Ok(mg)
}

impl<F: Scalar> MetrizedLinearGroupoid<F> {
    /// Polarized `<x1 ∘ y1, x2 ∘ y2> = <x1, x2> + <y1, y2>` on a basis of
    /// composable pairs.
    pub fn multiplicativity_failure(&self) -> Option<String> {
        let g = &self.groupoid;
        let pairs = g.composable_basis();
        let prods: Vec<Vec<F>> = pairs.iter().map(|(x, y)| g.compose(x, y).expect("composable")).collect();
        for a in 0..pairs.len() {
            for b in a..pairs.len() {
                let lhs = self.metric.eval(&prods[a], &prods[b]);
                let rhs = self.metric.eval(&pairs[a].0, &pairs[b].0) + self.metric.eval(&pairs[a].1, &pairs[b].1);
                if lhs != rhs {
                    return Some(format!("composable basis pairs {a} and {b}"));
                }
            }
        }
        None
    }

    /// `gamma_q`, the inverse metric.
    pub fn gamma_q(&self) -> Result<SymBivector<F>> {
        self.metric.inverse()
    }

    /// `t(gamma_q)` and `-s(gamma_q)` as bivectors on `q`; they must agree.
    pub fn gamma_pushforwards(&self) -> Result<(SymBivector<F>, SymBivector<F>)> {
        let gq = self.gamma_q()?;
        Ok((
            gq.pushforward(self.groupoid.t())?,
            gq.pushforward(self.groupoid.s())?.neg(),
        ))
    }

    /// Matrix reading RREF coordinates of `g` off vectors of `g`.
    pub fn g_coords(&self) -> Mat<F> {
        let g = &self.g;
        Mat::from_fn(g.dim(), g.ambient(), |i, j| {
            if g.pivots()[i] == j {
                F::one()
            } else {
                F::zero()
            }
        })
    }

    pub fn check(&self) -> CheckReport {
        let mut r = CheckReport::new();
        r.absorb("", self.groupoid.check_laws());
        r.record("metric.multiplicative", self.multiplicativity_failure());
        r.record(
            "gamma.t_equals_minus_s",
            match self.gamma_pushforwards() {
                Ok((a, b)) if a == b => None,
                Ok((a, b)) => Some(format!("t(gamma) = {}, -s(gamma) = {}", a.gram(), b.gram())),
                Err(e) => Some(e.to_string()),
            },
        );
        r
    }
}

/// `gamma_g = t(gamma_q) = -s(gamma_q)` in the RREF coordinates of `g`.
pub fn gamma_g<F: Scalar>(mg: &MetrizedLinearGroupoid<F>) -> Result<SymBivector<F>> {
    let (a, b) = mg.gamma_pushforwards()?;
    if a != b {
        return Err(Error::InvalidGroupoid(format!(
            "t(gamma_q) = {} differs from -s(gamma_q) = {}",
            a.gram(),
            b.gram()
        )));
    }
    a.pushforward(&mg.g_coords())
}

/// Module of `q ⇉ g` on a metrized space `p` with moment `u_p`, acting by
/// `lambda ∘ z = z + F_p(lambda)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MetrizedModule<F> {
    pub module: LinearModule<F>,
    pub metric: SymBilinearForm<F>,
    /// `<F_p(lambda), z> = <lambda, u_p(z)>`.
    pub f_p: Mat<F>,
}

/// Builds the action determined by the moment map and the metrics; fails
/// if `u_p` is not admissible.
pub fn moment_to_action<F: Scalar>(
    mg: &MetrizedLinearGroupoid<F>,
    metric_p: &SymBilinearForm<F>,
    u_p: &Mat<F>,
) -> Result<MetrizedModule<F>> {
    let p = metric_p.dim();
    check_dim("moment map rows", mg.groupoid.dim(), u_p.rows())?;
    check_dim("moment map columns", p, u_p.cols())?;
    let gp_inv = metric_p.gram().inverse().map_err(|_| Error::Degenerate)?;
    let f_p = gp_inv.try_mul(&u_p.transpose())?.try_mul(mg.metric.gram())?;
    let module = LinearModule::new(mg.groupoid.clone(), p, u_p.clone(), f_p.clone())?;
    let mm = MetrizedModule {
        module,
        metric: metric_p.clone(),
        f_p,
    };
    if let Some(w) = mm.gamma_failure(mg) {
        return Err(Error::InvalidModule(format!("u_p(gamma_p) != gamma_g: {w}")));
    }
    Ok(mm)
}

impl<F: Scalar> MetrizedModule<F> {
    /// `<lambda ∘ z, lambda ∘ z> = <lambda, lambda> + <z, z>`, polarized.
    pub fn metric_failure(&self, mg: &MetrizedLinearGroupoid<F>) -> Option<String> {
        let pairs = self.module.composable_basis();
        let prods: Vec<Vec<F>> = pairs.iter().map(|(x, y)| self.module.act(x, y).expect("composable")).collect();
        for a in 0..pairs.len() {
            for b in a..pairs.len() {
                let lhs = self.metric.eval(&prods[a], &prods[b]);
                let rhs = mg.metric.eval(&pairs[a].0, &pairs[b].0) + self.metric.eval(&pairs[a].1, &pairs[b].1);
                if lhs != rhs {
                    return Some(format!(
                        "pairs ({}, {}) and ({}, {})",
                        fmt_vec(&pairs[a].0),
                        fmt_vec(&pairs[a].1),
                        fmt_vec(&pairs[b].0),
                        fmt_vec(&pairs[b].1)
                    ));
                }
            }
        }
        None
    }

    /// `u_p(gamma_p) = t(gamma_q)` as bivectors on `q`.
    pub fn gamma_failure(&self, mg: &MetrizedLinearGroupoid<F>) -> Option<String> {
        let lhs = self
            .metric
            .inverse()
            .and_then(|g| g.pushforward(self.module.u()));
        let rhs = mg.gamma_pushforwards().map(|(a, _)| a);
        match (lhs, rhs) {
            (Ok(a), Ok(b)) if a == b => None,
            (Ok(a), Ok(b)) => Some(format!("{} != {}", a.gram(), b.gram())),
            (Err(e), _) | (_, Err(e)) => Some(e.to_string()),
        }
    }

    pub fn check(&self, mg: &MetrizedLinearGroupoid<F>) -> CheckReport {
        let mut r = CheckReport::new();
        r.absorb("", self.module.check_laws());
        r.record("module.metric_preserved", self.metric_failure(mg));
        r.record("module.gamma", self.gamma_failure(mg));
        r
    }
}
