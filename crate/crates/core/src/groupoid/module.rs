use super::linear::{DualGroupoid, LinearGroupoid};
use crate::error::{check_dim, Error, Result};
use crate::linalg::{dot, fmt_vec, vadd, Mat, Subspace};
use crate::report::CheckReport;
use crate::Scalar;

/// Linear action of a linear groupoid on `P` with moment `u: P -> V0`.
///
/// `x ∘ y = y + A(x - s(x))` whenever `s(x) = u(y)`; `A` is stored
/// precomposed with `1 - s`, so it vanishes on the units.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearModule<F> {
    over: LinearGroupoid<F>,
    u: Mat<F>,
    a: Mat<F>,
}

impl<F: Scalar> LinearModule<F> {
    /// `u` is `dim V x dim P`; `a` is `dim P x dim V` and only its
    /// restriction to `ker s` matters.
    pub fn new(over: LinearGroupoid<F>, p_dim: usize, u: Mat<F>, a: Mat<F>) -> Result<Self> {
        let n = over.dim();
        if u.rows() != n || u.cols() != p_dim {
            return Err(Error::InvalidModule(format!("moment map must be {n} x {p_dim}")));
        }
        if a.rows() != p_dim || a.cols() != n {
            return Err(Error::InvalidModule(format!("core action must be {p_dim} x {n}")));
        }
        if !over.units().contains_subspace(&Subspace::column_space(&u)) {
            return Err(Error::InvalidModule("moment map leaves the units".into()));
        }
        let one_minus_s = &Mat::identity(n) - over.s();
        let a = &a * &one_minus_s;
        // u(A w) = t(w) for w in ker s, i.e. u A (1 - s) = t (1 - s) = t - s.
        if &u * &a != over.t() - over.s() {
            return Err(Error::InvalidModule("u(A(w)) != t(w) on ker s".into()));
        }
        Ok(LinearModule { over, u, a })
    }

    pub fn over(&self) -> &LinearGroupoid<F> {
        &self.over
    }

    pub fn p_dim(&self) -> usize {
        self.u.cols()
    }

    pub fn u(&self) -> &Mat<F> {
        &self.u
    }

    /// `A (1 - s)`.
    pub fn a(&self) -> &Mat<F> {
        &self.a
    }

    pub fn moment(&self, y: &[F]) -> Vec<F> {
        self.u.mul_vec(y)
    }

    pub fn act(&self, x: &[F], y: &[F]) -> Result<Vec<F>> {
        check_dim("groupoid element", self.over.dim(), x.len())?;
        check_dim("module element", self.p_dim(), y.len())?;
        if self.over.source(x) != self.moment(y) {
            return Err(Error::NotComposable(format!(
                "s{} != u{}",
                fmt_vec(x),
                fmt_vec(y)
            )));
        }
        Ok(vadd(y, &self.a.mul_vec(x)))
    }

    /// Basis of `{(x, y) : s(x) = u(y)}`.
    pub fn composable_basis(&self) -> Vec<(Vec<F>, Vec<F>)> {
        let n = self.over.dim();
        let m = self.over.s().hstack(&-&self.u).expect("row counts agree");
        m.nullspace()
            .into_iter()
            .map(|v| (v[..n].to_vec(), v[n..].to_vec()))
            .collect()
    }

    /// `u(x ∘ y) = t(x)`, units act trivially, and
    /// `(x1 ∘ x2) ∘ y = x1 ∘ (x2 ∘ y)`, all on composable bases.
    pub fn check_laws(&self) -> CheckReport {
        let mut r = CheckReport::new();
        let g = &self.over;
        let pairs = self.composable_basis();
        let mut moment = None;
        let mut unit = None;
        for (x, y) in &pairs {
            let xy = self.act(x, y).expect("composable by construction");
            if self.moment(&xy) != g.target(x) {
                moment.get_or_insert_with(|| format!("pair {}, {}", fmt_vec(x), fmt_vec(y)));
            }
            let e = self.moment(y);
            if self.act(&e, y).ok().as_ref() != Some(y) {
                unit.get_or_insert_with(|| format!("module element {}", fmt_vec(y)));
            }
        }
        r.record("module.moment", moment);
        r.record("module.unit", unit);
        // (x1, x2, y) with s(x1) = t(x2), s(x2) = u(y).
        let n = g.dim();
        let p = self.p_dim();
        let z = Mat::zeros(n, n);
        let top = g.s().hstack(&-g.t()).and_then(|m| m.hstack(&Mat::zeros(n, p))).expect("blocks");
        let bottom = z.hstack(g.s()).and_then(|m| m.hstack(&-&self.u)).expect("blocks");
        let triples = top.vstack(&bottom).expect("blocks").nullspace();
        let mut assoc = None;
        for v in triples {
            let (x1, x2, y) = (&v[..n], &v[n..2 * n], &v[2 * n..]);
            let a = g.compose(x1, x2).and_then(|x| self.act(&x, y));
            let b = self.act(x2, y).and_then(|w| self.act(x1, &w));
            if a.is_err() || a != b {
                assoc = Some(format!("triple {}, {}, {}", fmt_vec(x1), fmt_vec(x2), fmt_vec(y)));
                break;
            }
        }
        r.record("module.associativity", assoc);
        r
    }
}

/// Dual module over the Pradines dual, solved from
/// `<mu ∘ nu, v ∘ w> = <mu, v> + <nu, w>`.
pub fn dual_module<F: Scalar>(m: &LinearModule<F>, dual: &DualGroupoid<F>) -> Result<LinearModule<F>> {
    let g = m.over();
    let n = g.dim();
    let p = m.p_dim();
    let d = &dual.groupoid;
    // Core -> P, v -> v ∘ 0, dualized and sent to the dual units.
    let core_to_p = m.a().try_mul(g.core().section())?;
    let u_dual = dual.iota.try_mul(&core_to_p.transpose())?;

    let pairs = m.composable_basis();
    let products: Vec<Vec<F>> = pairs
        .iter()
        .map(|(x, y)| m.act(x, y).expect("composable by construction"))
        .collect();
    let w = Mat::from_rows(p, products)?;

    // Dual composable pairs (mu, nu) with s*(mu) = u*(nu).
    let dual_pairs: Vec<Vec<F>> = d.s().hstack(&-&u_dual)?.nullspace();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for v in &dual_pairs {
        let (mu, nu) = (&v[..n], &v[n..]);
        let rhs: Vec<F> = pairs.iter().map(|(x, y)| dot(mu, x) + dot(nu, y)).collect();
        let prod = w.solve(&rhs).ok_or_else(|| {
            Error::InconsistentSystem(format!("no dual action for {}, {}", fmt_vec(mu), fmt_vec(nu)))
        })?;
        xs.push(crate::linalg::vsub(mu, &d.source(mu)));
        ys.push(crate::linalg::vsub(&prod, nu));
    }
    // Solve A* x_i = y_i; the x_i span ker s*.
    let xm = Mat::from_cols(n, &xs)?;
    let ym = Mat::from_cols(p, &ys)?;
    let a_dual_t = xm
        .transpose()
        .solve_mat(&ym.transpose())
        .ok_or_else(|| Error::InconsistentSystem("dual core action is not linear".into()))?;
    let a_dual = a_dual_t.transpose();
    if &a_dual * &xm != ym {
        return Err(Error::InconsistentSystem("dual core action is not linear".into()));
    }
    LinearModule::new(d.clone(), p, u_dual, a_dual)
}

/// `<mu ∘ nu, v ∘ w> = <mu, v> + <nu, w>` on bases of both composable spaces.
pub fn module_pairing_failure<F: Scalar>(m: &LinearModule<F>, dm: &LinearModule<F>) -> Option<String> {
    let pairs = m.composable_basis();
    for (mu, nu) in dm.composable_basis() {
        let a = match dm.act(&mu, &nu) {
            Ok(x) => x,
            Err(e) => return Some(e.to_string()),
        };
        for (v, w) in &pairs {
            let b = match m.act(v, w) {
                Ok(x) => x,
                Err(e) => return Some(e.to_string()),
            };
            if dot(&a, &b) != dot(&mu, v) + dot(&nu, w) {
                return Some(format!(
                    "dual pair {}, {} against {}, {}",
                    fmt_vec(&mu),
                    fmt_vec(&nu),
                    fmt_vec(v),
                    fmt_vec(w)
                ));
            }
        }
    }
    None
}
