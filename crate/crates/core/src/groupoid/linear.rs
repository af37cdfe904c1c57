use crate::error::{check_dim, Error, Result};
use crate::linalg::{dot, fmt_vec, vadd, vsub, Mat, QuotientSpace, Subspace};
use crate::report::CheckReport;
use crate::Scalar;

/// Unit fiber of a VB-groupoid over a group: a vector space `V` with units
/// `V0` and idempotent source and target maps onto `V0`.
///
/// Composition is forced to be `x ∘ y = x + y - s(x)` for `s(x) = t(y)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearGroupoid<F> {
    units: Subspace<F>,
    s: Mat<F>,
    t: Mat<F>,
    core: QuotientSpace<F>,
}

impl<F: Scalar> LinearGroupoid<F> {
    pub fn new(dim: usize, units: Subspace<F>, s: Mat<F>, t: Mat<F>) -> Result<Self> {
        check_dim("units ambient", dim, units.ambient())?;
        for (name, m) in [("source", &s), ("target", &t)] {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::InvalidGroupoid(format!("{name} map is not {dim} x {dim}")));
            }
            if &(m * m) != m {
                return Err(Error::InvalidGroupoid(format!("{name} map is not idempotent")));
            }
            if Subspace::column_space(m) != units {
                return Err(Error::InvalidGroupoid(format!("{name} map does not have image equal to the units")));
            }
        }
        Ok(LinearGroupoid {
            core: QuotientSpace::new(units.clone()),
            units,
            s,
            t,
        })
    }

    pub fn dim(&self) -> usize {
        self.s.rows()
    }

    pub fn units(&self) -> &Subspace<F> {
        &self.units
    }

    pub fn s(&self) -> &Mat<F> {
        &self.s
    }

    pub fn t(&self) -> &Mat<F> {
        &self.t
    }

    /// The core `V / V0`.
    pub fn core(&self) -> &QuotientSpace<F> {
        &self.core
    }

    pub fn core_dim(&self) -> usize {
        self.core.dim()
    }

    /// Core vanishes.
    pub fn is_vacant(&self) -> bool {
        self.core_dim() == 0
    }

    /// Only one unit.
    pub fn is_group(&self) -> bool {
        self.units.is_zero()
    }

    /// Isomorphism `core -> ker t`, `[v] -> (1 - t) v`.
    pub fn core_to_ker_t(&self) -> Mat<F> {
        &(&Mat::identity(self.dim()) - &self.t) * self.core.section()
    }

    /// Isomorphism `core -> ker s`, `[v] -> (1 - s) v`.
    pub fn core_to_ker_s(&self) -> Mat<F> {
        &(&Mat::identity(self.dim()) - &self.s) * self.core.section()
    }

    pub fn source(&self, x: &[F]) -> Vec<F> {
        self.s.mul_vec(x)
    }

    pub fn target(&self, x: &[F]) -> Vec<F> {
        self.t.mul_vec(x)
    }

    pub fn composable(&self, x: &[F], y: &[F]) -> bool {
        self.source(x) == self.target(y)
    }

    pub fn compose(&self, x: &[F], y: &[F]) -> Result<Vec<F>> {
        check_dim("groupoid element", self.dim(), x.len())?;
        check_dim("groupoid element", self.dim(), y.len())?;
        if !self.composable(x, y) {
            return Err(Error::NotComposable(format!(
                "s{} != t{}",
                fmt_vec(x),
                fmt_vec(y)
            )));
        }
        Ok(vsub(&vadd(x, y), &self.source(x)))
    }

    pub fn invert(&self, x: &[F]) -> Vec<F> {
        vsub(&vadd(&self.source(x), &self.target(x)), x)
    }

    /// Basis of `{(x, y) : s(x) = t(y)}`.
    pub fn composable_basis(&self) -> Vec<(Vec<F>, Vec<F>)> {
        let n = self.dim();
        let m = self.s.hstack(&-&self.t).expect("square blocks");
        m.nullspace()
            .into_iter()
            .map(|v| (v[..n].to_vec(), v[n..].to_vec()))
            .collect()
    }

    /// Basis of `{(x, y, z) : s(x) = t(y), s(y) = t(z)}`.
    pub fn composable_triples(&self) -> Vec<[Vec<F>; 3]> {
        let n = self.dim();
        let z = Mat::zeros(n, n);
        let top = self.s.hstack(&-&self.t).and_then(|m| m.hstack(&z)).expect("blocks");
        let bottom = z.hstack(&self.s).and_then(|m| m.hstack(&-&self.t)).expect("blocks");
        top.vstack(&bottom)
            .expect("blocks")
            .nullspace()
            .into_iter()
            .map(|v| [v[..n].to_vec(), v[n..2 * n].to_vec(), v[2 * n..].to_vec()])
            .collect()
    }

    /// Groupoid laws, checked on bases of the composable pairs and triples.
    pub fn check_laws(&self) -> CheckReport {
        let mut r = CheckReport::new();
        let pairs = self.composable_basis();
        let mut st = None;
        for (x, y) in &pairs {
            let xy = self.compose(x, y).expect("composable by construction");
            if self.source(&xy) != self.source(y) || self.target(&xy) != self.target(x) {
                st = Some(format!("pair {}, {}", fmt_vec(x), fmt_vec(y)));
                break;
            }
        }
        r.record("groupoid.source_target", st);
        let mut assoc = None;
        for [x, y, z] in self.composable_triples() {
            let a = self.compose(&self.compose(&x, &y).expect("composable"), &z);
            let b = self.compose(&x, &self.compose(&y, &z).expect("composable"));
            if a.is_err() || a != b {
                assoc = Some(format!("triple {}, {}, {}", fmt_vec(&x), fmt_vec(&y), fmt_vec(&z)));
                break;
            }
        }
        r.record("groupoid.associativity", assoc);
        let mut units = None;
        let mut inverse = None;
        for i in 0..self.dim() {
            let x = crate::linalg::unit_vec(self.dim(), i);
            let left = self.compose(&self.target(&x), &x);
            let right = self.compose(&x, &self.source(&x));
            if left.as_ref().ok() != Some(&x) || right.as_ref().ok() != Some(&x) {
                units.get_or_insert_with(|| format!("basis vector {i}"));
            }
            let inv = self.invert(&x);
            let a = self.compose(&x, &inv);
            let b = self.compose(&inv, &x);
            if a.ok() != Some(self.target(&x)) || b.ok() != Some(self.source(&x)) {
                inverse.get_or_insert_with(|| format!("basis vector {i}"));
            }
        }
        r.record("groupoid.units", units);
        r.record("groupoid.inverse", inverse);
        r
    }
}

/// Pradines dual on `V*`, together with the maps used to build it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DualGroupoid<F> {
    pub groupoid: LinearGroupoid<F>,
    /// `V* -> core*`, restriction to `ker t` transported to the core.
    pub s_core: Mat<F>,
    /// `V* -> core*`, restriction to `ker s` transported to the core.
    pub t_core: Mat<F>,
    /// `core* -> V*`, the unit embedding solved from idempotency.
    pub iota: Mat<F>,
}

/// Builds the dual groupoid by solving for the composition characterized by
/// `<mu1 ∘ mu2, v1 ∘ v2> = <mu1, v1> + <mu2, v2>`.
pub fn dualize<F: Scalar>(g: &LinearGroupoid<F>) -> Result<DualGroupoid<F>> {
    let n = g.dim();
    let s_core = g.core_to_ker_t().transpose();
    let t_core = g.core_to_ker_s().transpose();
    let pairs = g.composable_basis();
    let products: Vec<Vec<F>> = pairs
        .iter()
        .map(|(x, y)| g.compose(x, y).expect("composable by construction"))
        .collect();
    let w = Mat::from_rows(n, products)?;

    // Composition on a basis of dual composable pairs.
    let dual_pairs: Vec<(Vec<F>, Vec<F>)> = s_core
        .hstack(&-&t_core)?
        .nullspace()
        .into_iter()
        .map(|v| (v[..n].to_vec(), v[n..].to_vec()))
        .collect();
    let solve = |mu1: &[F], mu2: &[F]| -> Result<Vec<F>> {
        let rhs: Vec<F> = pairs
            .iter()
            .map(|(x, y)| dot(mu1, x) + dot(mu2, y))
            .collect();
        w.solve(&rhs).ok_or_else(|| {
            Error::InconsistentSystem(format!(
                "no dual product for {} and {}",
                fmt_vec(mu1),
                fmt_vec(mu2)
            ))
        })
    };
    let mut products = Vec::with_capacity(dual_pairs.len());
    for (m1, m2) in &dual_pairs {
        products.push(solve(m1, m2)?);
    }

    // Units: mu with s*(mu) = t*(mu) and mu ∘ mu = mu.
    let diag = Subspace::kernel(&(&s_core - &t_core));
    let mut idem_rows = Vec::new();
    let diag_basis = diag.basis_vectors();
    let mut diag_square = Vec::with_capacity(diag_basis.len());
    for mu in &diag_basis {
        diag_square.push(solve(mu, mu)?);
    }
    // Coordinates c on diag: mu = sum c_i d_i; condition sum c_i (d_i∘d_i - d_i) = 0.
    let defect: Vec<Vec<F>> = diag_square
        .iter()
        .zip(&diag_basis)
        .map(|(sq, d)| vsub(sq, d))
        .collect();
    let defect_mat = Mat::from_cols(n, &defect)?;
    for c in defect_mat.nullspace() {
        let mu = diag_basis
            .iter()
            .zip(&c)
            .fold(vec![F::zero(); n], |acc, (d, ci)| vadd(&acc, &crate::linalg::vscale(ci, d)));
        idem_rows.push(mu);
    }
    let units = Subspace::span(n, &idem_rows)?;
    if units.dim() != g.core_dim() {
        return Err(Error::InconsistentSystem(format!(
            "dual units have dimension {} but the core has dimension {}",
            units.dim(),
            g.core_dim()
        )));
    }
    // iota = (s*|_U)^{-1}.
    let ub = units.basis_cols();
    let s_on_u = s_core.try_mul(&ub)?;
    let iota = ub.try_mul(&s_on_u.inverse().map_err(|_| {
        Error::InconsistentSystem("source map is not injective on the dual units".into())
    })?)?;
    let s_dual = iota.try_mul(&s_core)?;
    let t_dual = iota.try_mul(&t_core)?;
    let dual = LinearGroupoid::new(n, units, s_dual, t_dual)?;
    for ((m1, m2), p) in dual_pairs.iter().zip(&products) {
        if dual.compose(m1, m2)? != *p {
            return Err(Error::InconsistentSystem(format!(
                "forced composition disagrees with the pairing at {}, {}",
                fmt_vec(m1),
                fmt_vec(m2)
            )));
        }
    }
    Ok(DualGroupoid {
        groupoid: dual,
        s_core,
        t_core,
        iota,
    })
}

/// `<mu1 ∘ mu2, v1 ∘ v2> = <mu1, v1> + <mu2, v2>` on bases of both
/// composable spaces; returns the first failing pair of pairs.
pub fn pairing_failure<F: Scalar>(g: &LinearGroupoid<F>, dual: &LinearGroupoid<F>) -> Option<String> {
    let pairs = g.composable_basis();
    for (m1, m2) in dual.composable_basis() {
        let mm = match dual.compose(&m1, &m2) {
            Ok(x) => x,
            Err(e) => return Some(e.to_string()),
        };
        for (v1, v2) in &pairs {
            let vv = match g.compose(v1, v2) {
                Ok(x) => x,
                Err(e) => return Some(e.to_string()),
            };
            if dot(&mm, &vv) != dot(&m1, v1) + dot(&m2, v2) {
                return Some(format!(
                    "dual pair {}, {} against {}, {}",
                    fmt_vec(&m1),
                    fmt_vec(&m2),
                    fmt_vec(v1),
                    fmt_vec(v2)
                ));
            }
        }
    }
    None
}
