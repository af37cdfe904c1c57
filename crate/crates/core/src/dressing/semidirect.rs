use super::{Dressing, GroupElement};
use crate::error::{check_dim, Error, Result};
use crate::groupoid::{from_manin_pair, MetrizedLinearGroupoid};
use crate::linalg::{fmt_vec, vadd, vsub, Mat};
use crate::manin::{build_q_pair, QPair};
use crate::report::CheckReport;
use crate::Scalar;

/// `H ⋉ q ⇉ g` for the natural complement `r = f_q^{-1}(h)`.
#[derive(Clone, Debug)]
pub struct Semidirect<F> {
    pub dressing: Dressing<F>,
    pub qp: QPair<F>,
    pub mg: MetrizedLinearGroupoid<F>,
}

/// An element `(h, lambda)` of `H ⋉ q`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemidirectElement<F> {
    pub h: GroupElement<F>,
    pub lambda: Vec<F>,
}

impl<F: Scalar> Semidirect<F> {
    pub fn new(dressing: Dressing<F>) -> Result<Self> {
        let qp = build_q_pair(&dressing.triple)?;
        let r = qp.natural_complement(&dressing.triple.h)?;
        let mg = from_manin_pair(&qp.pair, &r)?;
        Ok(Semidirect { dressing, qp, mg })
    }

    pub fn q_dim(&self) -> usize {
        self.mg.groupoid.dim()
    }

    /// `h • xi` on `g ⊆ q`, in the RREF coordinates of `g`.
    fn bullet_g_coords(&self, h: &GroupElement<F>) -> Result<Mat<F>> {
        let g_q = &self.mg.g;
        let g_d = &self.dressing.triple.g;
        let fq = &self.qp.fq().matrix;
        let mut cols = Vec::with_capacity(g_q.dim());
        for v in g_q.basis_vectors() {
            let in_d = fq.mul_vec(&v);
            let moved = self.dressing.bullet_on_g(h, &in_d)?;
            let c = g_d.coords(&moved).ok_or_else(|| Error::Invalid("bullet leaves g".into()))?;
            let back = self.qp.g_embed.mul_vec(&c);
            cols.push(g_q.coords(&back).ok_or_else(|| Error::Invalid("g embedding leaves g".into()))?);
        }
        Mat::from_cols(g_q.dim(), &cols)
    }

    /// The `•`-action of `h` on `q`: the bullet action on `g`, extended to
    /// `r` by preserving the pairing between `r` and `g`. Fails if the
    /// result does not preserve the metric and `r⊥`.
    pub fn bullet_matrix(&self, h: &GroupElement<F>) -> Result<Mat<F>> {
        check_dim("group element algebra", self.dressing.triple.dim(), h.ad().rows())?;
        let metric = self.mg.metric.gram();
        let gq = self.mg.g.basis_cols();
        let rq = self.mg.r.basis_cols();
        let b = self.bullet_g_coords(h)?;
        let p = rq.transpose().try_mul(metric)?.try_mul(&gq)?;
        let p_inv_t = p.transpose().inverse()?;
        let b_inv_t = b.inverse()?.transpose();
        let x = p_inv_t.try_mul(&b_inv_t)?.try_mul(&p.transpose())?;
        let t = gq.hstack(&rq)?;
        let phi = t.try_mul(&Mat::block_diag(&b, &x))?.try_mul(&t.inverse()?)?;
        if &(&phi.transpose() * metric) * &phi != *metric {
            return Err(Error::InvalidGroupElement("bullet action does not preserve the metric of q".into()));
        }
        let r_perp = self.mg.r.orth_complement(&self.mg.metric)?;
        if r_perp.image(&phi)? != r_perp {
            return Err(Error::InvalidGroupElement("bullet action does not preserve r⊥".into()));
        }
        Ok(phi)
    }

    pub fn source(&self, a: &SemidirectElement<F>) -> Vec<F> {
        self.mg.groupoid.source(&a.lambda)
    }

    pub fn target(&self, a: &SemidirectElement<F>) -> Result<Vec<F>> {
        Ok(self.bullet_matrix(&a.h)?.mul_vec(&self.mg.groupoid.target(&a.lambda)))
    }

    /// `(h1, l1) ∘ (h2, l2) = (h1 h2, l2 + h2^{-1} • (l1 - s(l1)))`.
    pub fn compose(&self, a: &SemidirectElement<F>, b: &SemidirectElement<F>) -> Result<SemidirectElement<F>> {
        check_dim("q element", self.q_dim(), a.lambda.len())?;
        check_dim("q element", self.q_dim(), b.lambda.len())?;
        if self.source(a) != self.target(b)? {
            return Err(Error::NotComposable(format!(
                "s{} != t{}",
                fmt_vec(&a.lambda),
                fmt_vec(&b.lambda)
            )));
        }
        let core = vsub(&a.lambda, &self.source(a));
        let moved = self.bullet_matrix(&b.h.inverse())?.mul_vec(&core);
        Ok(SemidirectElement {
            h: a.h.mul(&b.h),
            lambda: vadd(&b.lambda, &moved),
        })
    }

    /// `(h, l)^{-1} = (h^{-1}, h • (s(l) + t(l) - l))`.
    pub fn invert(&self, a: &SemidirectElement<F>) -> Result<SemidirectElement<F>> {
        let inv = self.mg.groupoid.invert(&a.lambda);
        Ok(SemidirectElement {
            h: a.h.inverse(),
            lambda: self.bullet_matrix(&a.h)?.mul_vec(&inv),
        })
    }

    pub fn unit(&self, xi: &[F]) -> SemidirectElement<F> {
        let t = &self.dressing.triple;
        SemidirectElement {
            h: GroupElement::identity(t.dim(), 0),
            lambda: xi.to_vec(),
        }
    }

    /// Bases of `{(l1, l2) : s(l1) = h2 • t(l2)}`.
    pub fn composable_basis(&self, h2: &GroupElement<F>) -> Result<Vec<(Vec<F>, Vec<F>)>> {
        let n = self.q_dim();
        let g = &self.mg.groupoid;
        let rhs = self.bullet_matrix(h2)?.try_mul(g.t())?;
        Ok(g
            .s()
            .hstack(&-&rhs)?
            .nullspace()
            .into_iter()
            .map(|v| (v[..n].to_vec(), v[n..].to_vec()))
            .collect())
    }

    /// Groupoid laws on every pair and triple of the given group elements,
    /// with the `q` parts running over bases of the composable spaces.
    pub fn check_laws(&self, samples: &[GroupElement<F>]) -> CheckReport {
        let mut r = CheckReport::new();
        match self.laws(samples) {
            Ok(sub) => r.absorb("", sub),
            Err(e) => r.fail("semidirect.bullet", e.to_string()),
        }
        r
    }

    fn laws(&self, samples: &[GroupElement<F>]) -> Result<CheckReport> {
        let n = self.q_dim();
        let g = &self.mg.groupoid;
        let (s, t) = (g.s(), g.t());
        let phi: Vec<Mat<F>> = samples.iter().map(|h| self.bullet_matrix(h)).collect::<Result<_>>()?;
        let phi_inv: Vec<Mat<F>> = phi.iter().map(|m| m.inverse()).collect::<Result<_>>()?;
        // (l1, l2) -> l2 + phi_inv_2 (l1 - s l1), with the h part tracked separately.
        let mul = |l1: &[F], l2: &[F], j: usize| vadd(l2, &phi_inv[j].mul_vec(&vsub(l1, &s.mul_vec(l1))));
        let tgt = |m: &Mat<F>, l: &[F]| m.mul_vec(&t.mul_vec(l));
        let mut action = None;
        let mut st = None;
        let mut products = vec![vec![Mat::zeros(0, 0); samples.len()]; samples.len()];
        for (i, h1) in samples.iter().enumerate() {
            for (j, h2) in samples.iter().enumerate() {
                let p = self.bullet_matrix(&h1.mul(h2))?;
                if p != &phi[i] * &phi[j] && action.is_none() {
                    action = Some(format!("samples {i} and {j}"));
                }
                products[i][j] = p;
            }
        }
        for i in 0..samples.len() {
            for j in 0..samples.len() {
                let m = s.hstack(&-&(&phi[j] * t))?;
                for v in m.nullspace() {
                    let (l1, l2) = (&v[..n], &v[n..]);
                    let ab = mul(l1, l2, j);
                    if s.mul_vec(&ab) != s.mul_vec(l2) || tgt(&products[i][j], &ab) != tgt(&phi[i], l1) {
                        st.get_or_insert_with(|| format!("pair {}, {}", fmt_vec(l1), fmt_vec(l2)));
                    }
                }
            }
        }
        let mut units = None;
        let mut inverse = None;
        for i in 0..samples.len() {
            for k in 0..n {
                let l = crate::linalg::unit_vec(n, k);
                // Left unit (e, t(a)) and right unit (e, s(a)); phi of e is 1.
                let left = vadd(&l, &vsub(&tgt(&phi[i], &l), &s.mul_vec(&tgt(&phi[i], &l))));
                let right = vadd(&s.mul_vec(&l), &vsub(&l, &s.mul_vec(&l)));
                if left != l || right != l {
                    units.get_or_insert_with(|| format!("basis vector {k}"));
                }
                // a^{-1} = (h^{-1}, phi (s l + t l - l)); a a^{-1} lands on
                // (e, t(a)) and a^{-1} a on (e, s(a)).
                let inv = phi[i].mul_vec(&g.invert(&l));
                let a_inv = vadd(&inv, &phi[i].mul_vec(&vsub(&l, &s.mul_vec(&l))));
                let inv_a = vadd(&l, &phi_inv[i].mul_vec(&vsub(&inv, &s.mul_vec(&inv))));
                if s.mul_vec(&l) != t.mul_vec(&phi_inv[i].mul_vec(&inv))
                    || a_inv != tgt(&phi[i], &l)
                    || inv_a != s.mul_vec(&l)
                {
                    inverse.get_or_insert_with(|| format!("basis vector {k}"));
                }
            }
        }
        let mut assoc = None;
        let z = Mat::zeros(n, n);
        'outer: for i in 0..samples.len() {
            for j in 0..samples.len() {
                for k in 0..samples.len() {
                    // s(l1) = h2 • t(l2), s(l2) = h3 • t(l3).
                    let top = s.hstack(&-&(&phi[j] * t))?.hstack(&z)?;
                    let bottom = z.hstack(s)?.hstack(&-&(&phi[k] * t))?;
                    for v in top.vstack(&bottom)?.nullspace() {
                        let (l1, l2, l3) = (&v[..n], &v[n..2 * n], &v[2 * n..]);
                        // (ab)c uses (h1 h2, .) then h3; a(bc) uses h2 h3 as the right factor.
                        let x = mul(&mul(l1, l2, j), l3, k);
                        let bc = mul(l2, l3, k);
                        let inv_23 = products[j][k].inverse()?;
                        let y = vadd(&bc, &inv_23.mul_vec(&vsub(l1, &s.mul_vec(l1))));
                        if x != y {
                            assoc = Some(format!("samples ({i}, {j}, {k}), triple {}", fmt_vec(&v)));
                            break 'outer;
                        }
                    }
                }
            }
        }
        let mut r = CheckReport::new();
        r.record("semidirect.action", action);
        r.record("semidirect.source_target", st);
        r.record("semidirect.associativity", assoc);
        r.record("semidirect.units", units);
        r.record("semidirect.inverse", inverse);
        Ok(r)
    }
}
