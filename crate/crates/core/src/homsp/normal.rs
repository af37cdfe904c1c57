use super::data::{build_f_n, moment_into_q, ClassificationData};
use crate::dressing::{Dressing, GroupElement, Semidirect, SemidirectElement};
use crate::error::{check_dim, Error, Result};
use crate::linalg::{fmt_vec, unit_vec, vadd, vsub, Mat};
use crate::manin::DiracManinTriple;
use crate::report::CheckReport;
use crate::Scalar;

/// The module `P = H x_K n` of `H ⋉ q` in the coordinates `(h, zeta)`.
#[derive(Clone, Debug)]
pub struct NormalForm<F> {
    pub data: ClassificationData<F>,
    pub sd: Semidirect<F>,
    /// `zeta -> pr_g f_n(zeta)`, into `g ⊆ q`.
    pub u_map: Mat<F>,
    /// `F_n: q -> n`.
    pub big_f: Mat<F>,
}

impl<F: Scalar> NormalForm<F> {
    pub fn new(data: &ClassificationData<F>, t: &DiracManinTriple<F>) -> Result<Self> {
        let sd = Semidirect::new(Dressing::new(t)?)?;
        let u_map = moment_into_q(data, t, &sd.qp)?;
        let big_f = build_f_n(data, t, &sd.qp)?;
        Ok(NormalForm {
            data: data.clone(),
            sd,
            u_map,
            big_f,
        })
    }

    pub fn triple(&self) -> &DiracManinTriple<F> {
        &self.sd.dressing.triple
    }

    /// `u_P(h, zeta) = h • pr_g f_n(zeta)`, in `q`.
    pub fn moment(&self, h: &GroupElement<F>, zeta: &[F]) -> Result<Vec<F>> {
        check_dim("n element", self.data.dim(), zeta.len())?;
        Ok(self.sd.bullet_matrix(h)?.mul_vec(&self.u_map.mul_vec(zeta)))
    }

    /// The same moment read in `d`: `pr_g Ad_h f_n(zeta)`.
    pub fn moment_d(&self, h: &GroupElement<F>, zeta: &[F]) -> Vec<F> {
        self.sd.dressing.ehat_moment(h, &self.data.f_n.mul_vec(zeta))
    }

    /// `(g, lambda) ∘ (h, zeta) = (g h, zeta + F_n(h^{-1} • lambda))`.
    pub fn act(
        &self,
        x: &SemidirectElement<F>,
        h: &GroupElement<F>,
        zeta: &[F],
    ) -> Result<(GroupElement<F>, Vec<F>)> {
        check_dim("q element", self.sd.q_dim(), x.lambda.len())?;
        let m = self.moment(h, zeta)?;
        if self.sd.source(x) != m {
            return Err(Error::NotComposable(format!(
                "s{} != u_P = {}",
                fmt_vec(&x.lambda),
                fmt_vec(&m)
            )));
        }
        let moved = self.sd.bullet_matrix(&h.inverse())?.mul_vec(&x.lambda);
        Ok((x.h.mul(h), vadd(zeta, &self.big_f.mul_vec(&moved))))
    }

    /// `a_P(h, zeta)`: the dressing field of `f_n(zeta)` at `h`.
    pub fn anchor(&self, h: &GroupElement<F>, zeta: &[F]) -> Vec<F> {
        self.sd.dressing.dressing_field(h, &self.data.f_n.mul_vec(zeta))
    }

    /// Module laws on every pair and triple of the given elements of `H`,
    /// with `q` and `n` parts running over bases of the composable spaces,
    /// plus descent along the `K` samples of the data.
    pub fn check_laws(&self, samples: &[GroupElement<F>]) -> CheckReport {
        let mut r = CheckReport::new();
        match self.laws(samples) {
            Ok(sub) => r.absorb("", sub),
            Err(e) => r.fail("nf.bullet", e.to_string()),
        }
        r
    }

    fn laws(&self, samples: &[GroupElement<F>]) -> Result<CheckReport> {
        let nq = self.sd.q_dim();
        let nn = self.data.dim();
        let g = &self.sd.mg.groupoid;
        let (s, t) = (g.s(), g.t());
        let u = &self.u_map;
        let bf = &self.big_f;
        let phi: Vec<Mat<F>> = samples.iter().map(|h| self.sd.bullet_matrix(h)).collect::<Result<_>>()?;
        let phi_inv: Vec<Mat<F>> = phi.iter().map(|m| m.inverse()).collect::<Result<_>>()?;
        let mut prod_inv = vec![vec![Mat::zeros(0, 0); samples.len()]; samples.len()];
        for (i, a) in samples.iter().enumerate() {
            for (j, b) in samples.iter().enumerate() {
                prod_inv[i][j] = self.sd.bullet_matrix(&a.mul(b).inverse())?;
            }
        }
        // (lambda, zeta) with s(lambda) = phi_j U zeta.
        let composable = |j: usize| -> Result<Vec<(Vec<F>, Vec<F>)>> {
            Ok(s.hstack(&-&(&phi[j] * u))?
                .nullspace()
                .into_iter()
                .map(|v| (v[..nq].to_vec(), v[nq..].to_vec()))
                .collect())
        };
        let act = |lambda: &[F], zeta: &[F], inv: &Mat<F>| vadd(zeta, &bf.mul_vec(&inv.mul_vec(lambda)));

        let mut moment = None;
        for i in 0..samples.len() {
            for j in 0..samples.len() {
                let to_q = prod_inv[i][j].inverse()?;
                for (lambda, zeta) in composable(j)? {
                    let z = act(&lambda, &zeta, &phi_inv[j]);
                    if to_q.mul_vec(&u.mul_vec(&z)) != phi[i].mul_vec(&t.mul_vec(&lambda)) {
                        moment.get_or_insert_with(|| format!("samples ({i}, {j}), lambda {}", fmt_vec(&lambda)));
                    }
                }
            }
        }

        let mut unit = None;
        let mut anchor = None;
        let mut in_d = None;
        let fq = &self.sd.qp.fq().matrix;
        for (j, h) in samples.iter().enumerate() {
            for k in 0..nn {
                let zeta = unit_vec(nn, k);
                let m = phi[j].mul_vec(&u.mul_vec(&zeta));
                if act(&m, &zeta, &phi_inv[j]) != zeta {
                    unit.get_or_insert_with(|| format!("sample {j}, basis vector {k}"));
                }
                let md = self.moment_d(h, &zeta);
                if fq.mul_vec(&m) != md {
                    in_d.get_or_insert_with(|| format!("sample {j}, basis vector {k}"));
                }
                let fz = self.data.f_n.mul_vec(&zeta);
                if self.anchor(h, &zeta) != vsub(&fz, &h.ad_inv().mul_vec(&md)) || !self.triple().h.contains(&h.ad().mul_vec(&self.anchor(h, &zeta))) {
                    anchor.get_or_insert_with(|| format!("sample {j}, basis vector {k}"));
                }
            }
        }

        let mut assoc = None;
        let zq = Mat::zeros(nq, nq);
        let zn = Mat::zeros(nq, nn);
        'outer: for i in 0..samples.len() {
            for j in 0..samples.len() {
                for k in 0..samples.len() {
                    // s(l1) = phi_j t(l2), s(l2) = phi_k U zeta.
                    let top = s.hstack(&-&(&phi[j] * t))?.hstack(&zn)?;
                    let bottom = zq.hstack(s)?.hstack(&-&(&phi[k] * u))?;
                    for v in top.vstack(&bottom)?.nullspace() {
                        let (l1, l2, zeta) = (&v[..nq], &v[nq..2 * nq], &v[2 * nq..]);
                        let right = act(l1, &act(l2, zeta, &phi_inv[k]), &prod_inv[j][k]);
                        let l12 = vadd(l2, &phi_inv[j].mul_vec(&vsub(l1, &s.mul_vec(l1))));
                        let left = act(&l12, zeta, &phi_inv[k]);
                        if left != right {
                            assoc = Some(format!("samples ({i}, {j}, {k}), element {}", fmt_vec(&v)));
                            break 'outer;
                        }
                    }
                }
            }
        }

        let mut descent = None;
        for (ki, ks) in self.data.samples.iter().enumerate() {
            let kel = GroupElement::from_ad(ks.on_d.clone())?;
            let phi_k = self.sd.bullet_matrix(&kel)?;
            for (j, h) in samples.iter().enumerate() {
                // (h k^{-1}, A_n zeta) represents the same point as (h, zeta).
                let hk_inv = self.sd.bullet_matrix(&h.mul(&kel.inverse()).inverse())?;
                for (lambda, zeta) in composable(j)? {
                    let az = ks.on_n.mul_vec(&zeta);
                    let same_moment = phi[j].mul_vec(&u.mul_vec(&zeta)) == hk_inv.inverse()?.mul_vec(&u.mul_vec(&az));
                    let a = ks.on_n.mul_vec(&act(&lambda, &zeta, &phi_inv[j]));
                    let b = act(&lambda, &az, &hk_inv);
                    if !same_moment || a != b {
                        descent.get_or_insert_with(|| format!("K sample {ki}, H sample {j}, lambda {}", fmt_vec(&lambda)));
                    }
                }
            }
            if &ks.on_n * bf != bf * &phi_k {
                descent.get_or_insert_with(|| format!("K sample {ki}: A_n F_n != F_n (k •)"));
            }
        }

        let mut r = CheckReport::new();
        r.record(
            "nf.f_vanishes_on_g",
            self.sd.mg.g.basis_vectors().iter().find(|v| !crate::linalg::is_zero_vec(&bf.mul_vec(v))).map(|v| fmt_vec(v)),
        );
        r.record("nf.moment", moment);
        r.record("nf.moment_in_d", in_d);
        r.record("nf.unit", unit);
        r.record("nf.associativity", assoc);
        r.record("nf.k_descent", descent);
        r.record("nf.anchor", anchor);
        Ok(r)
    }
}
