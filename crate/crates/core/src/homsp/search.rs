use super::data::KSample;
use crate::dressing::{Dressing, GroupElement};
use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, LieMorphism};
use crate::linalg::{fmt_vec, is_coisotropic, Subspace};
use crate::manin::DiracManinTriple;
use crate::report::{first_diff, CheckReport};
use crate::Scalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SearchConstraints<F> {
    /// Require `beta^sharp(ann c) = c`, which for nondegenerate `beta` is
    /// being Lagrangian for `beta^{-1}`.
    pub lagrangian: bool,
    pub dim: Option<usize>,
    /// Required value of `c ∩ h`.
    pub k: Subspace<F>,
}

impl<F: Scalar> SearchConstraints<F> {
    pub fn new(k: Subspace<F>) -> Self {
        SearchConstraints {
            lagrangian: false,
            dim: None,
            k,
        }
    }
}

/// `beta^sharp(ann c) = c`.
pub fn is_beta_lagrangian<F: Scalar>(c: &Subspace<F>, t: &DiracManinTriple<F>) -> bool {
    let img: Vec<Vec<F>> = c.annihilator().basis_vectors().iter().map(|m| t.beta.sharp(m)).collect();
    Subspace::span(t.dim(), &img).map(|s| s == *c).unwrap_or(false)
}

fn admissible<F: Scalar>(c: &Subspace<F>, t: &DiracManinTriple<F>, cons: &SearchConstraints<F>) -> bool {
    if cons.dim.is_some_and(|d| d != c.dim()) {
        return false;
    }
    if !t.d.is_subalgebra(c, false) || !is_coisotropic(c, &t.beta).unwrap_or(false) {
        return false;
    }
    if cons.lagrangian && !is_beta_lagrangian(c, t) {
        return false;
    }
    if c.intersect(&t.h).map(|m| m != cons.k).unwrap_or(true) {
        return false;
    }
    t.samples.iter().all(|a| c.image(a).map(|i| i == *c).unwrap_or(false))
}

/// Subspaces spanned by nonempty subsets of `candidates` meeting the
/// constraints, each listed once, in the order of the first subset (as a
/// sorted index list, compared lexicographically) that spans it.
pub fn search_coisotropic<F: Scalar>(
    t: &DiracManinTriple<F>,
    candidates: &[Vec<F>],
    cons: &SearchConstraints<F>,
) -> Result<Vec<Subspace<F>>> {
    let m = candidates.len();
    if m >= usize::BITS as usize {
        return Err(Error::Invalid(format!("{m} candidates is too many to enumerate")));
    }
    for v in candidates {
        if v.len() != t.dim() {
            return Err(Error::Invalid(format!("candidate {} is not in d", fmt_vec(v))));
        }
    }
    let mut subsets: Vec<Vec<usize>> = (1u64..1 << m)
        .map(|mask| (0..m).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    subsets.sort();
    let mut seen: Vec<Subspace<F>> = Vec::new();
    let mut out = Vec::new();
    for idx in subsets {
        let vs: Vec<Vec<F>> = idx.iter().map(|&i| candidates[i].clone()).collect();
        let c = Subspace::span(t.dim(), &vs)?;
        if seen.contains(&c) {
            continue;
        }
        seen.push(c.clone());
        if admissible(&c, t, cons) {
            out.push(c);
        }
    }
    Ok(out)
}

/// Harish-Chandra style data `(u, k, f_u)` for actions of `h`'s Lie
/// algebroid on `H/K`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LAClassData<F> {
    pub u_alg: LieAlgebra<F>,
    pub k: Subspace<F>,
    pub f_u: LieMorphism<F>,
    pub samples: Vec<KSample<F>>,
}

pub fn validate_la<F: Scalar>(lad: &LAClassData<F>, t: &DiracManinTriple<F>) -> CheckReport {
    let mut r = CheckReport::new();
    let f = &lad.f_u;
    if f.source.dim() != lad.u_alg.dim() || f.target.dim() != t.dim() || lad.k.ambient() != lad.u_alg.dim() {
        r.fail("shapes", "f_u must map u to d and k must lie in u");
        return r;
    }
    r.pass("shapes");
    r.record("f_u.morphism", f.failure().map(|(i, j)| format!("basis pair ({i}, {j})")));
    r.record(
        "k.subalgebra",
        lad.u_alg.subalgebra_failure(&lad.k).map(|(i, j)| format!("k basis pair ({i}, {j})")),
    );
    r.record(
        "f_u.k_into_h",
        lad.k
            .image(&f.matrix)
            .ok()
            .and_then(|img| img.witness_not_in(&t.h))
            .map(|v| format!("f_u(k) contains {}", fmt_vec(&v))),
    );
    for (i, s) in lad.samples.iter().enumerate() {
        r.record(
            format!("sample[{i}].intertwines"),
            first_diff(&(&f.matrix * &s.on_n), &(&s.on_d * &f.matrix)),
        );
    }
    r
}

/// `u_L([(h, zeta)]) = pr_g(Ad_h f_u(zeta))`.
pub fn la_moment<F: Scalar>(lad: &LAClassData<F>, dressing: &Dressing<F>, h: &GroupElement<F>, zeta: &[F]) -> Result<Vec<F>> {
    let x = lad.f_u.matrix.try_mul_vec(zeta)?;
    if h.ad().rows() != x.len() {
        return Err(Error::InvalidGroupElement("element acts on a different algebra".into()));
    }
    Ok(dressing.ehat_moment(h, &x))
}

/// The data of the underlying action of `h`'s Lie algebroid: `u` with the
/// restriction of `f_n`.
pub fn la_data_of<F: Scalar>(data: &super::ClassificationData<F>, t: &DiracManinTriple<F>) -> Result<LAClassData<F>> {
    let basis = data.u.basis_cols();
    let lift = basis.to_cols();
    let coords = super::data::coords_matrix(&data.u);
    let u_alg = LieAlgebra::from_bracket_fn(crate::lie::default_labels(data.u.dim()), |i, j| {
        coords.mul_vec(&data.n.bracket(&lift[i], &lift[j]))
    });
    let f_u = LieMorphism::new(u_alg.clone(), t.d.clone(), data.f_n.try_mul(&basis)?)?;
    let k = data.k.image(&coords)?;
    let samples = data
        .samples
        .iter()
        .map(|s| {
            Ok(KSample {
                on_n: coords.try_mul(&s.on_n)?.try_mul(&basis)?,
                on_d: s.on_d.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LAClassData { u_alg, k, f_u, samples })
}

