//! Standard examples: Cartan-Dirac triples, abelian doubles, quasi-Poisson
//! translations and the small fixtures used throughout the tests.

use crate::dressing::GroupElement;
use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, MatrixRep, MetrizedLieAlgebra};
use crate::linalg::{Mat, Subspace, SymBilinearForm, SymBivector};
use crate::manin::DiracManinTriple;
use crate::Scalar;

/// Which summand of `h ⊕ h̄` carries the subalgebra `h` and the action of `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SlotConvention {
    First,
    Second,
}

/// `sl2` on the basis `(e, f, H)`.
pub fn sl2<F: Scalar>() -> LieAlgebra<F> {
    LieAlgebra::from_records(
        vec!["e".into(), "f".into(), "H".into()],
        &[
            (0, 1, 2, F::one()),
            (0, 2, 0, F::from_i64(-2)),
            (1, 2, 1, F::from_i64(2)),
        ],
    )
    .expect("sl2 structure constants")
}

/// Defining 2x2 representation of `sl2`.
pub fn sl2_rep<F: Scalar>() -> MatrixRep<F> {
    MatrixRep::new(
        sl2(),
        2,
        vec![
            Mat::from_i64(&[&[0, 1], &[0, 0]]),
            Mat::from_i64(&[&[0, 0], &[1, 0]]),
            Mat::from_i64(&[&[1, 0], &[0, -1]]),
        ],
    )
    .expect("sl2 defining representation")
}

/// `sl2` with its trace form.
pub fn sl2_metrized<F: Scalar>() -> MetrizedLieAlgebra<F> {
    MetrizedLieAlgebra::new(sl2(), sl2_rep().trace_form()).expect("trace form is invariant")
}

/// A few elements of `SL(2, Q)`: diagonal, upper and lower unipotent, and a
/// generic one.
pub fn sl2_group_matrices<F: Scalar>() -> Vec<Mat<F>> {
    vec![
        Mat::diag(&[F::two(), F::half()]),
        Mat::from_i64(&[&[1, 1], &[0, 1]]),
        Mat::from_i64(&[&[1, 0], &[1, 1]]),
        Mat::from_i64(&[&[2, 1], &[1, 1]]),
    ]
}

/// Diagonal representation of the abelian algebra `Q^n`.
pub fn abelian_rep<F: Scalar>(n: usize) -> MatrixRep<F> {
    let images = (0..n)
        .map(|i| Mat::from_fn(n, n, |a, b| if a == i && b == i { F::one() } else { F::zero() }))
        .collect();
    MatrixRep::new(LieAlgebra::abelian(n), n, images).expect("diagonal representation")
}

/// `(h ⊕ h̄, h_Δ, h ⊕ 0)` with `beta` the inverse of `(B, -B)`; with
/// [`SlotConvention::Second`] the subalgebra is `0 ⊕ h` instead.
pub fn build_cartan_dirac<F: Scalar>(h_alg: &MetrizedLieAlgebra<F>, slot: SlotConvention) -> Result<DiracManinTriple<F>> {
    if let Some(i) = h_alg.invariance_failure() {
        return Err(Error::Invalid(format!("metric is not ad-invariant under basis vector {i}")));
    }
    let m = h_alg.dim();
    let d = h_alg.direct_sum(&h_alg.opposite());
    let beta = d.metric.inverse()?;
    let diag: Vec<Vec<F>> = (0..m)
        .map(|i| (0..2 * m).map(|j| if j % m == i { F::one() } else { F::zero() }).collect())
        .collect();
    let g = Subspace::span(2 * m, &diag)?;
    let idx: Vec<usize> = match slot {
        SlotConvention::First => (0..m).collect(),
        SlotConvention::Second => (m..2 * m).collect(),
    };
    let h = Subspace::coordinate(2 * m, &idx);
    DiracManinTriple::new(d.algebra, beta, g, h, Vec::new())
}

/// Representation of `h ⊕ h̄` from one of `h`.
pub fn cartan_dirac_rep<F: Scalar>(rep: &MatrixRep<F>) -> MatrixRep<F> {
    rep.direct_sum(rep)
}

/// Embeds `x` of `H` into the group of `h ⊕ h̄` acting on the chosen slot.
pub fn cartan_dirac_group_matrix<F: Scalar>(x: &Mat<F>, slot: SlotConvention) -> Mat<F> {
    let id = Mat::identity(x.rows());
    match slot {
        SlotConvention::First => x.block_diag(&id),
        SlotConvention::Second => id.block_diag(x),
    }
}

/// A triple of a matrix algebra with group samples attached.
#[derive(Clone, Debug)]
pub struct CartanDiracFixture<F> {
    pub triple: DiracManinTriple<F>,
    pub rep: MatrixRep<F>,
    pub elements: Vec<GroupElement<F>>,
}

pub fn sl2_cartan_dirac<F: Scalar>(slot: SlotConvention) -> Result<CartanDiracFixture<F>> {
    let mut triple = build_cartan_dirac(&sl2_metrized(), slot)?;
    let rep = cartan_dirac_rep(&sl2_rep());
    let elements = sl2_group_matrices()
        .iter()
        .map(|x| GroupElement::for_triple(&triple, &rep, cartan_dirac_group_matrix(x, slot)))
        .collect::<Result<Vec<_>>>()?;
    triple.samples = elements.iter().map(|e| e.ad().clone()).collect();
    Ok(CartanDiracFixture {
        triple,
        rep,
        elements,
    })
}

/// Abelian `Q^n` with the given `beta`, `g` spanned by the listed
/// coordinates and `h` by the rest. Fails when `g` is not coisotropic.
pub fn build_abelian_double<F: Scalar>(beta: Mat<F>, g_coords: &[usize]) -> Result<DiracManinTriple<F>> {
    let n = beta.rows();
    let beta = SymBivector::new(beta)?;
    let g = Subspace::coordinate(n, g_coords);
    let rest: Vec<usize> = (0..n).filter(|i| !g_coords.contains(i)).collect();
    let h = Subspace::coordinate(n, &rest);
    if let Some(mu) = crate::linalg::coisotropy_witness(&g, &beta)? {
        return Err(Error::NotCoisotropic(format!(
            "annihilator vector {}",
            crate::linalg::fmt_vec(&mu)
        )));
    }
    DiracManinTriple::new(LieAlgebra::abelian(n), beta, g, h, vec![Mat::identity(n)])
}

/// `(d, g ⊕ h', h)_beta` from a decomposition `d = h ⊕ g ⊕ h'`.
pub fn build_quasi_poisson<F: Scalar>(
    d: LieAlgebra<F>,
    beta: SymBivector<F>,
    h: Subspace<F>,
    g: Subspace<F>,
    h_prime: Subspace<F>,
) -> Result<DiracManinTriple<F>> {
    let middle = g.sum(&h_prime)?;
    if g.dim() + h_prime.dim() != middle.dim() || !h.is_complement(&middle) {
        return Err(Error::NotComplement("h ⊕ g ⊕ h' must be a direct sum decomposition".into()));
    }
    DiracManinTriple::new(d, beta, middle, h, Vec::new())
}

/// `(sl2, span{H, f}, span{e})` with `beta` the inverse trace form.
pub fn sl2_quasi_poisson<F: Scalar>() -> Result<DiracManinTriple<F>> {
    let beta = sl2_rep::<F>().trace_form().inverse()?;
    build_quasi_poisson(
        sl2(),
        beta,
        Subspace::coordinate(3, &[0]),
        Subspace::coordinate(3, &[2]),
        Subspace::coordinate(3, &[1]),
    )
}

/// The quasi-Poisson triple with upper triangular samples, which are the
/// elements of `SL(2)` normalizing `span{e}`.
pub fn sl2_quasi_poisson_fixture<F: Scalar>() -> Result<CartanDiracFixture<F>> {
    let mut triple = sl2_quasi_poisson()?;
    let rep = sl2_rep();
    let elements = [
        Mat::diag(&[F::two(), F::half()]),
        Mat::from_i64(&[&[1, 1], &[0, 1]]),
        Mat::from_i64(&[&[1, -2], &[0, 1]]),
    ]
    .into_iter()
    .map(|m| GroupElement::for_triple(&triple, &rep, m))
    .collect::<Result<Vec<_>>>()?;
    triple.samples = elements.iter().map(|e| e.ad().clone()).collect();
    Ok(CartanDiracFixture {
        triple,
        rep,
        elements,
    })
}

/// Abelian `Q^2`, `beta = [[0,1],[1,0]]`, `g = span e1`, `h = span e2`.
pub fn e1<F: Scalar>() -> DiracManinTriple<F> {
    build_abelian_double(Mat::from_i64(&[&[0, 1], &[1, 0]]), &[0]).expect("E1 is coisotropic")
}

/// Cartan-Dirac triple of the 1-dimensional algebra with `<1, 1> = 1`.
pub fn e2<F: Scalar>() -> DiracManinTriple<F> {
    let h = MetrizedLieAlgebra::new(LieAlgebra::abelian(1), SymBilinearForm::new(Mat::identity(1)).expect("symmetric"))
        .expect("nondegenerate");
    let mut t = build_cartan_dirac(&h, SlotConvention::First).expect("Cartan-Dirac triple");
    t.samples = vec![Mat::identity(2)];
    t
}

/// Non-exact: abelian `Q^2`, `beta = diag(1, 0)`, `g = span e1`, `h = span e2`.
pub fn e3<F: Scalar>() -> DiracManinTriple<F> {
    build_abelian_double(Mat::from_i64(&[&[1, 0], &[0, 0]]), &[0]).expect("E3 is coisotropic")
}

/// Invalid: abelian `Q^2`, `beta = I`, `g = span e1` is not coisotropic.
pub fn e4<F: Scalar>() -> DiracManinTriple<F> {
    DiracManinTriple::new(
        LieAlgebra::abelian(2),
        SymBivector::new(Mat::identity(2)).expect("symmetric"),
        Subspace::coordinate(2, &[0]),
        Subspace::coordinate(2, &[1]),
        Vec::new(),
    )
    .expect("dimensions agree")
}

