use dirac_core::catalog::{self, SlotConvention};
use dirac_core::linalg::{is_coisotropic, vec_from_i64, Mat, Subspace, SymBilinearForm, SymBivector};
use dirac_core::manin::{build_beta, build_double, build_q_pair, check_ad_invariant_bivector, check_q_pair, reduce_coisotropic, DiracManinTriple};
use dirac_core::lie::{LieAlgebra, MetrizedLieAlgebra};
use dirac_core::{Error, Scalar, Q};

fn fixtures() -> Vec<(&'static str, DiracManinTriple<Q>)> {
    vec![
        ("E1", catalog::e1()),
        ("E2", catalog::e2()),
        ("sl2-cd", catalog::sl2_cartan_dirac(SlotConvention::First).unwrap().triple),
        ("sl2-qp", catalog::sl2_quasi_poisson().unwrap()),
    ]
}

#[test]
fn fixtures_validate() {
    for (name, t) in fixtures() {
        let r = t.validate();
        assert!(r.checks.all_pass(), "{name}: {:?}", r.checks.failures().collect::<Vec<_>>());
    }
    assert!(catalog::e1::<Q>().validate().exact);
    assert!(catalog::e2::<Q>().validate().exact);
    assert!(!catalog::e3::<Q>().validate().exact);
    assert!(!catalog::sl2_quasi_poisson::<Q>().unwrap().validate().exact);
}

#[test]
fn e4_fails_coisotropy_with_annihilator_witness() {
    let r = catalog::e4::<Q>().validate();
    let c = r.checks.get("g.coisotropic").unwrap();
    assert!(!c.pass);
    assert_eq!(c.witness.as_deref(), Some("annihilator vector (0, 1)"));
}

#[test]
fn ad_invariance_of_sl2_inverse_trace_form() {
    let beta = catalog::sl2_rep::<Q>().trace_form().inverse().unwrap();
    assert!(check_ad_invariant_bivector(&catalog::sl2(), &beta));
    assert!(check_ad_invariant_bivector(&catalog::sl2::<Q>(), &SymBivector::zero(3)));
    assert!(!check_ad_invariant_bivector(&catalog::sl2::<Q>(), &SymBivector::new(Mat::identity(3)).unwrap()));
    assert!(check_ad_invariant_bivector(&LieAlgebra::<Q>::abelian(2), &SymBivector::new(Mat::identity(2)).unwrap()));
}

#[test]
fn double_identities() {
    for (name, t) in fixtures() {
        let d = build_double(&t.d, &t.beta).unwrap();
        assert!(d.dtilde.algebra.check_jacobi().is_ok(), "{name}");
        assert!(d.dtilde.invariance_failure().is_none(), "{name}");
        assert_eq!(d.beta_tilde.pushforward(&d.s_map).unwrap(), t.beta.neg(), "{name}");
        assert_eq!(d.beta_tilde.pushforward(&d.t_map).unwrap(), t.beta, "{name}");
        assert_eq!(d.beta_tilde.inverse().unwrap(), d.dtilde.metric, "{name}");
    }
}

#[test]
fn double_of_trivial_line() {
    let d = build_double(&LieAlgebra::<Q>::abelian(1), &SymBivector::zero(1)).unwrap();
    assert!(d.dtilde.algebra.is_abelian());
    assert_eq!(d.dtilde.metric.gram(), &Mat::from_i64(&[&[0, 1], &[1, 0]]));
    let e1 = catalog::e1::<Q>();
    let d = build_double(&e1.d, &e1.beta).unwrap();
    let b = e1.beta.gram();
    assert_eq!(d.beta_tilde.gram(), &Mat::block(&-b, &Mat::identity(2), &Mat::identity(2), &Mat::zeros(2, 2)).unwrap());
}

#[test]
fn q_pair_identities() {
    for (name, t) in fixtures() {
        let qp = build_q_pair(&t).unwrap();
        let r = check_q_pair(&qp, &t);
        assert!(r.all_pass(), "{name}: {:?}", r.failures().collect::<Vec<_>>());
    }
}

#[test]
fn q_pair_dimensions() {
    let qp = build_q_pair(&catalog::e1::<Q>()).unwrap();
    assert_eq!(qp.q().dim(), 2);
    assert!(qp.fq().is_bijective());
    let qp = build_q_pair(&catalog::e2::<Q>()).unwrap();
    assert!(qp.fq().is_bijective());
    assert!(qp.gamma_q().unwrap().gram().determinant().unwrap() < Q::from_i64(0));
    let qp = build_q_pair(&catalog::e3::<Q>()).unwrap();
    assert_eq!(qp.q().dim(), 2);
    assert!(!qp.fq().is_bijective());
    let zero = DiracManinTriple::<Q>::new(LieAlgebra::abelian(2), SymBivector::zero(2), Subspace::zero(2), Subspace::full(2), vec![]).unwrap();
    assert_eq!(build_q_pair(&zero).unwrap().q().dim(), 0);
}

#[test]
fn reduction_examples() {
    let hyp = MetrizedLieAlgebra::new(LieAlgebra::<Q>::abelian(2), SymBilinearForm::new(Mat::from_i64(&[&[0, 1], &[1, 0]])).unwrap()).unwrap();
    let r = reduce_coisotropic(&hyp, &Subspace::full(2)).unwrap();
    assert_eq!(r.quotient.metric, hyp.metric);
    let r = reduce_coisotropic(&hyp, &Subspace::coordinate(2, &[0])).unwrap();
    assert_eq!(r.quotient.dim(), 0);
    let e1 = catalog::e1::<Q>();
    let d = build_double(&e1.d, &e1.beta).unwrap();
    let c = Subspace::preimage(&d.s_map, &e1.g).unwrap();
    assert_eq!(c.dim(), 3);
    assert_eq!(reduce_coisotropic(&d.dtilde, &c).unwrap().quotient.dim(), 2);
    let iso = MetrizedLieAlgebra::new(LieAlgebra::<Q>::abelian(2), SymBilinearForm::new(Mat::identity(2)).unwrap()).unwrap();
    assert!(matches!(reduce_coisotropic(&iso, &Subspace::coordinate(2, &[0])), Err(Error::NotCoisotropic(_))));
}

#[test]
fn reduction_checks_ideal_condition() {
    // Non-invariant metric on sl2: span{e, H} is a subalgebra with
    // orthogonal span{H}, which is not an ideal since [e, H] = -2e.
    let g = SymBilinearForm::new(Mat::from_i64(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]])).unwrap();
    let m = MetrizedLieAlgebra::new_unchecked(catalog::sl2::<Q>(), g).unwrap();
    let c = Subspace::coordinate(3, &[0, 2]);
    assert!(matches!(reduce_coisotropic(&m, &c), Err(Error::NotIdeal(_))));
    let d = build_double(&catalog::sl2(), &catalog::sl2_rep::<Q>().trace_form().inverse().unwrap()).unwrap();
    let bad = Subspace::preimage(&d.s_map, &Subspace::coordinate(3, &[0, 1])).unwrap();
    assert!(matches!(reduce_coisotropic(&d.dtilde, &bad), Err(Error::NotSubalgebra(..))));
}

#[test]
fn beta_round_trip() {
    for (name, t) in fixtures() {
        let (gamma, phi) = t.extract_gamma_phi().unwrap();
        assert_eq!(build_beta(&gamma, &phi, &t.g, &t.h).unwrap(), t.beta, "{name}");
        assert!(is_coisotropic(&t.g, &t.beta).unwrap());
    }
    let (gamma, phi) = catalog::e1::<Q>().extract_gamma_phi().unwrap();
    assert_eq!(gamma.gram(), &Mat::from_i64(&[&[0]]));
    assert_eq!(phi, Mat::from_i64(&[&[1]]));
    let g = Subspace::coordinate(2, &[0]);
    let h = Subspace::coordinate(2, &[1]);
    assert!(build_beta(&SymBivector::<Q>::zero(1), &Mat::zeros(1, 1), &g, &h).unwrap().is_zero());
}

#[test]
fn beta_nondegenerate_from_nondegenerate_blocks() {
    let g = Subspace::<Q>::span_i64(4, &[&[1, 0, 1, 0], &[0, 1, 0, 2]]).unwrap();
    let h = Subspace::<Q>::span_i64(4, &[&[0, 0, 1, 0], &[1, 0, 0, 1]]).unwrap();
    let gamma = SymBivector::new(Mat::from_i64(&[&[2, 1], &[1, -3]])).unwrap();
    let phi = Mat::from_i64(&[&[1, 2], &[0, 5]]);
    let b = build_beta(&gamma, &phi, &g, &h).unwrap();
    assert!(b.is_nondegenerate());
    assert!(is_coisotropic(&g, &b).unwrap());
    let pr_g = g.projector_along(&h).unwrap();
    let coords = Mat::from_fn(2, 4, |i, j| if g.pivots()[i] == j { Q::from_i64(1) } else { Q::from_i64(0) });
    assert_eq!(b.pushforward(&(&coords * &pr_g)).unwrap(), gamma);
}

#[test]
fn equivariance_samples() {
    let mut t = catalog::e2::<Q>();
    assert!(t.check_equivariance().all_pass());
    t.samples = vec![];
    assert!(t.check_equivariance().all_pass());
    t.samples = vec![Mat::from_i64(&[&[0, 1], &[1, 0]])];
    let r = t.check_equivariance();
    assert!(!r.get("sample[0].preserves_h").unwrap().pass);
    let x = vec_from_i64::<Q>(&[1, 0]);
    assert!(t.h.contains(&x));
}
