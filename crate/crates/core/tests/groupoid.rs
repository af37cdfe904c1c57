use dirac_core::catalog::{self, SlotConvention};
use dirac_core::groupoid::{
    dual_module, dualize, from_manin_pair, gamma_g, module_pairing_failure, moment_to_action, pairing_failure,
    LinearGroupoid, LinearModule,
};
use dirac_core::linalg::{vec_from_i64, Mat, Subspace, SymBilinearForm};
use dirac_core::manin::{build_q_pair, DiracManinTriple, ManinPair};
use dirac_core::lie::{LieAlgebra, MetrizedLieAlgebra};
use dirac_core::{Error, Scalar, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64) -> Q {
    Q::from_i64(n)
}

fn random_mat(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Mat<Q> {
    Mat::from_fn(rows, cols, |_, _| q(rng.gen_range(-3..=3)))
}

/// Projection onto `units` along a random complement, retried until the
/// complement is one.
fn random_projection(rng: &mut ChaCha8Rng, units: &Subspace<Q>) -> Mat<Q> {
    let n = units.ambient();
    loop {
        let c = Subspace::column_space(&random_mat(rng, n, n - units.dim()));
        if c.is_complement(units) {
            return units.projector_along(&c).unwrap();
        }
    }
}

fn random_groupoid(rng: &mut ChaCha8Rng, n: usize, k: usize) -> LinearGroupoid<Q> {
    let units = loop {
        let u = Subspace::column_space(&random_mat(rng, n, k));
        if u.dim() == k {
            break u;
        }
    };
    let s = random_projection(rng, &units);
    let t = random_projection(rng, &units);
    LinearGroupoid::new(n, units, s, t).unwrap()
}

fn pair_like() -> LinearGroupoid<Q> {
    let p = Mat::from_i64(&[&[1, 0], &[0, 0]]);
    LinearGroupoid::new(2, Subspace::coordinate(2, &[0]), p.clone(), p).unwrap()
}

#[test]
fn pair_like_composition() {
    let g = pair_like();
    let e2 = vec_from_i64::<Q>(&[0, 1]);
    assert_eq!(g.compose(&e2, &e2).unwrap(), vec_from_i64(&[0, 2]));
    assert!(g.check_laws().all_pass());
    let x = vec_from_i64::<Q>(&[3, 5]);
    assert_eq!(g.compose(&x, &g.source(&x)).unwrap(), x);
    assert_eq!(g.compose(&g.target(&x), &x).unwrap(), x);
    assert!(matches!(g.compose(&x, &e2), Err(Error::NotComposable(_))));
}

#[test]
fn unit_groupoid() {
    let g = LinearGroupoid::new(3, Subspace::full(3), Mat::identity(3), Mat::identity(3)).unwrap();
    let x = vec_from_i64::<Q>(&[1, -2, 4]);
    assert_eq!(g.invert(&x), x);
    assert_eq!(g.compose(&x, &x).unwrap(), x);
    assert!(g.is_vacant());
    let d = dualize(&g).unwrap();
    assert!(d.groupoid.is_group());
    assert!(d.groupoid.is_vacant() || d.groupoid.core_dim() == 3);
    assert!(pairing_failure(&g, &d.groupoid).is_none());
}

#[test]
fn rejects_non_idempotent_maps() {
    let s = Mat::from_i64(&[&[2, 0], &[0, 0]]);
    let r = LinearGroupoid::<Q>::new(2, Subspace::coordinate(2, &[0]), s, Mat::from_i64(&[&[1, 0], &[0, 0]]));
    assert!(matches!(r, Err(Error::InvalidGroupoid(_))));
    let s = Mat::from_i64(&[&[0, 0], &[0, 1]]);
    let r = LinearGroupoid::<Q>::new(2, Subspace::coordinate(2, &[0]), s.clone(), s);
    assert!(matches!(r, Err(Error::InvalidGroupoid(_))));
}

/// Oracle for the pair-like dual: with s = t = pr_1, ker s = ker t = span e2,
/// the dual has units span{e2*}, s* = t* = projection to e2*, and
/// mu1 ∘ mu2 = mu1 + mu2 - s*(mu1).
#[test]
fn pair_like_dual_by_hand() {
    let g = pair_like();
    let d = dualize(&g).unwrap();
    assert_eq!(d.groupoid.units(), &Subspace::coordinate(2, &[1]));
    let p = Mat::from_i64(&[&[0, 0], &[0, 1]]);
    assert_eq!(d.groupoid.s(), &p);
    assert_eq!(d.groupoid.t(), &p);
    // Pairing e1* ∘ e1* against ((1,0),(1,0)) -> (1,0) gives 1 + 1 and
    // against ((0,1),(0,1)) -> (0,2) gives 0, so e1* ∘ e1* = 2 e1*.
    let e1 = vec_from_i64::<Q>(&[1, 0]);
    assert_eq!(d.groupoid.compose(&e1, &e1).unwrap(), vec_from_i64(&[2, 0]));
    let dd = dualize(&d.groupoid).unwrap();
    assert_eq!(dd.groupoid.s(), g.s());
    assert_eq!(dd.groupoid.t(), g.t());
}

#[test]
fn random_groupoids_dualize() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut vacant = 0;
    for i in 0..24 {
        let n = rng.gen_range(1..=6);
        let k = if i % 4 == 0 { n } else { rng.gen_range(0..=n) };
        let g = random_groupoid(&mut rng, n, k);
        assert!(g.check_laws().all_pass(), "laws {i}");
        let d = dualize(&g).unwrap();
        assert!(d.groupoid.check_laws().all_pass(), "dual laws {i}");
        assert!(pairing_failure(&g, &d.groupoid).is_none(), "pairing {i}");
        assert_eq!(g.is_vacant(), d.groupoid.is_group(), "vacancy {i}");
        assert_eq!(d.groupoid.core_dim(), g.units().dim());
        let dd = dualize(&d.groupoid).unwrap();
        assert_eq!(dd.groupoid.s(), g.s(), "double dual s {i}");
        assert_eq!(dd.groupoid.t(), g.t(), "double dual t {i}");
        vacant += g.is_vacant() as usize;
    }
    assert!(vacant >= 6);
}

/// The forced formula agrees with the graph of a groupoid: the composable
/// pairs with their products span a subspace of dimension dim V + dim ker s,
/// which is what a linear graph over the composable space must have.
#[test]
fn forced_composition_is_linear_graph() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..8 {
        let n = rng.gen_range(1..=5);
        let k = rng.gen_range(0..=n);
        let g = random_groupoid(&mut rng, n, k);
        let rows: Vec<Vec<Q>> = g
            .composable_basis()
            .into_iter()
            .map(|(x, y)| {
                let mut v = x.clone();
                v.extend(y.iter().cloned());
                v.extend(g.compose(&x, &y).unwrap());
                v
            })
            .collect();
        let graph = Subspace::span(3 * n, &rows).unwrap();
        assert_eq!(graph.dim(), 2 * n - k);
    }
}

#[test]
fn modules_and_duals() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..10 {
        let n = rng.gen_range(1..=5);
        let k = rng.gen_range(0..=n);
        let g = random_groupoid(&mut rng, n, k);
        // Left translation: u = t, A = inclusion.
        let left = LinearModule::new(g.clone(), n, g.t().clone(), Mat::identity(n)).unwrap();
        assert!(left.check_laws().all_pass(), "left {i}");
        let (x, y) = g.composable_basis().into_iter().next().unwrap_or((vec![q(0); n], vec![q(0); n]));
        assert_eq!(left.act(&x, &y).unwrap(), g.compose(&x, &y).unwrap());
        // Action on the units: x ∘ eta = t(x).
        let units = LinearModule::new(g.clone(), n, g.t().clone(), g.t().clone()).unwrap();
        assert!(units.check_laws().all_pass(), "units {i}");
        let d = dualize(&g).unwrap();
        for m in [&left, &units] {
            let dm = dual_module(m, &d).unwrap();
            assert!(dm.check_laws().all_pass(), "dual module {i}");
            assert!(module_pairing_failure(m, &dm).is_none(), "module pairing {i}");
            if g.is_vacant() {
                assert!(dm.over().is_group());
            }
        }
    }
}

#[test]
fn zero_module_dualizes_to_zero() {
    // u = 0 needs t = 0 on ker s, true for the pair-like groupoid.
    let g = pair_like();
    let m = LinearModule::new(g.clone(), 0, Mat::zeros(2, 0), Mat::zeros(0, 2)).unwrap();
    let dm = dual_module(&m, &dualize(&g).unwrap()).unwrap();
    assert_eq!(dm.p_dim(), 0);
    assert!(dm.check_laws().all_pass());
    let s = Mat::from_i64(&[&[1, 1], &[0, 0]]);
    let g = LinearGroupoid::<Q>::new(2, Subspace::coordinate(2, &[0]), s, Mat::from_i64(&[&[1, 0], &[0, 0]])).unwrap();
    let m = LinearModule::new(g, 0, Mat::zeros(2, 0), Mat::zeros(0, 2));
    assert!(matches!(m, Err(Error::InvalidModule(_))));
}

fn fixtures() -> Vec<(&'static str, DiracManinTriple<Q>)> {
    vec![
        ("E1", catalog::e1()),
        ("E2", catalog::e2()),
        ("sl2-cd", catalog::sl2_cartan_dirac(SlotConvention::First).unwrap().triple),
        ("sl2-qp", catalog::sl2_quasi_poisson().unwrap()),
    ]
}

#[test]
fn metrized_groupoids_from_fixtures() {
    for (name, t) in fixtures() {
        let qp = build_q_pair(&t).unwrap();
        let r = qp.natural_complement(&t.h).unwrap();
        let mg = from_manin_pair(&qp.pair, &r).unwrap();
        let rep = mg.check();
        assert!(rep.all_pass(), "{name}: {:?}", rep.failures().collect::<Vec<_>>());
        // gamma_g matches pr_g(beta) transported into q.
        let (gamma, _) = t.extract_gamma_phi().unwrap();
        let to_q = mg.g_coords().try_mul(&qp.g_embed).unwrap();
        assert_eq!(gamma_g(&mg).unwrap(), gamma.pushforward(&to_q).unwrap(), "{name}");
        // λ1 ∘ λ2 = λ2 + pr_{r⊥}(λ1).
        let n = qp.q().dim();
        let pr_rperp = &Mat::identity(n) - mg.groupoid.s();
        for (x, y) in mg.groupoid.composable_basis() {
            let lhs = mg.groupoid.compose(&x, &y).unwrap();
            let rhs: Vec<Q> = y.iter().zip(pr_rperp.mul_vec(&x)).map(|(a, b)| a + b).collect();
            assert_eq!(lhs, rhs, "{name}");
        }
        // q acting on itself with u = t recovers left translation.
        let mm = moment_to_action(&mg, &qp.q().metric, mg.groupoid.t()).unwrap();
        assert!(mm.check(&mg).all_pass(), "{name}");
        for (x, y) in mg.groupoid.composable_basis() {
            assert_eq!(mm.module.act(&x, &y).unwrap(), mg.groupoid.compose(&x, &y).unwrap(), "{name}");
        }
    }
}

#[test]
fn gamma_g_vanishes_when_h_coisotropic() {
    let t = catalog::e1::<Q>();
    let qp = build_q_pair(&t).unwrap();
    let mg = from_manin_pair(&qp.pair, &qp.natural_complement(&t.h).unwrap()).unwrap();
    assert!(gamma_g(&mg).unwrap().is_zero());
    let t = catalog::e2::<Q>();
    let qp = build_q_pair(&t).unwrap();
    let mg = from_manin_pair(&qp.pair, &qp.natural_complement(&t.h).unwrap()).unwrap();
    assert_eq!(gamma_g(&mg).unwrap().gram(), &Mat::from_i64(&[&[-1]]));
}

fn hyperbolic_pair(gram: &[&[i64]], g: &Subspace<Q>) -> ManinPair<Q> {
    let m = MetrizedLieAlgebra::new(LieAlgebra::abelian(2), SymBilinearForm::new(Mat::from_i64(gram)).unwrap()).unwrap();
    ManinPair { q: m, g: g.clone(), fq: None }
}

#[test]
fn hand_computed_metrized_groupoid() {
    let g = Subspace::coordinate(2, &[0]);
    let pair = hyperbolic_pair(&[&[0, 1], &[1, 0]], &g);
    let r = Subspace::coordinate(2, &[1]);
    let mg = from_manin_pair(&pair, &r).unwrap();
    let p = Mat::from_i64(&[&[1, 0], &[0, 0]]);
    assert_eq!(mg.groupoid.s(), &p);
    assert_eq!(mg.groupoid.t(), &p);
    assert!(gamma_g(&mg).unwrap().is_zero());
    assert!(matches!(from_manin_pair(&pair, &g), Err(Error::NotComplement(_))));
    // u = 0 with gamma_g = 0: trivial action.
    let pm = SymBilinearForm::new(Mat::identity(1)).unwrap();
    let mm = moment_to_action(&mg, &pm, &Mat::zeros(2, 1)).unwrap();
    assert!(mm.f_p.is_zero());
    let z = vec_from_i64::<Q>(&[4]);
    let lam = vec_from_i64::<Q>(&[0, 3]);
    assert_eq!(mm.module.act(&lam, &z).unwrap(), z);
}

#[test]
fn gamma_g_on_split_form() {
    // Diagonal form; g = span(1,1) is isotropic, r = span(1,0).
    let g = Subspace::span_i64(2, &[&[1, 1]]).unwrap();
    let pair = hyperbolic_pair(&[&[1, 0], &[0, -1]], &g);
    let mg = from_manin_pair(&pair, &Subspace::coordinate(2, &[0])).unwrap();
    let gq = mg.gamma_q().unwrap();
    let t_push = gq.pushforward(mg.groupoid.t()).unwrap();
    let s_push = gq.pushforward(mg.groupoid.s()).unwrap();
    assert_eq!(t_push, s_push.neg());
    // Oracle: r⊥ = span(0,1); t projects onto (1,1) along (1,0): (a,b) -> (b,b);
    // t γ tᵀ with γ = diag(1,-1) gives -1 on each entry; in g-coords that is [-1].
    assert_eq!(gamma_g(&mg).unwrap().gram(), &Mat::from_i64(&[&[-1]]));
    let scaled = SymBilinearForm::new(Mat::from_i64(&[&[2, 0], &[0, -2]])).unwrap();
    let pair2 = ManinPair { q: MetrizedLieAlgebra::new(LieAlgebra::abelian(2), scaled).unwrap(), g, fq: None };
    let mg2 = from_manin_pair(&pair2, &Subspace::coordinate(2, &[0])).unwrap();
    // Metric scaled by 2 scales gamma by 1/2.
    assert_eq!(gamma_g(&mg2).unwrap().gram(), &Mat::from_i64(&[&[-1]]).scale(&Q::new(1.into(), 2.into())));
}
