use anyhow::{anyhow, bail, Result};
use dirac_core::dressing::{Dressing, GroupElement, Semidirect};
use dirac_core::format::{parse_spec, write_spec, SpecFile, TripleSpec};
use dirac_core::groupoid::{dual_module, dualize, from_manin_pair, gamma_g, module_pairing_failure, pairing_failure};
use dirac_core::homsp::{
    check_exact_case, check_robinson, check_transitive, comparison_map, reduce_fibers, robinson_build,
    search_coisotropic, validate_classification, ClassificationData, NormalForm, RobinsonDatum, SearchConstraints,
};
use dirac_core::linalg::{is_coisotropic, Mat, Subspace};
use dirac_core::manin::{build_double, build_q_pair, check_q_pair, reduce_coisotropic, DiracManinTriple};
use dirac_core::report::CheckReport;
use dirac_core::{Error, Scalar, Q};

use crate::report::Report;
use crate::{read_input, Command};

/// Runs one subcommand, filling in the report. Returns the spec text to
/// write with `-o`, if the command produces one. Errors are input problems;
/// algebraic failures end up as failed checks.
pub fn execute(cmd: &Command, r: &mut Report) -> Result<Option<String>> {
    match cmd {
        Command::Validate { file, triple } => validate(file, triple.as_deref(), r),
        Command::Double { triple } => double(&load_triple(triple, r)?, r),
        Command::Qpair { triple } => qpair(&load_triple(triple, r)?, r),
        Command::Reduce { triple, datum } => {
            let t = load_triple(triple, r)?;
            reduce(&t, &load_robinson(datum, r)?, r)
        }
        Command::Dualize { file } => dual(file, r),
        Command::Classify { triple, file } => {
            let t = load_triple(triple, r)?;
            classify(&t, file, r)
        }
        Command::Robinson { triple, datum } => {
            let t = load_triple(triple, r)?;
            robinson(&t, &load_robinson(datum, r)?, r)
        }
        Command::Search {
            triple,
            candidates,
            dim,
            lagrangian,
            k,
        } => {
            let t = load_triple(triple, r)?;
            search(&t.triple, candidates, *dim, *lagrangian, k, r)
        }
        Command::Dress { triple } => dress(&load_triple(triple, r)?, r),
        Command::Exactness { triple } => exactness(&load_triple(triple, r)?, r),
    }
}

/// Parse errors are input errors, except structural failures of groupoid
/// and module data, which are reported as a failed check.
fn load(path: &str, r: &mut Report) -> Result<Option<SpecFile<Q>>> {
    let text = read_input(path, r)?;
    match parse_spec(&text) {
        Ok(s) => Ok(Some(s)),
        Err(e @ (Error::InvalidGroupoid(_) | Error::InvalidModule(_))) => {
            r.checks.fail("structure", e.to_string());
            Ok(None)
        }
        Err(e) => Err(anyhow!("{path}: {e}")),
    }
}

fn load_triple(path: &str, r: &mut Report) -> Result<TripleSpec<Q>> {
    match load(path, r)? {
        Some(SpecFile::Triple(t)) => Ok(t),
        Some(other) => bail!("{path}: expected a triple file, found kind {:?}", other.kind()),
        None => bail!("{path}: expected a triple file"),
    }
}

fn load_robinson(path: &str, r: &mut Report) -> Result<RobinsonDatum<Q>> {
    match load(path, r)? {
        Some(SpecFile::Robinson(d)) => Ok(d),
        Some(other) => bail!("{path}: expected a robinson file, found kind {:?}", other.kind()),
        None => bail!("{path}: expected a robinson file"),
    }
}

fn rows(s: &Subspace<Q>) -> Vec<Vec<String>> {
    mat_rows(s.basis())
}

fn mat_rows(m: &Mat<Q>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

fn parse_vec(s: &str, n: usize) -> Result<Vec<Q>> {
    let v = s
        .split(',')
        .map(|x| Q::parse_exact(x).ok_or_else(|| anyhow!("malformed rational {x:?} in {s:?}")))
        .collect::<Result<Vec<_>>>()?;
    if v.len() != n {
        bail!("vector {s:?} has {} entries, expected {n}", v.len());
    }
    Ok(v)
}

/// Group elements for the dressing checks: the identity, then the file's
/// matrices if it carries a group, else its samples as abstract elements.
fn group_elements(ts: &TripleSpec<Q>, r: &mut Report) -> Vec<GroupElement<Q>> {
    let t = &ts.triple;
    match &ts.group {
        Some(g) => {
            let mut v = vec![GroupElement::identity(t.dim(), g.rep.rep_dim())];
            for (i, m) in g.elements.iter().enumerate() {
                match GroupElement::for_triple(t, &g.rep, m.clone()) {
                    Ok(e) => {
                        r.checks.pass(format!("group[{i}].valid"));
                        v.push(e);
                    }
                    Err(e) => r.checks.fail(format!("group[{i}].valid"), e.to_string()),
                }
            }
            v
        }
        None => {
            let mut v = vec![GroupElement::identity(t.dim(), 0)];
            for (i, a) in t.samples.iter().enumerate() {
                match GroupElement::from_ad(a.clone()).and_then(|e| e.check_triple(t).map(|_| e)) {
                    Ok(e) if *a != Mat::identity(t.dim()) => v.push(e),
                    Ok(_) => {}
                    Err(e) => r.checks.fail(format!("sample[{i}].valid"), e.to_string()),
                }
            }
            v
        }
    }
}

/// Runs a fallible construction; an error becomes a failed check.
fn build<T>(r: &mut Report, name: &str, res: dirac_core::Result<T>) -> Option<T> {
    match res {
        Ok(v) => {
            r.checks.pass(name);
            Some(v)
        }
        Err(e) => {
            r.checks.fail(name, e.to_string());
            None
        }
    }
}

fn validate(file: &str, triple: Option<&str>, r: &mut Report) -> Result<Option<String>> {
    let Some(spec) = load(file, r)? else { return Ok(None) };
    let needs_triple = |r: &mut Report| -> Result<TripleSpec<Q>> {
        let path = triple.ok_or_else(|| anyhow!("{file}: this kind needs --triple"))?;
        load_triple(path, r)
    };
    r.set("kind", spec.kind());
    match &spec {
        SpecFile::Triple(ts) => {
            let t = &ts.triple;
            let tr = t.validate();
            r.checks.absorb("", tr.checks);
            r.set("exact", tr.exact);
            r.set("dim", t.dim());
            r.set("dim_g", t.g.dim());
            if let Some(g) = &ts.group {
                let rep = g.rep.check();
                r.checks.record("rep.homomorphism", rep.failing_pair.map(|(i, j)| format!("basis pair ({i}, {j})")));
                r.checks.expect("rep.faithful", rep.faithful, || "images are linearly dependent".into());
                group_elements(ts, r);
            }
        }
        SpecFile::Groupoid(g) => {
            r.checks.absorb("", g.check_laws());
            r.set("dim", g.dim());
            r.set("core_dim", g.core_dim());
            r.set("vacant", g.is_vacant());
        }
        SpecFile::Module(m) => {
            r.checks.absorb("", m.check_laws());
            r.set("p_dim", m.p_dim());
        }
        SpecFile::Classification(data) => {
            let ts = needs_triple(r)?;
            r.checks.absorb("", validate_classification(data, &ts.triple));
            r.set("dim_n", data.dim());
            r.set("transitive", check_transitive(data, &ts.triple));
        }
        SpecFile::Robinson(d) => {
            let ts = needs_triple(r)?;
            build(r, "robinson.datum", check_robinson(d, &ts.triple));
        }
        SpecFile::Rep(rep) => {
            let c = rep.check();
            r.checks.record("rep.homomorphism", c.failing_pair.map(|(i, j)| format!("basis pair ({i}, {j})")));
            r.checks.expect("rep.faithful", c.faithful, || "images are linearly dependent".into());
        }
    }
    Ok(None)
}

fn double(ts: &TripleSpec<Q>, r: &mut Report) -> Result<Option<String>> {
    let t = &ts.triple;
    let Some(d) = build(r, "double.build", build_double(&t.d, &t.beta)) else { return Ok(None) };
    let alg = &d.dtilde.algebra;
    r.checks.record("double.jacobi", alg.jacobi_failure().map(|(i, j, k)| format!("basis triple ({i}, {j}, {k})")));
    r.checks.record("double.metric_invariant", d.dtilde.invariance_failure().map(|i| format!("basis vector {i}")));
    let push = |m: &Mat<Q>| d.beta_tilde.pushforward(m);
    r.checks.record(
        "double.source_beta",
        match push(&d.s_map) {
            Ok(b) if b == t.beta.neg() => None,
            Ok(b) => Some(format!("s(beta~) = {}", b.gram())),
            Err(e) => Some(e.to_string()),
        },
    );
    r.checks.record(
        "double.target_beta",
        match push(&d.t_map) {
            Ok(b) if b == t.beta => None,
            Ok(b) => Some(format!("t(beta~) = {}", b.gram())),
            Err(e) => Some(e.to_string()),
        },
    );
    r.set("dim", d.dtilde.dim());
    Ok(None)
}

fn qpair(ts: &TripleSpec<Q>, r: &mut Report) -> Result<Option<String>> {
    let t = &ts.triple;
    let Some(qp) = build(r, "qpair.build", build_q_pair(t)) else { return Ok(None) };
    r.checks.absorb("", check_q_pair(&qp, t));
    r.set("dim_q", qp.q().dim());
    r.set("dim_g", t.g.dim());
    let Some(rc) = build(r, "qpair.natural_complement", qp.natural_complement(&t.h)) else { return Ok(None) };
    let Some(mg) = build(r, "groupoid.build", from_manin_pair(&qp.pair, &rc)) else { return Ok(None) };
    r.checks.absorb("groupoid.", mg.check());
    if let Some(gg) = build(r, "groupoid.gamma_g", gamma_g(&mg)) {
        r.set("gamma_g", mat_rows(gg.gram()));
    }
    r.set("f_q_bijective", qp.fq().is_bijective());
    Ok(Some(write_spec(&SpecFile::Groupoid(mg.groupoid))))
}

fn reduce(ts: &TripleSpec<Q>, d: &RobinsonDatum<Q>, r: &mut Report) -> Result<Option<String>> {
    let t = &ts.triple;
    if d.c.ambient() != t.dim() {
        bail!("datum lives in dimension {}, the triple in {}", d.c.ambient(), t.dim());
    }
    let Some(double) = build(r, "double.build", build_double(&t.d, &t.beta)) else { return Ok(None) };
    let big_c = Subspace::preimage(&double.s_map, &d.c)?;
    let Some(red) = build(r, "reduce.build", reduce_coisotropic(&double.dtilde, &big_c)) else { return Ok(None) };
    let q = &red.quotient;
    r.checks.record("reduce.jacobi", q.algebra.jacobi_failure().map(|(i, j, k)| format!("basis triple ({i}, {j}, {k})")));
    r.checks.record("reduce.metric_invariant", q.invariance_failure().map(|i| format!("basis vector {i}")));
    r.checks.expect("reduce.dim_is_twice_c", q.dim() == 2 * d.c.dim(), || {
        format!("dim = {}, dim c = {}", q.dim(), d.c.dim())
    });
    r.set("dim", q.dim());
    Ok(None)
}

fn dual(file: &str, r: &mut Report) -> Result<Option<String>> {
    let Some(spec) = load(file, r)? else { return Ok(None) };
    let g = match &spec {
        SpecFile::Groupoid(g) => g.clone(),
        SpecFile::Module(m) => m.over().clone(),
        other => bail!("{file}: cannot dualize kind {:?}", other.kind()),
    };
    let Some(dg) = build(r, "dual.build", dualize(&g)) else { return Ok(None) };
    r.checks.absorb("dual.", dg.groupoid.check_laws());
    r.checks.record("dual.pairing", pairing_failure(&g, &dg.groupoid));
    r.checks.record(
        "dual.double_dual",
        match dualize(&dg.groupoid) {
            Ok(dd) if dd.groupoid.s() == g.s() && dd.groupoid.t() == g.t() => None,
            Ok(dd) => Some(format!("s** = {}, t** = {}", dd.groupoid.s(), dd.groupoid.t())),
            Err(e) => Some(e.to_string()),
        },
    );
    r.checks.expect("dual.vacant_iff_group", g.is_vacant() == dg.groupoid.is_group(), || {
        format!("vacant = {}, dual is a group = {}", g.is_vacant(), dg.groupoid.is_group())
    });
    r.set("vacant", g.is_vacant());
    r.set("dual_units_dim", dg.groupoid.units().dim());
    match spec {
        SpecFile::Module(m) => {
            let Some(dm) = build(r, "dual_module.build", dual_module(&m, &dg)) else { return Ok(None) };
            r.checks.absorb("dual_module.", dm.check_laws());
            r.checks.record("dual_module.pairing", module_pairing_failure(&m, &dm));
            Ok(Some(write_spec(&SpecFile::Module(dm))))
        }
        _ => Ok(Some(write_spec(&SpecFile::Groupoid(dg.groupoid)))),
    }
}

/// Checks shared by `classify` and `robinson` once data is in hand.
fn classification_checks(data: &ClassificationData<Q>, t: &DiracManinTriple<Q>, r: &mut Report) {
    r.checks.absorb("", validate_classification(data, t));
    let transitive = check_transitive(data, t);
    r.set("dim_n", data.dim());
    r.set("dim_u", data.u.dim());
    r.set("transitive", transitive);
    r.set("c", rows(&data.image_of_u().unwrap_or_else(|_| Subspace::zero(t.dim()))));
    if let Ok(fib) = reduce_fibers(data) {
        r.set("dim_p", fib.dim());
        r.checks.expect("fibers.l_lagrangian", fib.l_is_lagrangian(), || format!("l = {}", fib.l));
    }
    if transitive {
        match comparison_map(data, t) {
            Ok(cmp) => r.checks.absorb("", cmp.checks),
            Err(e) => r.checks.fail("comparison.build", e.to_string()),
        }
    }
    if t.is_exact() {
        match check_exact_case(data, t) {
            Ok(Some(c)) => r.set("exact_case_c", rows(&c)),
            Ok(None) => r.set("exact_case_c", serde_json::Value::Null),
            Err(e) => r.checks.fail("exact_case", e.to_string()),
        }
    }
}

fn classify(ts: &TripleSpec<Q>, file: &str, r: &mut Report) -> Result<Option<String>> {
    let data = match load(file, r)? {
        Some(SpecFile::Classification(d)) => d,
        Some(SpecFile::Robinson(d)) => match build(r, "robinson.build", robinson_build(&d, &ts.triple)) {
            Some(d) => d,
            None => return Ok(None),
        },
        Some(other) => bail!("{file}: expected classification or robinson data, found kind {:?}", other.kind()),
        None => return Ok(None),
    };
    classification_checks(&data, &ts.triple, r);
    Ok(Some(write_spec(&SpecFile::Classification(data))))
}

fn robinson(ts: &TripleSpec<Q>, d: &RobinsonDatum<Q>, r: &mut Report) -> Result<Option<String>> {
    let t = &ts.triple;
    let Some(data) = build(r, "robinson.build", robinson_build(d, t)) else { return Ok(None) };
    classification_checks(&data, t, r);
    r.checks.expect("robinson.transitive", check_transitive(&data, t), || "f_n(u) ∩ h != f_n(k)".into());
    if t.is_exact() {
        r.checks.expect(
            "robinson.recovers_c",
            matches!(check_exact_case(&data, t), Ok(Some(ref c)) if *c == d.c),
            || "f_n(u) differs from c".into(),
        );
    }
    let hs = group_elements(ts, r);
    if let Some(nf) = build(r, "nf.build", NormalForm::new(&data, t)) {
        r.checks.absorb("", nf.check_laws(&hs));
    }
    Ok(Some(write_spec(&SpecFile::Classification(data))))
}

fn search(
    t: &DiracManinTriple<Q>,
    candidates: &[String],
    dim: Option<usize>,
    lagrangian: bool,
    k: &[String],
    r: &mut Report,
) -> Result<Option<String>> {
    let n = t.dim();
    let cands = candidates.iter().map(|c| parse_vec(c, n)).collect::<Result<Vec<_>>>()?;
    let kv = k.iter().map(|c| parse_vec(c, n)).collect::<Result<Vec<_>>>()?;
    let mut cons = SearchConstraints::new(Subspace::span(n, &kv)?);
    cons.dim = dim;
    cons.lagrangian = lagrangian;
    let found = search_coisotropic(t, &cands, &cons)?;
    for (i, c) in found.iter().enumerate() {
        r.checks.expect(format!("result[{i}].coisotropic"), is_coisotropic(c, &t.beta).unwrap_or(false), || {
            format!("{c}")
        });
        r.checks.record(
            format!("result[{i}].subalgebra"),
            t.d.subalgebra_failure(c).map(|(a, b)| format!("basis pair ({a}, {b})")),
        );
    }
    r.set("candidates", cands.len());
    r.set("found", found.iter().map(rows).collect::<Vec<_>>());
    Ok(None)
}

fn dress(ts: &TripleSpec<Q>, r: &mut Report) -> Result<Option<String>> {
    let t = &ts.triple;
    let hs = group_elements(ts, r);
    let Some(dr) = build(r, "dressing.build", Dressing::new(t)) else { return Ok(None) };
    let mut mult = None;
    for (i, a) in hs.iter().enumerate() {
        for (j, b) in hs.iter().enumerate() {
            if a.mul(b).ad() != &(a.ad() * b.ad()) && mult.is_none() {
                mult = Some(format!("elements ({i}, {j})"));
            }
        }
    }
    r.checks.record("adjoint.multiplicative", mult);
    let mut brackets = None;
    for (i, h) in hs.iter().enumerate() {
        let f = dirac_core::lie::LieMorphism {
            source: t.d.clone(),
            target: t.d.clone(),
            matrix: h.ad().clone(),
        };
        if let Some((a, b)) = f.failure() {
            brackets.get_or_insert_with(|| format!("element {i}, basis pair ({a}, {b})"));
        }
    }
    r.checks.record("adjoint.brackets", brackets);
    let mut fixes = None;
    let mut stab = CheckReport::new();
    let mut matches = Vec::new();
    for (i, h) in hs.iter().enumerate() {
        for v in t.h.basis_vectors() {
            if dr.dressing_field(h, &v) != v {
                fixes.get_or_insert_with(|| format!("element {i}"));
            }
        }
        match dr.stabilizer_kernel(h) {
            Ok((k, m)) => {
                stab.expect(format!("stabilizer[{i}].coisotropic"), is_coisotropic(&k, &t.beta).unwrap_or(false), || {
                    format!("{k}")
                });
                matches.push(m);
            }
            Err(e) => stab.fail(format!("stabilizer[{i}].coisotropic"), e.to_string()),
        }
    }
    r.checks.record("dressing.fixes_h", fixes);
    r.checks.absorb("", stab);
    r.set("stabilizer_is_ad_h_g", matches);
    r.set("elements", hs.len());
    if let Some(sd) = build(r, "semidirect.build", Semidirect::new(dr)) {
        r.checks.absorb("", sd.check_laws(&hs));
    }
    Ok(None)
}

fn exactness(ts: &TripleSpec<Q>, r: &mut Report) -> Result<Option<String>> {
    let t = &ts.triple;
    let exact = t.is_exact();
    r.set("exact", exact);
    let Some(qp) = build(r, "qpair.build", build_q_pair(t)) else { return Ok(None) };
    let bij = qp.fq().is_bijective();
    r.set("f_q_bijective", bij);
    r.checks.expect("exactness.f_q_bijective_iff_exact", bij == exact, || {
        format!("exact = {exact}, f_q bijective = {bij}")
    });
    Ok(None)
}
