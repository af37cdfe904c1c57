#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use dirac_core::catalog::{self, CartanDiracFixture, SlotConvention};
use dirac_core::format::{write_spec, GroupSpec, SpecFile, TripleSpec};
use dirac_core::homsp::RobinsonDatum;
use dirac_core::linalg::{Mat, Subspace};
use dirac_core::Q;

pub fn cli_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn plain(t: dirac_core::manin::DiracManinTriple<Q>) -> SpecFile<Q> {
    SpecFile::Triple(TripleSpec { triple: t, group: None })
}

fn with_group(fx: CartanDiracFixture<Q>) -> SpecFile<Q> {
    SpecFile::Triple(TripleSpec {
        group: Some(GroupSpec {
            rep: fx.rep,
            elements: fx.elements.iter().map(|e| e.matrix().clone()).collect(),
        }),
        triple: fx.triple,
    })
}

fn datum(c: Subspace<Q>) -> SpecFile<Q> {
    let n = c.ambient();
    SpecFile::Robinson(RobinsonDatum {
        c,
        k: Subspace::zero(n),
        k_samples: vec![Mat::identity(n)],
    })
}

/// Every shipped fixture, by file name, built from the catalog.
pub fn fixtures() -> Vec<(&'static str, SpecFile<Q>)> {
    let cd = catalog::sl2_cartan_dirac::<Q>(SlotConvention::First).unwrap();
    let qp = catalog::sl2_quasi_poisson_fixture::<Q>().unwrap();
    let e2 = catalog::e2::<Q>();
    vec![
        ("E1.dmt.json", plain(catalog::e1())),
        ("E2.dmt.json", plain(e2.clone())),
        ("E3.dmt.json", plain(catalog::e3())),
        ("E4.dmt.json", plain(catalog::e4())),
        ("sl2-cd.dmt.json", with_group(cd.clone())),
        ("sl2-qp.dmt.json", with_group(qp.clone())),
        ("E1-g.rob.json", datum(catalog::e1::<Q>().g)),
        ("E2-plus.rob.json", datum(Subspace::span_i64(2, &[&[1, 1]]).unwrap())),
        ("E2-minus.rob.json", datum(Subspace::span_i64(2, &[&[1, -1]]).unwrap())),
        ("sl2-cd-g.rob.json", datum(cd.triple.g.clone())),
        ("sl2-qp-g.rob.json", datum(qp.triple.g.clone())),
        ("sl2.rep.json", SpecFile::Rep(catalog::sl2_rep())),
    ]
}

pub fn fixture_text(spec: &SpecFile<Q>) -> String {
    write_spec(spec)
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the binary from the crate directory so report paths stay relative.
pub fn dirac(args: &[&str]) -> Run {
    dirac_in(&cli_dir(), args)
}

pub fn dirac_in(dir: &Path, args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_dirac"))
        .args(args)
        .current_dir(dir)
        .env("DIRAC_COLOR", "0")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// Compares against a checked-in file, or rewrites it with UPDATE_GOLDEN=1.
pub fn golden(path: &Path, actual: &str) {
    if std::env::var("UPDATE_GOLDEN").as_deref() == Ok("1") {
        std::fs::write(path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, expected, "{} differs", path.display());
}
