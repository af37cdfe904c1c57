use dirac_core::catalog::{self, SlotConvention};
use dirac_core::format::{parse_spec, write_spec, GroupSpec, SpecFile, TripleSpec};
use dirac_core::groupoid::{LinearGroupoid, LinearModule};
use dirac_core::homsp::{robinson_build, trivial_datum, RobinsonDatum};
use dirac_core::linalg::{Mat, Subspace};
use dirac_core::{Error, Q};

fn round_trip(spec: SpecFile<Q>) {
    let text = write_spec(&spec);
    assert!(text.ends_with("}\n"));
    let back: SpecFile<Q> = parse_spec(&text).unwrap();
    assert_eq!(back, spec);
    assert_eq!(write_spec(&back), text);
}

fn plain(t: dirac_core::manin::DiracManinTriple<Q>) -> SpecFile<Q> {
    SpecFile::Triple(TripleSpec { triple: t, group: None })
}

#[test]
fn every_kind_round_trips() {
    for t in [catalog::e1::<Q>(), catalog::e2(), catalog::e3(), catalog::e4(), catalog::sl2_quasi_poisson().unwrap()] {
        round_trip(plain(t));
    }
    let fx = catalog::sl2_cartan_dirac::<Q>(SlotConvention::First).unwrap();
    round_trip(SpecFile::Triple(TripleSpec {
        triple: fx.triple.clone(),
        group: Some(GroupSpec {
            rep: fx.rep.clone(),
            elements: fx.elements.iter().map(|e| e.matrix().clone()).collect(),
        }),
    }));
    round_trip(SpecFile::Rep(catalog::sl2_rep()));

    let s = Mat::from_i64(&[&[1, 1], &[0, 0]]);
    let t = Mat::from_i64(&[&[1, 0], &[0, 0]]);
    let g = LinearGroupoid::new(2, Subspace::span_i64(2, &[&[1, 0]]).unwrap(), s, t).unwrap();
    round_trip(SpecFile::Groupoid(g.clone()));
    let m = LinearModule::new(g.clone(), 2, g.t().clone(), Mat::identity(2)).unwrap();
    round_trip(SpecFile::Module(m));

    round_trip(SpecFile::Classification(trivial_datum(&fx.triple).unwrap()));
    let e2 = catalog::e2::<Q>();
    let datum = RobinsonDatum {
        c: e2.g.clone(),
        k: Subspace::zero(2),
        k_samples: vec![Mat::identity(2)],
    };
    round_trip(SpecFile::Classification(robinson_build(&datum, &e2).unwrap()));
    round_trip(SpecFile::Robinson(datum));
}

const E1_TEXT: &str = r#"{
  "format_version": 1,
  "kind": "triple",
  "payload": {
    "basis": ["x", "y"],
    "brackets": [],
    "beta": [["0", "2/2"], ["1", "0"]],
    "g": [["3", "0"]],
    "h": [["0", "-1"]]
  }
}"#;

#[test]
fn output_is_canonical() {
    let spec: SpecFile<Q> = parse_spec(E1_TEXT).unwrap();
    let SpecFile::Triple(ts) = &spec else { panic!("kind") };
    assert_eq!(ts.triple.g, catalog::e1::<Q>().g);
    let text = write_spec(&spec);
    assert!(text.contains("\"1\""));
    assert!(!text.contains("2/2") && !text.contains("\"3\""));
    // Sorted keys, envelope first.
    let keys = ["\"basis\"", "\"beta\"", "\"brackets\"", "\"g\"", "\"h\""];
    let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{text}");
    assert!(text.find("\"format_version\"").unwrap() < text.find("\"kind\"").unwrap());
    assert_eq!(parse_spec::<Q>(&text).unwrap(), spec);
}

#[test]
fn malformed_documents_are_rejected() {
    let bad = |s: &str| matches!(parse_spec::<Q>(s), Err(Error::Parse(_)));
    assert!(bad(&E1_TEXT.replace("2/2", "1/0")));
    assert!(bad(&E1_TEXT.replace("2/2", "0.5")));
    assert!(bad(&E1_TEXT.replace("\"kind\": \"triple\"", "\"kind\": \"quadruple\"")));
    assert!(bad(&E1_TEXT.replace("\"format_version\": 1", "\"format_version\": 2")));
    assert!(bad(&E1_TEXT.replace("\"brackets\": []", "\"brackets\": [], \"extra\": 1")));
    assert!(bad(&E1_TEXT.replace(r#"[["3", "0"]]"#, r#"[["3", "0", "1"]]"#)));
    assert!(bad("not json"));
    let swapped = E1_TEXT.replace("\"brackets\": []", r#""brackets": [{"i": 1, "j": 0, "k": 0, "coeff": "1"}]"#);
    assert!(bad(&swapped));
    // Wrong number of rows in beta is a dimension error, not a rational error.
    assert!(bad(&E1_TEXT.replace(r#"[["0", "2/2"], ["1", "0"]]"#, r#"[["0", "1"]]"#)));
    // An asymmetric beta is caught by the constructor.
    let asym = E1_TEXT.replace(r#"[["0", "2/2"], ["1", "0"]]"#, r#"[["0", "2"], ["1", "0"]]"#);
    assert!(parse_spec::<Q>(&asym).is_err());
}
