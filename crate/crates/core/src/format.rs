//! JSON spec files. Every document is
//! `{"format_version": 1, "kind": ..., "payload": {...}}` with rationals as
//! strings and matrices as row-major nested arrays. Output is pretty-printed
//! with sorted keys and a trailing newline, so writing is deterministic.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::groupoid::{LinearGroupoid, LinearModule};
use crate::homsp::{ClassificationData, KSample, RobinsonDatum};
use crate::lie::{LieAlgebra, MatrixRep};
use crate::linalg::{Mat, Subspace, SymBilinearForm, SymBivector};
use crate::manin::DiracManinTriple;
use crate::Scalar;

pub const FORMAT_VERSION: u64 = 1;

/// A triple file, optionally with a matrix group: a faithful representation
/// of `d` and elements normalizing its image.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TripleSpec<F> {
    pub triple: DiracManinTriple<F>,
    pub group: Option<GroupSpec<F>>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupSpec<F> {
    pub rep: MatrixRep<F>,
    pub elements: Vec<Mat<F>>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SpecFile<F> {
    Triple(TripleSpec<F>),
    Groupoid(LinearGroupoid<F>),
    Module(LinearModule<F>),
    Classification(ClassificationData<F>),
    Robinson(RobinsonDatum<F>),
    Rep(MatrixRep<F>),
}

impl<F> SpecFile<F> {
    pub fn kind(&self) -> &'static str {
        match self {
            SpecFile::Triple(_) => "triple",
            SpecFile::Groupoid(_) => "groupoid",
            SpecFile::Module(_) => "module",
            SpecFile::Classification(_) => "classification",
            SpecFile::Robinson(_) => "robinson",
            SpecFile::Rep(_) => "rep",
        }
    }
}

type RawMat = Vec<Vec<String>>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Envelope {
    format_version: u64,
    kind: String,
    payload: Value,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBracket {
    i: usize,
    j: usize,
    k: usize,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    basis: Vec<String>,
    brackets: Vec<RawBracket>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    rep_dim: usize,
    images: Vec<RawMat>,
    elements: Vec<RawMat>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTriple {
    basis: Vec<String>,
    brackets: Vec<RawBracket>,
    beta: RawMat,
    g: RawMat,
    h: RawMat,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    samples: Vec<RawMat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    group: Option<RawGroup>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroupoid {
    dim: usize,
    units: RawMat,
    s: RawMat,
    t: RawMat,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    groupoid: RawGroupoid,
    #[serde(rename = "P_dim")]
    p_dim: usize,
    u: RawMat,
    #[serde(rename = "A")]
    a: RawMat,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSample {
    on_n: RawMat,
    on_d: RawMat,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClassification {
    n: RawAlgebra,
    gamma_n: RawMat,
    u: RawMat,
    k: RawMat,
    f_n: RawMat,
    #[serde(default)]
    samples: Vec<RawSample>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRobinson {
    c: RawMat,
    k: RawMat,
    #[serde(default)]
    k_samples: Vec<RawMat>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRep {
    algebra: RawAlgebra,
    rep_dim: usize,
    images: Vec<RawMat>,
}

fn parse_scalar<F: Scalar>(s: &str) -> Result<F> {
    F::parse_exact(s).ok_or_else(|| Error::Parse(format!("malformed rational {s:?}")))
}

fn mat_in<F: Scalar>(rows: &RawMat, cols: usize) -> Result<Mat<F>> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|x| parse_scalar(x)).collect::<Result<Vec<F>>>())
        .collect::<Result<Vec<_>>>()?;
    if let Some(r) = parsed.iter().find(|r| r.len() != cols) {
        return Err(Error::Parse(format!("row of length {} where {cols} was expected", r.len())));
    }
    Mat::from_rows(cols, parsed)
}

fn square_in<F: Scalar>(rows: &RawMat, n: usize) -> Result<Mat<F>> {
    if rows.len() != n {
        return Err(Error::Parse(format!("{} rows where {n} were expected", rows.len())));
    }
    mat_in(rows, n)
}

fn mat_out<F: Scalar>(m: &Mat<F>) -> RawMat {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

fn subspace_in<F: Scalar>(rows: &RawMat, n: usize) -> Result<Subspace<F>> {
    Ok(Subspace::row_space(&mat_in(rows, n)?))
}

fn subspace_out<F: Scalar>(s: &Subspace<F>) -> RawMat {
    mat_out(s.basis())
}

fn algebra_in<F: Scalar>(raw: &RawAlgebra) -> Result<LieAlgebra<F>> {
    let records = raw
        .brackets
        .iter()
        .map(|b| {
            if b.i >= b.j {
                return Err(Error::Parse(format!("bracket record ({}, {}) must have i < j", b.i, b.j)));
            }
            Ok((b.i, b.j, b.k, parse_scalar(&b.coeff)?))
        })
        .collect::<Result<Vec<_>>>()?;
    LieAlgebra::from_records(raw.basis.clone(), &records)
}

fn algebra_out<F: Scalar>(l: &LieAlgebra<F>) -> RawAlgebra {
    RawAlgebra {
        basis: l.labels().to_vec(),
        brackets: l
            .records()
            .into_iter()
            .map(|(i, j, k, c)| RawBracket {
                i,
                j,
                k,
                coeff: c.to_string(),
            })
            .collect(),
    }
}

fn groupoid_in<F: Scalar>(raw: &RawGroupoid) -> Result<LinearGroupoid<F>> {
    let n = raw.dim;
    LinearGroupoid::new(n, subspace_in(&raw.units, n)?, square_in(&raw.s, n)?, square_in(&raw.t, n)?)
}

fn groupoid_out<F: Scalar>(g: &LinearGroupoid<F>) -> RawGroupoid {
    RawGroupoid {
        dim: g.dim(),
        units: subspace_out(g.units()),
        s: mat_out(g.s()),
        t: mat_out(g.t()),
    }
}

fn rep_in<F: Scalar>(algebra: LieAlgebra<F>, rep_dim: usize, images: &[RawMat]) -> Result<MatrixRep<F>> {
    let images = images.iter().map(|m| square_in(m, rep_dim)).collect::<Result<Vec<_>>>()?;
    MatrixRep::new(algebra, rep_dim, images)
}

fn triple_in<F: Scalar>(raw: RawTriple) -> Result<TripleSpec<F>> {
    let d = algebra_in(&RawAlgebra {
        basis: raw.basis,
        brackets: raw.brackets,
    })?;
    let n = d.dim();
    let beta = SymBivector::new(square_in(&raw.beta, n)?)?;
    let g = subspace_in(&raw.g, n)?;
    let h = subspace_in(&raw.h, n)?;
    let samples = raw.samples.iter().map(|m| square_in(m, n)).collect::<Result<Vec<_>>>()?;
    let group = match raw.group {
        None => None,
        Some(rg) => {
            let rep = rep_in(d.clone(), rg.rep_dim, &rg.images)?;
            let elements = rg.elements.iter().map(|m| square_in(m, rg.rep_dim)).collect::<Result<Vec<_>>>()?;
            Some(GroupSpec { rep, elements })
        }
    };
    Ok(TripleSpec {
        triple: DiracManinTriple::new(d, beta, g, h, samples)?,
        group,
    })
}

fn triple_out<F: Scalar>(t: &TripleSpec<F>) -> RawTriple {
    let a = algebra_out(&t.triple.d);
    RawTriple {
        basis: a.basis,
        brackets: a.brackets,
        beta: mat_out(t.triple.beta.gram()),
        g: subspace_out(&t.triple.g),
        h: subspace_out(&t.triple.h),
        samples: t.triple.samples.iter().map(mat_out).collect(),
        group: t.group.as_ref().map(|g| RawGroup {
            rep_dim: g.rep.rep_dim(),
            images: g.rep.images().iter().map(mat_out).collect(),
            elements: g.elements.iter().map(mat_out).collect(),
        }),
    }
}

fn classification_in<F: Scalar>(raw: RawClassification) -> Result<ClassificationData<F>> {
    let n = algebra_in(&raw.n)?;
    let dim = n.dim();
    let f_n = mat_in(&raw.f_n, dim)?;
    let d_dim = f_n.rows();
    let samples = raw
        .samples
        .iter()
        .map(|s| {
            Ok(KSample {
                on_n: square_in(&s.on_n, dim)?,
                on_d: square_in(&s.on_d, d_dim)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassificationData {
        gamma_n: SymBilinearForm::new(square_in(&raw.gamma_n, dim)?)?,
        u: subspace_in(&raw.u, dim)?,
        k: subspace_in(&raw.k, dim)?,
        f_n,
        samples,
        n,
    })
}

fn classification_out<F: Scalar>(c: &ClassificationData<F>) -> RawClassification {
    RawClassification {
        n: algebra_out(&c.n),
        gamma_n: mat_out(c.gamma_n.gram()),
        u: subspace_out(&c.u),
        k: subspace_out(&c.k),
        f_n: mat_out(&c.f_n),
        samples: c
            .samples
            .iter()
            .map(|s| RawSample {
                on_n: mat_out(&s.on_n),
                on_d: mat_out(&s.on_d),
            })
            .collect(),
    }
}

fn payload<T: serde::de::DeserializeOwned>(v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses a spec document. Dimensions are checked, but none of the algebraic
/// conditions beyond what the constructors enforce.
pub fn parse_spec<F: Scalar>(text: &str) -> Result<SpecFile<F>> {
    let env: Envelope = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if env.format_version != FORMAT_VERSION {
        return Err(Error::Parse(format!("unsupported format_version {}", env.format_version)));
    }
    Ok(match env.kind.as_str() {
        "triple" => SpecFile::Triple(triple_in(payload(env.payload)?)?),
        "groupoid" => SpecFile::Groupoid(groupoid_in(&payload(env.payload)?)?),
        "module" => {
            let raw: RawModule = payload(env.payload)?;
            let over = groupoid_in(&raw.groupoid)?;
            let u = mat_in(&raw.u, raw.p_dim)?;
            let a = mat_in(&raw.a, over.dim())?;
            SpecFile::Module(LinearModule::new(over, raw.p_dim, u, a)?)
        }
        "classification" => SpecFile::Classification(classification_in(payload(env.payload)?)?),
        "robinson" => {
            let raw: RawRobinson = payload(env.payload)?;
            let n = raw.c.first().map(|r| r.len()).or_else(|| raw.k.first().map(|r| r.len()));
            let n = n.ok_or_else(|| Error::Parse("robinson datum needs a nonempty c or k".into()))?;
            SpecFile::Robinson(RobinsonDatum {
                c: subspace_in(&raw.c, n)?,
                k: subspace_in(&raw.k, n)?,
                k_samples: raw.k_samples.iter().map(|m| square_in(m, n)).collect::<Result<Vec<_>>>()?,
            })
        }
        "rep" => {
            let raw: RawRep = payload(env.payload)?;
            SpecFile::Rep(rep_in(algebra_in(&raw.algebra)?, raw.rep_dim, &raw.images)?)
        }
        other => return Err(Error::Parse(format!("unknown kind {other:?}"))),
    })
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("spec payloads serialize")
}

/// Serializes with sorted keys and a trailing newline.
pub fn write_spec<F: Scalar>(spec: &SpecFile<F>) -> String {
    let payload = match spec {
        SpecFile::Triple(t) => to_value(&triple_out(t)),
        SpecFile::Groupoid(g) => to_value(&groupoid_out(g)),
        SpecFile::Module(m) => to_value(&RawModule {
            groupoid: groupoid_out(m.over()),
            p_dim: m.p_dim(),
            u: mat_out(m.u()),
            a: mat_out(m.a()),
        }),
        SpecFile::Classification(c) => to_value(&classification_out(c)),
        SpecFile::Robinson(r) => to_value(&RawRobinson {
            c: subspace_out(&r.c),
            k: subspace_out(&r.k),
            k_samples: r.k_samples.iter().map(mat_out).collect(),
        }),
        SpecFile::Rep(r) => to_value(&RawRep {
            algebra: algebra_out(r.algebra()),
            rep_dim: r.rep_dim(),
            images: r.images().iter().map(mat_out).collect(),
        }),
    };
    let env = Envelope {
        format_version: FORMAT_VERSION,
        kind: spec.kind().to_string(),
        payload,
    };
    to_pretty(&to_value(&env))
}

/// Pretty JSON text of a value, keys sorted, newline-terminated.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}
