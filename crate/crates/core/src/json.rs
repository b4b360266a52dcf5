//! JSON files for tensors and decompositions over `Complex<f64>`.
//!
//! Complex numbers are always `[re, im]`. Tensors come in two formats:
//! `{"order":k,"dim":n,"format":"dense","entries":[[re,im],...]}` with the
//! first index slowest, and
//! `{"order":k,"dim":n,"format":"sym","coeffs":[{"exponent":[...],"value":[re,im]},...]}`.
//! Decompositions are
//! `{"order":k,"dim":n,"field":"R"|"C","terms":[{"weight":[re,im],"vector":[[re,im],...]},...]}`.

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::combinatorics::ExponentVector;
use crate::decompose::{Field, SymmetricDecomposition, Term};
use crate::error::{Error, Result};
use crate::tensor::{DenseTensor, SymmetricTensor};

type Pair = [f64; 2];

fn pair(z: &Complex64) -> Pair {
    [z.re, z.im]
}

fn complex(p: &Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DenseFile {
    order: usize,
    dim: usize,
    format: String,
    entries: Vec<Pair>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoeffEntry {
    exponent: Vec<u32>,
    value: Pair,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SymFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    format: String,
    coeffs: Vec<CoeffEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermEntry {
    weight: Pair,
    vector: Vec<Pair>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DecompositionFile {
    order: usize,
    dim: usize,
    field: Field,
    terms: Vec<TermEntry>,
}

/// A tensor file in either storage format.
#[derive(Clone, Debug, PartialEq)]
pub enum TensorFile {
    Dense(DenseTensor<Complex64>),
    Sym(SymmetricTensor<Complex64>),
}

impl TensorFile {
    /// Compressed form; dense input must be symmetric within `tol`.
    pub fn into_symmetric(self, tol: f64) -> Result<SymmetricTensor<Complex64>> {
        match self {
            TensorFile::Dense(d) => SymmetricTensor::compress(&d, tol),
            TensorFile::Sym(s) => Ok(s),
        }
    }
}

fn json_error(path: impl std::fmt::Display, msg: impl std::fmt::Display) -> Error {
    Error::Invalid(format!("JSON field `{path}`: {msg}"))
}

fn typed<T: DeserializeOwned>(value: Value) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        json_error(if path == "." { "<root>".into() } else { path }, e.into_inner())
    })
}

fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Invalid(format!("malformed JSON: {e}")))
}

pub fn tensor_from_json(text: &str) -> Result<TensorFile> {
    let value = parse_value(text)?;
    let format = value
        .get("format")
        .ok_or_else(|| json_error("format", "missing; expected \"dense\" or \"sym\""))?
        .as_str()
        .ok_or_else(|| json_error("format", "must be a string"))?
        .to_owned();
    match format.as_str() {
        "dense" => {
            let f: DenseFile = typed(value)?;
            let entries = f.entries.iter().map(complex).collect();
            let t = DenseTensor::new(f.order, f.dim, entries).map_err(|e| json_error("entries", e))?;
            Ok(TensorFile::Dense(t))
        }
        "sym" => {
            let f: SymFile = typed(value)?;
            let first = f.coeffs.first();
            let dim = f
                .dim
                .or_else(|| first.map(|c| c.exponent.len()))
                .ok_or_else(|| json_error("dim", "required when coeffs is empty"))?;
            let order = f
                .order
                .or_else(|| first.map(|c| c.exponent.iter().sum::<u32>() as usize))
                .ok_or_else(|| json_error("order", "required when coeffs is empty"))?;
            let coeffs = f.coeffs.iter().map(|c| (ExponentVector::new(c.exponent.clone()), complex(&c.value)));
            let t = SymmetricTensor::from_coeffs(order, dim, coeffs).map_err(|e| json_error("coeffs", e))?;
            Ok(TensorFile::Sym(t))
        }
        other => Err(json_error("format", format!("unknown value {other:?}; expected \"dense\" or \"sym\""))),
    }
}

fn to_pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes")
}

pub fn dense_to_json(t: &DenseTensor<Complex64>) -> String {
    to_pretty(&DenseFile {
        order: t.order(),
        dim: t.dim(),
        format: "dense".into(),
        entries: t.entries().iter().map(pair).collect(),
    })
}

/// Writes every stored class, in graded-lex order.
pub fn sym_to_json(t: &SymmetricTensor<Complex64>) -> String {
    to_pretty(&SymFile {
        order: Some(t.order()),
        dim: Some(t.dim()),
        format: "sym".into(),
        coeffs: t
            .coeffs()
            .iter()
            .map(|(p, v)| CoeffEntry {
                exponent: p.exponents().to_vec(),
                value: pair(v),
            })
            .collect(),
    })
}

pub fn decomposition_to_json(d: &SymmetricDecomposition<Complex64>) -> String {
    to_pretty(&DecompositionFile {
        order: d.order(),
        dim: d.dim(),
        field: d.field(),
        terms: d
            .terms()
            .iter()
            .map(|t| TermEntry {
                weight: pair(&t.weight),
                vector: t.vector.iter().map(pair).collect(),
            })
            .collect(),
    })
}

pub fn decomposition_from_json(text: &str) -> Result<SymmetricDecomposition<Complex64>> {
    let f: DecompositionFile = typed(parse_value(text)?)?;
    let terms = f
        .terms
        .iter()
        .map(|t| Term {
            weight: complex(&t.weight),
            vector: t.vector.iter().map(complex).collect(),
        })
        .collect();
    SymmetricDecomposition::new(f.order, f.dim, f.field, terms).map_err(|e| json_error("terms", e))
}
