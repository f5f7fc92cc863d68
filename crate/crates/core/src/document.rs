//! JSON documents describing a baric algebra.
//!
//! ```text
//! {
//!   "field": {"kind": "prime", "p": 2},
//!   "dim": 2,
//!   "basis": ["a", "b"],
//!   "mul": [
//!     [0, 0, 0, "1"],
//!     [1, 1, 1, "1"]
//!   ],
//!   "weight": ["1", "1"],
//!   "provenance": {"bowtie": {"left": 1, "right": 1}}
//! }
//! ```
//!
//! `basis` and `provenance` are optional. Coefficients are strings so that
//! rationals survive intact. `to_json` is canonical: triples sorted, zero
//! entries dropped, scalars reduced.

use std::fs;
use std::path::Path;

use serde_json::{Map, Value};

use crate::algebra::Algebra;
use crate::baric::{BaricAlgebra, WeightFunctional};
use crate::bowtie::BowtieTag;
use crate::error::{Error, Result};
use crate::field::{parse_scalar, FieldElement, FieldSpec};

fn field_error(field: &str, message: impl std::fmt::Display) -> Error {
    Error::Parse(format!("field `{field}`: {message}"))
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| field_error(key, "missing"))
}

fn as_index(v: &Value, field: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| field_error(field, format!("expected a non-negative integer, found {v}")))
}

fn as_scalar(v: &Value, field: &str, k: FieldSpec) -> Result<FieldElement> {
    let text = v
        .as_str()
        .ok_or_else(|| field_error(field, format!("expected a coefficient string, found {v}")))?;
    parse_scalar(text, k).map_err(|e| field_error(field, e))
}

fn parse_field(v: &Value) -> Result<FieldSpec> {
    let obj = v.as_object().ok_or_else(|| field_error("field", "expected an object"))?;
    match obj.get("kind").and_then(Value::as_str) {
        Some("rational") => Ok(FieldSpec::rationals()),
        Some("prime") => {
            let p = obj
                .get("p")
                .and_then(Value::as_u64)
                .ok_or_else(|| field_error("field.p", "expected a positive integer"))?;
            FieldSpec::prime(p).map_err(|e| field_error("field.p", e))
        }
        other => Err(field_error("field.kind", format!("expected \"rational\" or \"prime\", found {other:?}"))),
    }
}

/// Parses a document. Structural problems become `Parse` errors naming the
/// offending line or field; semantic ones keep their own error kind.
pub fn from_json(text: &str) -> Result<BaricAlgebra> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    let obj = root.as_object().ok_or_else(|| Error::Parse("top level: expected an object".into()))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "field" | "dim" | "basis" | "mul" | "weight" | "provenance") {
            return Err(field_error(key, "unknown field"));
        }
    }

    let field = parse_field(get(obj, "field")?)?;
    let dim = as_index(get(obj, "dim")?, "dim")?;
    if dim == 0 {
        return Err(field_error("dim", "must be at least 1"));
    }

    let mul = get(obj, "mul")?.as_array().ok_or_else(|| field_error("mul", "expected an array"))?;
    let mut entries = Vec::with_capacity(mul.len());
    for (n, row) in mul.iter().enumerate() {
        let name = format!("mul[{n}]");
        let row = row.as_array().filter(|r| r.len() == 4).ok_or_else(|| field_error(&name, "expected [i, j, k, \"c\"]"))?;
        let i = as_index(&row[0], &name)?;
        let j = as_index(&row[1], &name)?;
        let k = as_index(&row[2], &name)?;
        entries.push(((i, j, k), as_scalar(&row[3], &name, field)?));
    }
    let mut algebra = Algebra::new(field, dim, entries)?;

    if let Some(basis) = obj.get("basis") {
        let names = basis
            .as_array()
            .and_then(|a| a.iter().map(|v| v.as_str().map(str::to_owned)).collect::<Option<Vec<_>>>())
            .ok_or_else(|| field_error("basis", "expected an array of strings"))?;
        algebra = algebra.with_basis_names(names).map_err(|e| field_error("basis", e))?;
    }

    let weight = get(obj, "weight")?.as_array().ok_or_else(|| field_error("weight", "expected an array"))?;
    if weight.len() != dim {
        return Err(field_error("weight", format!("expected {dim} entries, found {}", weight.len())));
    }
    let weight = weight
        .iter()
        .enumerate()
        .map(|(n, v)| as_scalar(v, &format!("weight[{n}]"), field))
        .collect::<Result<Vec<_>>>()?;
    let weight = WeightFunctional::new(weight);
    let b = BaricAlgebra::new(algebra, weight)?;

    match obj.get("provenance") {
        None => Ok(b),
        Some(p) => {
            let bow = p
                .get("bowtie")
                .and_then(Value::as_object)
                .ok_or_else(|| field_error("provenance", "expected {\"bowtie\": {\"left\": n, \"right\": m}}"))?;
            let left = as_index(get(bow, "left").map_err(|_| field_error("provenance.bowtie.left", "missing"))?, "provenance.bowtie.left")?;
            let right = as_index(get(bow, "right").map_err(|_| field_error("provenance.bowtie.right", "missing"))?, "provenance.bowtie.right")?;
            if left + right != dim {
                return Err(Error::InvalidProvenance);
            }
            let tag = BowtieTag::split(b.weight(), left)?;
            b.with_provenance(tag)
        }
    }
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

/// Canonical serialization; `from_json(&to_json(b)) == b` and a second
/// round trip reproduces the same bytes.
pub fn to_json(b: &BaricAlgebra) -> String {
    let mut out = String::from("{\n");
    let field = match b.field().modulus() {
        None => "{\"kind\": \"rational\"}".to_owned(),
        Some(p) => format!("{{\"kind\": \"prime\", \"p\": {p}}}"),
    };
    out.push_str(&format!("  \"field\": {field},\n"));
    out.push_str(&format!("  \"dim\": {},\n", b.dim()));
    if let Some(names) = b.algebra().basis_names() {
        let names: Vec<String> = names.iter().map(|n| quote(n)).collect();
        out.push_str(&format!("  \"basis\": [{}],\n", names.join(", ")));
    }
    let rows: Vec<String> = b
        .algebra()
        .constants()
        .map(|((i, j, k), c)| format!("    [{i}, {j}, {k}, {}]", quote(&c.to_string())))
        .collect();
    if rows.is_empty() {
        out.push_str("  \"mul\": [],\n");
    } else {
        out.push_str(&format!("  \"mul\": [\n{}\n  ],\n", rows.join(",\n")));
    }
    let weight: Vec<String> = b.weight().values().iter().map(|w| quote(&w.to_string())).collect();
    out.push_str(&format!("  \"weight\": [{}]", weight.join(", ")));
    if let Some(tag) = b.provenance() {
        out.push_str(&format!(
            ",\n  \"provenance\": {{\"bowtie\": {{\"left\": {}, \"right\": {}}}}}",
            tag.left_dim, tag.right_dim
        ));
    }
    out.push_str("\n}\n");
    out
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Io { path: path.display().to_string(), message: e.to_string() }
}

pub fn load(path: impl AsRef<Path>) -> Result<BaricAlgebra> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    from_json(&text)
}

pub fn save(b: &BaricAlgebra, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, to_json(b)).map_err(|e| io_error(path, e))
}
