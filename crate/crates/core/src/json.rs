//! JSON encodings of fields, elements, polynomials, matrices, types,
//! certificates and reports.
//!
//! Rationals are strings `"a/b"` (or `"a"`), `F_p` elements are integers in
//! `[0, p)`, extension elements are coefficient arrays over the immediate base.
//! Polynomials are coefficient arrays, constant term first; on input the human
//! form `"x^2 - 2"` is accepted as well.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::cent::ConjugacyCertificate;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem, FieldKind};
use crate::matrix::Matrix;
use crate::perm::VariationReport;
use crate::poly::{parse_rational, Poly};
use crate::types::{CycleType, GeneralizedType, GreenType, Partition};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn field_to_json(field: &Field) -> Value {
    match field.kind() {
        FieldKind::Rationals => json!({"kind": "Q"}),
        FieldKind::Prime(p) => json!({"kind": "Fp", "p": p}),
        FieldKind::Extension { base, modulus } => json!({
            "kind": "ext",
            "base": field_to_json(base),
            "modulus": poly_to_json(modulus),
        }),
    }
}

pub fn field_from_json(v: &Value) -> Result<Field> {
    let kind = v.get("kind").and_then(Value::as_str).ok_or_else(|| parse_err("field descriptor needs a \"kind\""))?;
    match kind {
        "Q" => Ok(Field::rationals()),
        "Fp" => {
            let p = v.get("p").and_then(Value::as_u64).ok_or_else(|| parse_err("Fp descriptor needs an integer \"p\""))?;
            Field::prime(p)
        }
        "ext" => {
            let base = field_from_json(v.get("base").ok_or_else(|| parse_err("ext descriptor needs a \"base\""))?)?;
            let modulus = poly_from_json(&base, v.get("modulus").ok_or_else(|| parse_err("ext descriptor needs a \"modulus\""))?)?;
            Field::extension(&base, &modulus)
        }
        other => Err(Error::UnsupportedField(other.to_string())),
    }
}

pub fn elem_to_json(field: &Field, a: &FieldElem) -> Value {
    match (field.kind(), a) {
        (FieldKind::Extension { base, .. }, FieldElem::Ext(v)) => Value::Array(v.iter().map(|c| elem_to_json(base, c)).collect()),
        (_, FieldElem::Mod(v)) => json!(v),
        (_, FieldElem::Rat(_)) => Value::String(field.fmt_elem(a)),
        _ => Value::Null,
    }
}

fn rational_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s.trim()),
        Value::Number(n) => {
            let i: BigInt = n.to_string().parse().map_err(|_| parse_err(format!("non-integer number {n}")))?;
            Ok(BigRational::from_integer(i))
        }
        other => Err(parse_err(format!("expected a number, got {other}"))),
    }
}

pub fn elem_from_json(field: &Field, v: &Value) -> Result<FieldElem> {
    match (field.kind(), v) {
        (FieldKind::Extension { base, .. }, Value::Array(items)) => {
            if items.len() > field.degree_over_base() {
                return Err(parse_err("extension element has too many coefficients"));
            }
            let coeffs = items.iter().map(|c| elem_from_json(base, c)).collect::<Result<Vec<_>>>()?;
            field.elem_from_poly(&Poly::new(base, coeffs))
        }
        (FieldKind::Extension { base, .. }, _) => Ok(field.embed(&elem_from_json(base, v)?)),
        (_, Value::Array(_)) => Err(parse_err("array given for a ground-field element")),
        _ => field.from_rational(&rational_from_json(v)?).map_err(|_| parse_err(format!("bad element {v}"))),
    }
}

pub fn poly_to_json(f: &Poly) -> Value {
    Value::Array(f.coeffs().iter().map(|c| elem_to_json(f.field(), c)).collect())
}

pub fn poly_from_json(field: &Field, v: &Value) -> Result<Poly> {
    match v {
        Value::Array(items) => {
            let coeffs = items.iter().map(|c| elem_from_json(field, c)).collect::<Result<Vec<_>>>()?;
            Ok(Poly::new(field, coeffs))
        }
        Value::String(s) => Poly::parse(field, s),
        other => Err(parse_err(format!("expected a polynomial, got {other}"))),
    }
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    let rows: Vec<Value> = m
        .row_vecs()
        .iter()
        .map(|r| Value::Array(r.iter().map(|a| elem_to_json(m.field(), a)).collect()))
        .collect();
    json!({"field": field_to_json(m.field()), "rows": rows})
}

pub fn matrix_from_json(v: &Value) -> Result<Matrix> {
    let field = field_from_json(v.get("field").ok_or_else(|| parse_err("matrix needs a \"field\""))?)?;
    let rows = v.get("rows").and_then(Value::as_array).ok_or_else(|| parse_err("matrix needs \"rows\""))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| parse_err("each row must be an array"))?
                .iter()
                .map(|a| elem_from_json(&field, a))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Err(parse_err("matrix has no rows"));
    }
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(parse_err("ragged matrix rows"));
    }
    Matrix::from_rows(&field, rows)
}

pub fn matrix_from_str(s: &str) -> Result<Matrix> {
    let v: Value = serde_json::from_str(s).map_err(|e| parse_err(format!("invalid JSON: {e}")))?;
    matrix_from_json(&v)
}

fn partition_json(p: &Partition) -> Value {
    json!(p.parts())
}

fn by_degree_partition_coeffs(a: &(Poly, Partition), b: &(Poly, Partition)) -> Ordering {
    a.0.deg().cmp(&b.0.deg()).then_with(|| a.1.cmp(&b.1)).then_with(|| a.0.cmp_canonical(&b.0))
}

pub fn cycle_type_to_json(t: &CycleType) -> Value {
    let mut pairs = t.pairs.clone();
    pairs.sort_by(by_degree_partition_coeffs);
    Value::Array(
        pairs
            .iter()
            .map(|(f, l)| json!({"poly": poly_to_json(f), "degree": f.deg(), "partition": partition_json(l)}))
            .collect(),
    )
}

pub fn green_type_to_json(t: &GreenType) -> Value {
    Value::Array(t.pairs.iter().map(|(d, l)| json!({"degree": d, "partition": partition_json(l)})).collect())
}

pub fn generalized_type_to_json(t: &GeneralizedType) -> Value {
    let mut pairs = t.pairs.clone();
    pairs.sort_by(by_degree_partition_coeffs);
    Value::Array(
        pairs
            .iter()
            .map(|(f, l)| json!({"class_rep": poly_to_json(f), "degree": f.deg(), "partition": partition_json(l)}))
            .collect(),
    )
}

pub fn certificate_to_json(c: &ConjugacyCertificate) -> Value {
    json!({
        "verdict": c.verdict,
        "p": c.p.as_ref().map(poly_to_json),
        "q": c.q.as_ref().map(poly_to_json),
        "conjugator": c.conjugator.as_ref().map(matrix_to_json),
        "type_x": generalized_type_to_json(&c.type_x),
        "type_y": generalized_type_to_json(&c.type_y),
    })
}

pub fn variation_report_to_json(r: &VariationReport) -> Value {
    json!({
        "equal": r.equal,
        "kind": r.kind.to_string(),
        "variation": r.variation,
        "details": r.details,
    })
}

/// Stable machine-readable name of an error variant.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::CompositeModulus(_) => "CompositeModulus",
        Error::ReducibleModulus => "ReducibleModulus",
        Error::BadModulus => "BadModulus",
        Error::DivisionByZero => "DivisionByZero",
        Error::CtxMismatch => "CtxMismatch",
        Error::ZeroPolynomial => "ZeroPolynomial",
        Error::UnsupportedField(_) => "UnsupportedField",
        Error::DegreeTooLarge(_) => "DegreeTooLarge",
        Error::NonCoprimeModuli => "NonCoprimeModuli",
        Error::NotAnExtension => "NotAnExtension",
        Error::NotSquare => "NotSquare",
        Error::SizeMismatch => "SizeMismatch",
        Error::NotIrreducible => "NotIrreducible",
        Error::NonSquarefreeDerivativeUnit => "NonSquarefreeDerivativeUnit",
        Error::TooLarge => "TooLarge",
        Error::OddPermutation => "OddPermutation",
        Error::Parse(_) => "ParseError",
        Error::UnknownSuite(_) => "UnknownSuite",
        Error::Internal(_) => "Internal",
    }
}

pub fn error_to_json(e: &Error) -> Value {
    let mut inner = Map::new();
    inner.insert("kind".into(), json!(error_kind(e)));
    inner.insert("message".into(), json!(e.to_string()));
    json!({ "error": inner })
}

/// Process exit code for an error: 2 for malformed input, 3 for an
/// unsupported field, 4 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::UnknownSuite(_) | Error::OddPermutation | Error::SizeMismatch | Error::NotSquare => 2,
        Error::UnsupportedField(_) | Error::CompositeModulus(_) | Error::ReducibleModulus | Error::BadModulus => 3,
        _ => 4,
    }
}
