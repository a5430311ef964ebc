//! JSON encoding of matrices, results and certificates.
//!
//! Matrix files look like
//! `{"rows": 2, "cols": 2, "domain": {"kind": "gaussian_rational"}, "data": [[0, 1], [0, 0]]}`.
//! Rationals are `"p/q"` strings or integers, Gaussian rationals are
//! `{"re": .., "im": ..}`, residues are integers in `0..modulus`, and complex
//! floats are `[re, im]` pairs. Rationals are always written as strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Map, Value};

use crate::certificate::{Certificate, InverseKind, InverseResult, Outcome, RouteStatus};
use crate::error::{Error, Result};
use crate::matrix::StarMatrix;
use crate::scalar::{parse_rational, Domain, Gaussian, Scalar};

pub const SCHEMA_VERSION: u64 = 1;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn domain_to_json(d: Domain) -> Value {
    match d {
        Domain::Rational => json!({"kind": "rational"}),
        Domain::GaussianRational => json!({"kind": "gaussian_rational"}),
        Domain::PrimeField(p) => json!({"kind": "prime_field", "modulus": p}),
        Domain::IntegerMod(n) => json!({"kind": "integer_mod", "modulus": n}),
        Domain::ComplexFloat => json!({"kind": "complex_float"}),
    }
}

pub fn domain_from_json(v: &Value) -> Result<Domain> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| parse_err("domain needs a string `kind`"))?;
    let modulus = || {
        v.get("modulus")
            .and_then(Value::as_u64)
            .ok_or_else(|| parse_err(format!("domain `{kind}` needs an integer `modulus`")))
    };
    Ok(match kind {
        "rational" => Domain::Rational,
        "gaussian_rational" => Domain::GaussianRational,
        "prime_field" => Domain::prime_field(modulus()?)?,
        "integer_mod" => Domain::integer_mod(modulus()?)?,
        "complex_float" => Domain::ComplexFloat,
        other => return Err(parse_err(format!("unknown domain kind `{other}`"))),
    })
}

fn rational_to_json(r: &BigRational) -> Value {
    if r.denom().is_one() {
        Value::String(r.numer().to_string())
    } else {
        Value::String(format!("{}/{}", r.numer(), r.denom()))
    }
}

fn rational_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => Ok(parse_rational(s)?),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => Ok(BigRational::from_integer(BigInt::from(i))),
            (_, Some(u)) => Ok(BigRational::from_integer(BigInt::from(u))),
            _ => Err(parse_err(format!("rational entries must be integers or \"p/q\", got {n}"))),
        },
        other => Err(parse_err(format!("expected a rational, got {other}"))),
    }
}

fn finite(x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(parse_err("complex entries must be finite"))
    }
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Rational(r) => rational_to_json(r),
        Scalar::Gaussian(g) => json!({"re": rational_to_json(&g.re), "im": rational_to_json(&g.im)}),
        Scalar::Residue(r) => json!(r.value),
        Scalar::Complex(c) => json!([c.re, c.im]),
    }
}

pub fn scalar_from_json(v: &Value, domain: Domain) -> Result<Scalar> {
    match domain {
        Domain::Rational => Ok(Scalar::Rational(rational_from_json(v)?)),
        Domain::GaussianRational => match v {
            Value::Object(o) => {
                let part = |k: &str| {
                    o.get(k)
                        .map(rational_from_json)
                        .unwrap_or_else(|| Ok(BigRational::from_integer(0.into())))
                };
                Ok(Scalar::Gaussian(Gaussian::new(part("re")?, part("im")?)))
            }
            other => Ok(Scalar::Gaussian(Gaussian::new(
                rational_from_json(other)?,
                BigRational::from_integer(0.into()),
            ))),
        },
        Domain::PrimeField(m) | Domain::IntegerMod(m) => {
            let x = v
                .as_u64()
                .filter(|x| *x < m)
                .ok_or_else(|| parse_err(format!("residue entries must be integers in 0..{m}, got {v}")))?;
            Ok(domain.from_i64(x as i64))
        }
        Domain::ComplexFloat => match v {
            Value::Array(p) if p.len() == 2 => {
                let get = |x: &Value| {
                    x.as_f64()
                        .ok_or_else(|| parse_err(format!("complex parts must be numbers, got {x}")))
                        .and_then(finite)
                };
                Ok(Scalar::complex(get(&p[0])?, get(&p[1])?))
            }
            Value::Number(n) => Ok(Scalar::complex(finite(n.as_f64().unwrap_or(f64::NAN))?, 0.0)),
            other => Err(parse_err(format!("expected [re, im], got {other}"))),
        },
    }
}

pub fn matrix_to_json(m: &StarMatrix) -> Value {
    let data: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array(m.row(i).iter().map(scalar_to_json).collect()))
        .collect();
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "domain": domain_to_json(m.domain()),
        "data": data,
    })
}

pub fn matrix_from_json(v: &Value) -> Result<StarMatrix> {
    let dim = |k: &str| {
        v.get(k)
            .and_then(Value::as_u64)
            .map(|x| x as usize)
            .ok_or_else(|| parse_err(format!("matrix needs an integer `{k}`")))
    };
    let (rows, cols) = (dim("rows")?, dim("cols")?);
    let domain = domain_from_json(v.get("domain").ok_or_else(|| parse_err("matrix needs a `domain`"))?)?;
    let data = v
        .get("data")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("matrix needs a `data` array"))?;
    if data.len() != rows {
        return Err(parse_err(format!("`data` has {} rows, expected {rows}", data.len())));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for (i, row) in data.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| parse_err(format!("row {i} is not an array")))?;
        if row.len() != cols {
            return Err(parse_err(format!("row {i} has {} entries, expected {cols}", row.len())));
        }
        for x in row {
            entries.push(scalar_from_json(x, domain)?);
        }
    }
    StarMatrix::new(domain, rows, cols, entries)
}

pub fn parse_matrix(text: &str) -> Result<StarMatrix> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    matrix_from_json(&v)
}

fn residual_to_json(r: f64) -> Value {
    if r.is_finite() {
        json!(r)
    } else {
        Value::Null
    }
}

pub fn certificate_to_json(c: &Certificate) -> Value {
    let routes: Vec<Value> = c
        .routes
        .iter()
        .map(|r| {
            let (status, reason) = match &r.status {
                RouteStatus::Value => ("value", None),
                RouteStatus::NotExists(why) => ("not_exists", Some(why)),
                RouteStatus::NotApplicable(why) => ("not_applicable", Some(why)),
            };
            json!({"name": r.name, "status": status, "reason": reason})
        })
        .collect();
    let checks: Vec<Value> = c
        .checks
        .iter()
        .map(|e| json!({"label": e.label, "residual": residual_to_json(e.residual), "passed": e.passed}))
        .collect();
    let witnesses: Map<String, Value> = c
        .witnesses
        .iter()
        .map(|(k, m)| (k.clone(), matrix_to_json(m)))
        .collect();
    json!({
        "kind": c.kind.name(),
        "route": c.route,
        "passed": c.passed(),
        "routes": routes,
        "checks": checks,
        "witnesses": witnesses,
        "warnings": c.warnings,
    })
}

/// The versioned result document written by `ginv compute`.
pub fn result_to_json(kind: InverseKind, outcome: &Outcome<InverseResult>) -> Value {
    match outcome {
        Outcome::Exists(r) => json!({
            "schema": SCHEMA_VERSION,
            "kind": kind.name(),
            "exists": true,
            "value": matrix_to_json(&r.value),
            "index": r.index,
            "certificate": certificate_to_json(&r.certificate),
        }),
        Outcome::NotExists(why) => json!({
            "schema": SCHEMA_VERSION,
            "kind": kind.name(),
            "exists": false,
            "value": null,
            "index": null,
            "certificate": null,
            "reason": why,
        }),
    }
}

/// Accept either a bare matrix document or a result document with a `value`.
pub fn candidate_from_json(v: &Value) -> Result<StarMatrix> {
    match v.get("value") {
        Some(Value::Null) => Err(parse_err("result document has no value")),
        Some(inner) if v.get("schema").is_some() => matrix_from_json(inner),
        _ => matrix_from_json(v),
    }
}
