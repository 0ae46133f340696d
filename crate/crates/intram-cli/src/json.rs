//! JSON codecs for the wire formats: big integers as decimal strings
//! (hexadecimal accepted on input with a `0x` prefix), polynomials as
//! coefficient arrays indexed by exponent, multivariate polynomials as
//! `{exponents, coeff}` term lists, matrices as arrays of arrays, tallies
//! as flat counter objects, rationals as `num/den` strings.

use intram::linalg::IntMat;
use intram::numtheory::{Congruence, Rational};
use intram::polyeval::{MultiPoly, Poly};
use intram::{BigInt, BigNat, OpTally};
use serde_json::{json, Map, Value};

pub fn parse_error(what: &str, detail: impl std::fmt::Display) -> String {
    format!("invalid {what}: {detail}")
}

pub fn bigint_from_value(v: &Value) -> Result<BigInt, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| parse_error("integer", "number out of exact range; quote it")),
        Value::String(s) => s.parse().map_err(|e| parse_error("integer", e)),
        other => Err(parse_error("integer", format!("unexpected {other}"))),
    }
}

pub fn bignat_from_value(v: &Value) -> Result<BigNat, String> {
    let int = bigint_from_value(v)?;
    int.to_nat().map_err(|e| parse_error("natural number", e))
}

pub fn bigint_from_str(s: &str) -> Result<BigInt, String> {
    s.parse().map_err(|e| parse_error("integer", e))
}

pub fn bignat_from_str(s: &str) -> Result<BigNat, String> {
    s.parse().map_err(|e| parse_error("natural number", e))
}

pub fn rational_from_str(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|e| parse_error("rational (num/den)", e))
}

pub fn bigint_to_value(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

pub fn bignat_to_value(v: &BigNat) -> Value {
    Value::String(v.to_string())
}

pub fn poly_from_json(s: &str) -> Result<Poly, String> {
    let parsed: Value = serde_json::from_str(s).map_err(|e| parse_error("polynomial", e))?;
    let arr = parsed
        .as_array()
        .ok_or_else(|| parse_error("polynomial", "expected a JSON array of coefficients"))?;
    let coeffs = arr
        .iter()
        .map(bigint_from_value)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Poly::new(coeffs))
}

pub fn nat_list_from_json(s: &str) -> Result<Vec<BigNat>, String> {
    let parsed: Value = serde_json::from_str(s).map_err(|e| parse_error("list", e))?;
    let arr = parsed
        .as_array()
        .ok_or_else(|| parse_error("list", "expected a JSON array"))?;
    arr.iter().map(bignat_from_value).collect()
}

pub fn int_list_from_json(s: &str) -> Result<Vec<BigInt>, String> {
    let parsed: Value = serde_json::from_str(s).map_err(|e| parse_error("list", e))?;
    let arr = parsed
        .as_array()
        .ok_or_else(|| parse_error("list", "expected a JSON array"))?;
    arr.iter().map(bigint_from_value).collect()
}

/// `[{"exponents": [..], "coeff": ..}, ...]`
pub fn multipoly_from_json(s: &str, vars: usize, degree_bound: u64) -> Result<MultiPoly, String> {
    let parsed: Value = serde_json::from_str(s).map_err(|e| parse_error("multivariate polynomial", e))?;
    let arr = parsed.as_array().ok_or_else(|| {
        parse_error("multivariate polynomial", "expected a JSON array of terms")
    })?;
    let mut terms = Vec::with_capacity(arr.len());
    for term in arr {
        let obj = term
            .as_object()
            .ok_or_else(|| parse_error("term", "expected {exponents, coeff}"))?;
        let exps = obj
            .get("exponents")
            .and_then(Value::as_array)
            .ok_or_else(|| parse_error("term", "missing exponents array"))?
            .iter()
            .map(|e| {
                e.as_u64()
                    .ok_or_else(|| parse_error("exponent", "expected a nonnegative number"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if exps.len() != vars {
            return Err(parse_error(
                "term",
                format!("expected {vars} exponents, got {}", exps.len()),
            ));
        }
        if let Some(&e) = exps.iter().find(|&&e| e >= degree_bound) {
            return Err(parse_error(
                "term",
                format!("exponent {e} at or above the degree bound {degree_bound}"),
            ));
        }
        let coeff = obj
            .get("coeff")
            .ok_or_else(|| parse_error("term", "missing coeff"))?;
        terms.push((exps, bigint_from_value(coeff)?));
    }
    Ok(MultiPoly::new(vars, degree_bound, &terms))
}

pub fn matrix_from_json(s: &str) -> Result<IntMat, String> {
    let parsed: Value = serde_json::from_str(s).map_err(|e| parse_error("matrix", e))?;
    let rows = parsed
        .as_array()
        .ok_or_else(|| parse_error("matrix", "expected a JSON array of rows"))?;
    if rows.is_empty() {
        return Err(parse_error("matrix", "matrix must have at least one row"));
    }
    let mut converted = Vec::with_capacity(rows.len());
    for row in rows {
        let cells = row
            .as_array()
            .ok_or_else(|| parse_error("matrix row", "expected a JSON array"))?;
        converted.push(
            cells
                .iter()
                .map(bigint_from_value)
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    let width = converted[0].len();
    if width == 0 || converted.iter().any(|r| r.len() != width) {
        return Err(parse_error("matrix", "rows must be nonempty and equal length"));
    }
    Ok(IntMat::from_rows(&converted))
}

pub fn matrix_to_value(m: &IntMat) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols())
                        .map(|j| bigint_to_value(m.get(i, j)))
                        .collect(),
                )
            })
            .collect(),
    )
}

/// Accepts `[[residue, modulus], ...]` or
/// `[{"residue": .., "modulus": ..}, ...]`.
pub fn congruences_from_json(s: &str) -> Result<Vec<Congruence>, String> {
    let parsed: Value = serde_json::from_str(s).map_err(|e| parse_error("congruences", e))?;
    let arr = parsed
        .as_array()
        .ok_or_else(|| parse_error("congruences", "expected a JSON array"))?;
    arr.iter()
        .map(|entry| {
            let (residue, modulus) = match entry {
                Value::Array(pair) if pair.len() == 2 => {
                    (bigint_from_value(&pair[0])?, bignat_from_value(&pair[1])?)
                }
                Value::Object(obj) => {
                    let r = obj
                        .get("residue")
                        .ok_or_else(|| parse_error("congruence", "missing residue"))?;
                    let m = obj
                        .get("modulus")
                        .ok_or_else(|| parse_error("congruence", "missing modulus"))?;
                    (bigint_from_value(r)?, bignat_from_value(m)?)
                }
                other => {
                    return Err(parse_error(
                        "congruence",
                        format!("expected a pair or object, got {other}"),
                    ))
                }
            };
            Congruence::new(residue, modulus).map_err(|e| parse_error("congruence", e))
        })
        .collect()
}

pub fn tally_to_value(tally: &OpTally) -> Value {
    let mut obj = Map::new();
    for (op, count) in tally.entries() {
        obj.insert(op.name().to_string(), json!(count));
    }
    Value::Object(obj)
}
