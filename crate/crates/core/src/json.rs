//! JSON schemas shared by the CLI.
//!
//! ```text
//! polynomial  [{"c": int, "e": [int, …]}, …]          terms in canonical order
//! matrix      {"variables": [name…], "dim": n, "entries": [[polynomial…]…]}
//! upoly       {"variables": [name…], "u_coeffs": [polynomial…]}  lowest degree first
//! character   ["1/3", 0.618…]                          exact turns as strings
//! ```

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use crate::charvariety::{Character, Turn};
use crate::error::{Error, Result};
use crate::laurent::{default_variable_names, LaurentPoly};
use crate::lpmat::{LaurentMatrix, UPoly};

/// A matrix or `u`-polynomial read from JSON, with its variable names.
#[derive(Clone, Debug, PartialEq)]
pub enum Object {
    Matrix { variables: Vec<String>, matrix: LaurentMatrix },
    UPoly { variables: Vec<String>, poly: UPoly },
}

impl Object {
    pub fn variables(&self) -> &[String] {
        match self {
            Object::Matrix { variables, .. } | Object::UPoly { variables, .. } => variables,
        }
    }
}

fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

pub fn poly_to_json(p: &LaurentPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(e, c)| {
                let c = Number::from_str(&c.to_string()).expect("integers are valid JSON numbers");
                json!({"c": c, "e": e})
            })
            .collect(),
    )
}

fn parse_integer(v: &Value, what: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string())
            .map_err(|_| input(format!("{what}: expected an integer, got {n}"))),
        _ => Err(input(format!("{what}: expected an integer, got {v}"))),
    }
}

pub fn poly_from_json(v: &Value, num_vars: usize, at: &str) -> Result<LaurentPoly> {
    let terms = v.as_array().ok_or_else(|| input(format!("{at}: expected a list of terms")))?;
    let mut parsed = Vec::with_capacity(terms.len());
    for (k, term) in terms.iter().enumerate() {
        let here = format!("{at} term {k}");
        let obj = term.as_object().ok_or_else(|| input(format!("{here}: expected an object")))?;
        if let Some(key) = obj.keys().find(|k| *k != "c" && *k != "e") {
            return Err(input(format!("{here}: unknown field `{key}`")));
        }
        let c = parse_integer(obj.get("c").ok_or_else(|| input(format!("{here}: missing `c`")))?, &here)?;
        let e = obj
            .get("e")
            .and_then(Value::as_array)
            .ok_or_else(|| input(format!("{here}: missing exponent list `e`")))?;
        if e.len() != num_vars {
            return Err(input(format!(
                "{here}: exponent vector has length {}, expected {num_vars}",
                e.len()
            )));
        }
        let e = e
            .iter()
            .map(|x| x.as_i64().ok_or_else(|| input(format!("{here}: exponent {x} is not a 64-bit integer"))))
            .collect::<Result<Vec<i64>>>()?;
        parsed.push((e, c));
    }
    LaurentPoly::from_terms(num_vars, parsed)
}

fn variables_json(names: &[String]) -> Value {
    json!(names)
}

fn names_or_default(names: &[String], num_vars: usize) -> Vec<String> {
    if names.len() == num_vars {
        names.to_vec()
    } else {
        default_variable_names(num_vars)
    }
}

pub fn matrix_to_json(m: &LaurentMatrix, names: &[String]) -> Value {
    let entries: Vec<Value> =
        m.rows().map(|row| Value::Array(row.iter().map(poly_to_json).collect())).collect();
    json!({
        "variables": variables_json(&names_or_default(names, m.num_vars())),
        "dim": m.dim(),
        "entries": entries,
    })
}

pub fn upoly_to_json(p: &UPoly, names: &[String]) -> Value {
    json!({
        "variables": variables_json(&names_or_default(names, p.num_vars())),
        "u_coeffs": p.coeffs().iter().map(poly_to_json).collect::<Vec<_>>(),
    })
}

fn read_variables(obj: &Map<String, Value>) -> Result<Vec<String>> {
    let vars = obj
        .get("variables")
        .and_then(Value::as_array)
        .ok_or_else(|| input("missing `variables` list"))?;
    vars.iter()
        .map(|v| v.as_str().map(str::to_string).ok_or_else(|| input(format!("variable name {v} is not a string"))))
        .collect()
}

fn check_fields(obj: &Map<String, Value>, allowed: &[&str]) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(input(format!("unknown field `{k}`"))),
        None => Ok(()),
    }
}

pub fn matrix_from_json(v: &Value) -> Result<(LaurentMatrix, Vec<String>)> {
    let obj = v.as_object().ok_or_else(|| input("expected a matrix object"))?;
    check_fields(obj, &["variables", "dim", "entries"])?;
    let variables = read_variables(obj)?;
    let h = variables.len();
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| input("missing or invalid `dim`"))? as usize;
    let rows = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| input("missing `entries`"))?;
    if rows.len() != dim {
        return Err(input(format!("`entries` has {} rows, expected dim = {dim}", rows.len())));
    }
    let mut parsed = Vec::with_capacity(dim);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| input(format!("entries[{i}] is not a list")))?;
        if row.len() != dim {
            return Err(input(format!("entries[{i}] has {} entries, expected {dim}", row.len())));
        }
        let row = row
            .iter()
            .enumerate()
            .map(|(j, p)| poly_from_json(p, h, &format!("entries[{i}][{j}]")))
            .collect::<Result<Vec<_>>>()?;
        parsed.push(row);
    }
    Ok((LaurentMatrix::from_rows(h, parsed)?, variables))
}

pub fn upoly_from_json(v: &Value) -> Result<(UPoly, Vec<String>)> {
    let obj = v.as_object().ok_or_else(|| input("expected a u-polynomial object"))?;
    check_fields(obj, &["variables", "u_coeffs"])?;
    let variables = read_variables(obj)?;
    let h = variables.len();
    let coeffs = obj
        .get("u_coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| input("missing `u_coeffs`"))?
        .iter()
        .enumerate()
        .map(|(k, p)| poly_from_json(p, h, &format!("u_coeffs[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok((UPoly::new(h, coeffs)?, variables))
}

/// Reads either schema, told apart by the `entries` / `u_coeffs` key.
pub fn object_from_json(v: &Value) -> Result<Object> {
    let obj = v.as_object().ok_or_else(|| input("expected a JSON object"))?;
    if obj.contains_key("entries") {
        let (matrix, variables) = matrix_from_json(v)?;
        Ok(Object::Matrix { variables, matrix })
    } else if obj.contains_key("u_coeffs") {
        let (poly, variables) = upoly_from_json(v)?;
        Ok(Object::UPoly { variables, poly })
    } else {
        Err(input("expected a matrix (`entries`) or u-polynomial (`u_coeffs`) object"))
    }
}

pub fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| input(format!("invalid JSON: {e}")))
}

pub fn character_to_json(chi: &Character) -> Value {
    Value::Array(
        chi.turns()
            .iter()
            .map(|t| match t {
                Turn::Rational(_) => Value::String(t.to_string()),
                Turn::Decimal(x) => json!(x),
            })
            .collect(),
    )
}

pub fn character_from_json(v: &Value) -> Result<Character> {
    let items = v.as_array().ok_or_else(|| Error::Character(format!("expected a list, got {v}")))?;
    let turns = items
        .iter()
        .map(|item| match item {
            Value::String(s) => Turn::parse(s),
            Value::Number(n) => Turn::parse(&n.to_string()),
            other => Err(Error::Character(format!("invalid turn {other}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Character::new(turns)
}
