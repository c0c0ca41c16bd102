//! JSON helpers: integers become numbers when they fit in `i64` and decimal strings otherwise.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;

pub fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

pub fn vec_value(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_value).collect())
}

pub fn matrix_value(m: &IntMatrix) -> Value {
    Value::Array(m.row_vecs().iter().map(|r| vec_value(r)).collect())
}

pub fn rational_value(x: &BigRational) -> Value {
    Value::from(x.to_string())
}

pub fn value_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("not an integer: {n}"))),
        Value::String(s) => s.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("not an integer: {s:?}"))),
        other => Err(Error::Parse(format!("expected integer, found {other}"))),
    }
}

pub fn value_vec(v: &Value) -> Result<Vec<BigInt>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("expected array".into()))?
        .iter()
        .map(value_int)
        .collect()
}

pub fn value_vecs(v: &Value) -> Result<Vec<Vec<BigInt>>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("expected array of arrays".into()))?
        .iter()
        .map(value_vec)
        .collect()
}

pub fn value_matrix(v: &Value) -> Result<IntMatrix> {
    let rows = value_vecs(v)?;
    if rows.is_empty() {
        return Err(Error::Parse("empty matrix".into()));
    }
    IntMatrix::from_rows(&rows).map_err(|e| Error::Parse(e.to_string()))
}
