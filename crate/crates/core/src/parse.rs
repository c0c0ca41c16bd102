//! Text formats for command-line arguments and table files.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::json::{value_matrix, value_vec};
use crate::lattice::IntMatrix;
use crate::localarith::{LocalElement, Place};

const MAX_DIGITS: usize = 4096;

pub fn parse_int(s: &str) -> Result<BigInt> {
    let t = s.trim();
    if t.is_empty() || t.len() > MAX_DIGITS {
        return Err(Error::Parse(format!("not an integer: {s:?}")));
    }
    t.parse::<BigInt>().map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

/// `a`, `a/b` or a terminating decimal like `-1.25`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    if let Some((num, den)) = t.split_once('/') {
        let d = parse_int(den)?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(parse_int(num)?, d));
    }
    if let Some((whole, fraction)) = t.split_once('.') {
        if fraction.is_empty() || !fraction.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("not a decimal: {s:?}")));
        }
        let negative = whole.trim_start().starts_with('-');
        let w = if whole.trim().is_empty() || whole.trim() == "-" { BigInt::zero() } else { parse_int(whole)? };
        let scale = BigInt::from(10).pow(fraction.len() as u32);
        let f = parse_int(fraction)?;
        let mag = BigRational::new(f, scale);
        let w = BigRational::from_integer(w);
        return Ok(if negative { w - mag } else { w + mag });
    }
    Ok(BigRational::from_integer(parse_int(t)?))
}

fn strip_brackets(s: &str) -> &str {
    let t = s.trim();
    t.strip_prefix('[').and_then(|x| x.strip_suffix(']')).unwrap_or(t)
}

/// `1,2,3`, `[1, 2, 3]` or whitespace separated.
pub fn parse_vector(s: &str) -> Result<Vec<BigInt>> {
    let body = strip_brackets(s);
    if body.trim().is_empty() {
        return Ok(vec![]);
    }
    body.split(|c: char| c == ',' || c.is_whitespace()).filter(|x| !x.is_empty()).map(parse_int).collect()
}

pub fn parse_rational_vector(s: &str) -> Result<Vec<BigRational>> {
    let body = strip_brackets(s);
    if body.trim().is_empty() {
        return Ok(vec![]);
    }
    body.split(|c: char| c == ',' || c.is_whitespace()).filter(|x| !x.is_empty()).map(parse_rational).collect()
}

/// Rows separated by `;` (`1,2;3,4`) or a JSON array of arrays.
pub fn parse_matrix(s: &str) -> Result<IntMatrix> {
    let t = s.trim();
    if t.starts_with("[[") || t.starts_with("[ [") || t == "[]" {
        let v: Value = serde_json::from_str(t).map_err(|e| Error::Parse(format!("matrix JSON: {e}")))?;
        return value_matrix(&v);
    }
    let rows: Vec<Vec<BigInt>> = t.split(';').map(parse_vector).collect::<Result<_>>()?;
    if rows.iter().any(|r| r.is_empty()) {
        return Err(Error::Parse(format!("empty matrix row in {s:?}")));
    }
    IntMatrix::from_rows(&rows)
}

/// JSON vector, for symmetry with `parse_matrix`.
pub fn parse_vector_json(s: &str) -> Result<Vec<BigInt>> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(format!("vector JSON: {e}")))?;
    value_vec(&v)
}

pub fn parse_place(s: &str) -> Result<Place> {
    Place::parse(s)
}

/// A nonzero rational at a place, e.g. `-3/7`.
pub fn parse_local_element(place: Place, s: &str) -> Result<LocalElement> {
    let q = parse_rational(s)?;
    if q.numer().bits() > 4096 || q.denom().bits() > 4096 {
        return Err(Error::Parse("element too large".into()));
    }
    LocalElement::from_rational(place, &q)
}

/// A table cell: optional `*` marking a nontrivial `tau`, then the label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellText {
    pub tau_nontrivial: bool,
    pub label: String,
}

pub fn parse_cell(s: &str) -> Result<CellText> {
    let (tau, label) = match s.strip_prefix('*') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    if label.is_empty() || label.contains(',') || label.starts_with('*') || label.chars().any(|c| c.is_control()) {
        return Err(Error::Parse(format!("bad cell {s:?}")));
    }
    Ok(CellText { tau_nontrivial: tau, label: label.to_string() })
}

/// Table file: header `n,G_1,...,G_k`, then one row `n,cell_1,...,cell_k` per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableText {
    pub groups: Vec<String>,
    pub rows: Vec<(u64, Vec<CellText>)>,
}

pub fn parse_table_csv(s: &str) -> Result<TableText> {
    let mut lines = s.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty table".into()))?;
    let mut fields = header.split(',');
    if fields.next().map(str::trim) != Some("n") {
        return Err(Error::Parse("table header must start with n".into()));
    }
    let groups: Vec<String> = fields.map(|g| g.trim().to_string()).collect();
    if groups.is_empty() || groups.iter().any(|g| g.is_empty()) {
        return Err(Error::Parse("table header lists no groups".into()));
    }
    let mut rows = Vec::new();
    for line in lines {
        let mut f = line.split(',');
        let n: u64 = f
            .next()
            .and_then(|x| x.trim().parse().ok())
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::Parse(format!("bad degree in row {line:?}")))?;
        let cells: Vec<CellText> = f.map(|c| parse_cell(c.trim())).collect::<Result<_>>()?;
        if cells.len() != groups.len() {
            return Err(Error::Parse(format!("row for n={n} has {} cells, expected {}", cells.len(), groups.len())));
        }
        rows.push((n, cells));
    }
    Ok(TableText { groups, rows })
}
