//! JSON and CSV forms of the crate's data types.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::C;
use crate::polygon::{Edge, Polygon, SideLengths};
use crate::reconstruction::PhaseMap;
use crate::scalar::{format_rational, parse_rational, Rational, Real};

#[derive(Serialize)]
struct IndexEntry<V> {
    i: usize,
    j: usize,
    value: V,
}

/// `{(i, j) -> v}` as `[{"i": i, "j": j, "value": v}, ...]`.
pub fn serialize_index_map<T: Serialize, S: Serializer>(map: &BTreeMap<(usize, usize), T>, ser: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = ser.serialize_seq(Some(map.len()))?;
    for (&(i, j), v) in map {
        seq.serialize_element(&IndexEntry { i, j, value: v })?;
    }
    seq.end()
}

/// As [`serialize_index_map`] with complex values written as `[re, im]`.
pub fn serialize_index_map_complex<T: Real, S: Serializer>(map: &BTreeMap<(usize, usize), C<T>>, ser: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = ser.serialize_seq(Some(map.len()))?;
    for (&(i, j), z) in map {
        seq.serialize_element(&IndexEntry { i, j, value: [z.re, z.im] })?;
    }
    seq.end()
}

/// Counts as JSON integers when they fit in `u64`, decimal strings otherwise.
pub fn serialize_count<S: Serializer>(value: &BigUint, ser: S) -> std::result::Result<S::Ok, S::Error> {
    match value.to_u64() {
        Some(v) => ser.serialize_u64(v),
        None => ser.serialize_str(&value.to_string()),
    }
}

#[derive(Serialize, Deserialize)]
struct EdgeJson<T> {
    r: T,
    w: Vec<[T; 2]>,
}

#[derive(Serialize, Deserialize)]
struct PolygonJson<T> {
    m: usize,
    edges: Vec<EdgeJson<T>>,
}

pub fn polygon_to_json<T: Real>(p: &Polygon<T>) -> Value {
    let doc = PolygonJson {
        m: p.m(),
        edges: p.edges().iter().map(|e| EdgeJson { r: e.r, w: e.w.iter().map(|z| [z.re, z.im]).collect() }).collect(),
    };
    serde_json::to_value(doc).expect("polygon serializes")
}

pub fn polygon_from_json<T: Real>(v: &Value) -> Result<Polygon<T>> {
    let doc: PolygonJson<T> = serde_json::from_value(v.clone()).map_err(|e| Error::InvalidInput(format!("polygon JSON: {e}")))?;
    let edges = doc
        .edges
        .into_iter()
        .map(|e| Edge::new(e.r, e.w.into_iter().map(|[a, b]| C::new(a, b)).collect()))
        .collect::<Result<Vec<_>>>()?;
    Polygon::new(doc.m, edges)
}

/// One side length from a JSON number or a `"p/q"` / decimal string.
pub fn rational_from_json(v: &Value) -> Result<Rational> {
    let text = match v {
        Value::Number(x) => x.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(Error::InvalidInput(format!("expected a number or \"p/q\" string, got {other}"))),
    };
    parse_rational(&text).ok_or_else(|| Error::InvalidInput(format!("cannot parse {text:?} as a rational")))
}

/// Comma separated side lengths, e.g. `"1,1/2,0.25"`.
pub fn parse_r_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',')
        .map(|t| parse_rational(t).ok_or_else(|| Error::InvalidInput(format!("cannot parse side length {:?}", t.trim()))))
        .collect()
}

/// `{"m": m, "r": [...]}`.
pub fn side_lengths_from_json(v: &Value) -> Result<SideLengths<Rational>> {
    let m = v
        .get("m")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::InvalidInput("side lengths JSON needs integer field \"m\"".into()))?;
    let r = v
        .get("r")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidInput("side lengths JSON needs array field \"r\"".into()))?
        .iter()
        .map(rational_from_json)
        .collect::<Result<Vec<_>>>()?;
    SideLengths::new(m as usize, r)
}

/// Exact lengths are written as integers or `"p/q"` strings.
pub fn side_lengths_to_json(s: &SideLengths<Rational>) -> Value {
    let r = s
        .r
        .iter()
        .map(|q| match q.to_i64().filter(|_| q.is_integer()) {
            Some(k) => Value::from(k),
            None => Value::from(format_rational(q)),
        })
        .collect();
    serde_json::json!({ "m": s.m, "r": Value::Array(r) })
}

#[derive(Serialize, Deserialize)]
struct PhaseEntry<T> {
    k: usize,
    j: usize,
    phi: T,
}

pub fn phases_to_json<T: Real>(phases: &PhaseMap<T>) -> Value {
    let entries: Vec<_> = phases.iter().map(|(&(k, j), &phi)| PhaseEntry { k, j, phi }).collect();
    serde_json::to_value(entries).expect("phases serialize")
}

/// `[{"k": k, "j": j, "phi": phi}, ...]`; missing entries mean zero phase.
pub fn phases_from_json<T: Real>(v: &Value) -> Result<PhaseMap<T>> {
    let entries: Vec<PhaseEntry<T>> = serde_json::from_value(v.clone()).map_err(|e| Error::InvalidInput(format!("phases JSON: {e}")))?;
    Ok(entries.into_iter().map(|e| ((e.k, e.j), e.phi)).collect())
}

/// 17 significant digits, enough to round-trip an `f64`.
pub fn format_csv_value(x: f64) -> String {
    format!("{x:.16e}")
}

/// One CSV line per row.
pub fn rows_to_csv(rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().map(|&x| format_csv_value(x)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}
