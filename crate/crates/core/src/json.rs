//! Deterministic JSON encoding of the library types.
//!
//! Integers travel as decimal strings (arbitrary precision), Laurent
//! polynomials as {"coeffs": [[degree, "c"], ...]} sorted by degree,
//! matrices as {"rows", "cols", "entries": [[...]]}. Emission goes through
//! serde_json's BTreeMap-backed Value, so keys are always sorted.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exact_linalg::{BaseRing, ExactMatrix, Scalar};
use crate::forms::{BlanchfieldForm, Eta, LocalizedForm, SeifertForm};
use crate::invariants::InvariantReport;
use crate::laurent::{LaurentMatrix, LaurentPoly, LocalizedElement};
use crate::seifert::SeifertModule;

fn bad(msg: impl Into<String>) -> Error {
    Error::BadScalar(msg.into())
}

pub fn scalar_to_value(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

pub fn scalar_from_value(ring: BaseRing, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => ring.parse(s),
        Value::Number(n) => ring.parse(&n.to_string()),
        _ => Err(bad(format!("expected scalar, got {v}"))),
    }
}

pub fn matrix_to_value(m: &ExactMatrix) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|i| {
            Value::Array(
                (0..m.cols())
                    .map(|j| scalar_to_value(m.get(i, j)))
                    .collect(),
            )
        })
        .collect();
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": entries,
    })
}

fn shape_of(v: &Value) -> Result<(usize, usize, &Vec<Value>)> {
    let obj = v.as_object().ok_or_else(|| bad("matrix must be an object"))?;
    let rows = obj
        .get("rows")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("matrix needs a numeric 'rows'"))? as usize;
    let cols = obj
        .get("cols")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("matrix needs a numeric 'cols'"))? as usize;
    let entries = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("matrix needs an 'entries' array"))?;
    if entries.len() != rows {
        return Err(bad(format!("expected {rows} rows, got {}", entries.len())));
    }
    Ok((rows, cols, entries))
}

pub fn matrix_from_value(ring: BaseRing, v: &Value) -> Result<ExactMatrix> {
    let (rows, cols, rows_v) = shape_of(v)?;
    let mut entries = Vec::with_capacity(rows * cols);
    for row in rows_v {
        let row = row.as_array().ok_or_else(|| bad("matrix row must be an array"))?;
        if row.len() != cols {
            return Err(bad(format!("expected {cols} columns, got {}", row.len())));
        }
        for e in row {
            entries.push(scalar_from_value(ring, e)?);
        }
    }
    ExactMatrix::new(ring, rows, cols, entries)
}

pub fn laurent_to_value(p: &LaurentPoly) -> Value {
    let coeffs: Vec<Value> = p
        .coeffs()
        .iter()
        .map(|(d, c)| json!([d, c.to_string()]))
        .collect();
    json!({ "coeffs": coeffs })
}

pub fn laurent_from_value(ring: BaseRing, v: &Value) -> Result<LaurentPoly> {
    let obj = v.as_object().ok_or_else(|| bad("laurent poly must be an object"))?;
    let coeffs = obj
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("laurent poly needs 'coeffs'"))?;
    let mut p = LaurentPoly::zero(ring);
    for pair in coeffs {
        let pair = pair.as_array().ok_or_else(|| bad("coeff must be [degree, value]"))?;
        if pair.len() != 2 {
            return Err(bad("coeff must be [degree, value]"));
        }
        let d = pair[0]
            .as_i64()
            .ok_or_else(|| bad("degree must be an integer"))?;
        let c = scalar_from_value(ring, &pair[1])?;
        p.add_term(d, c);
    }
    Ok(p)
}

pub fn laurent_matrix_to_value(m: &LaurentMatrix) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|i| {
            Value::Array(
                (0..m.cols())
                    .map(|j| laurent_to_value(m.get(i, j)))
                    .collect(),
            )
        })
        .collect();
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": entries,
    })
}

pub fn laurent_matrix_from_value(ring: BaseRing, v: &Value) -> Result<LaurentMatrix> {
    let (rows, cols, rows_v) = shape_of(v)?;
    let mut entries = Vec::with_capacity(rows * cols);
    for row in rows_v {
        let row = row.as_array().ok_or_else(|| bad("matrix row must be an array"))?;
        if row.len() != cols {
            return Err(bad(format!("expected {cols} columns, got {}", row.len())));
        }
        for e in row {
            entries.push(laurent_from_value(ring, e)?);
        }
    }
    LaurentMatrix::new(ring, rows, cols, entries)
}

pub fn module_to_value(m: &SeifertModule) -> Value {
    json!({
        "rank": m.rank(),
        "e": matrix_to_value(m.endomorphism()),
    })
}

pub fn module_from_value(ring: BaseRing, v: &Value) -> Result<SeifertModule> {
    let obj = v.as_object().ok_or_else(|| bad("module must be an object"))?;
    let e = obj.get("e").ok_or_else(|| bad("module needs 'e'"))?;
    let e = matrix_from_value(ring, e)?;
    if let Some(rank) = obj.get("rank").and_then(Value::as_u64) {
        if rank as usize != e.rows() {
            return Err(bad("rank does not match the endomorphism size"));
        }
    }
    SeifertModule::new(ring, e)
}

pub fn seifert_form_to_value(f: &SeifertForm) -> Value {
    json!({
        "eta": f.eta().sign(),
        "theta": matrix_to_value(f.pairing()),
        "e": matrix_to_value(f.module().endomorphism()),
    })
}

/// Forms parse from {"eta", "theta", "e"?}; when "e" is omitted the defect
/// must be invertible and e is recovered as (theta - eta theta*)^{-1} theta.
pub fn seifert_form_from_value(ring: BaseRing, v: &Value) -> Result<SeifertForm> {
    let obj = v.as_object().ok_or_else(|| bad("form must be an object"))?;
    let eta = obj
        .get("eta")
        .and_then(Value::as_i64)
        .ok_or_else(|| bad("form needs an integer 'eta'"))?;
    let eta = Eta::from_sign(eta)?;
    let theta = matrix_from_value(
        ring,
        obj.get("theta").ok_or_else(|| bad("form needs 'theta'"))?,
    )?;
    match obj.get("e") {
        Some(e) => {
            let e = matrix_from_value(ring, e)?;
            let module = SeifertModule::new(ring, e)?;
            SeifertForm::new(module, theta, eta)
        }
        None => SeifertForm::from_pairing(ring, theta, eta),
    }
}

pub fn blanchfield_form_to_value(f: &BlanchfieldForm) -> Value {
    json!({
        "eta": f.eta().sign(),
        "e": matrix_to_value(f.module().endomorphism()),
        "g_phi": matrix_to_value(f.pairing_matrix()),
        "k": f.t_exponent(),
    })
}

pub fn blanchfield_form_from_value(ring: BaseRing, v: &Value) -> Result<BlanchfieldForm> {
    let obj = v.as_object().ok_or_else(|| bad("blanchfield form must be an object"))?;
    let eta = Eta::from_sign(
        obj.get("eta")
            .and_then(Value::as_i64)
            .ok_or_else(|| bad("blanchfield form needs 'eta'"))?,
    )?;
    let e = matrix_from_value(ring, obj.get("e").ok_or_else(|| bad("needs 'e'"))?)?;
    let g_phi = matrix_from_value(ring, obj.get("g_phi").ok_or_else(|| bad("needs 'g_phi'"))?)?;
    let k = obj
        .get("k")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("needs a non-negative integer 'k'"))? as u32;
    let module = SeifertModule::new(ring, e)?;
    BlanchfieldForm::new(module, g_phi, k, eta)
}

pub fn presentation_to_value(d: &LaurentMatrix) -> Value {
    json!({ "d": laurent_matrix_to_value(d) })
}

pub fn presentation_from_value(ring: BaseRing, v: &Value) -> Result<LaurentMatrix> {
    let obj = v.as_object().ok_or_else(|| bad("presentation must be an object"))?;
    laurent_matrix_from_value(ring, obj.get("d").ok_or_else(|| bad("presentation needs 'd'"))?)
}

pub fn localized_to_value(x: &LocalizedElement) -> Value {
    json!({
        "num": laurent_to_value(x.numerator()),
        "a": x.z_exponent(),
        "b": x.one_minus_z_exponent(),
    })
}

pub fn localized_form_to_value(f: &LocalizedForm) -> Value {
    let entries: Vec<Value> = (0..f.rank())
        .map(|i| {
            Value::Array(
                (0..f.rank())
                    .map(|j| localized_to_value(f.entry(i, j)))
                    .collect(),
            )
        })
        .collect();
    json!({
        "eta": f.eta().sign(),
        "rank": f.rank(),
        "entries": entries,
        "det_defect": laurent_to_value(f.det_defect()),
    })
}

pub fn report_to_value(r: &InvariantReport) -> Value {
    let mut obj = Map::new();
    obj.insert("alexander".into(), laurent_to_value(&r.alexander));
    obj.insert(
        "signature".into(),
        match r.signature {
            Some(s) => json!(s),
            None => Value::Null,
        },
    );
    obj.insert("determinant".into(), json!(r.determinant.to_string()));
    obj.insert("rank".into(), json!(r.rank));
    obj.insert("elapsed_micros".into(), json!(r.elapsed_micros as u64));
    Value::Object(obj)
}

/// Deterministic rendering: serde_json's map is BTreeMap-backed, so keys
/// come out sorted; degree lists are emitted in ascending order.
pub fn to_string_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("value serialization cannot fail")
}
