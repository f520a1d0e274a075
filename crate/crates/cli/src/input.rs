//! Input document parsing.
//!
//! The input is a JSON document with exact rational entries:
//!
//! ```json
//! {
//!   "dim": 3,
//!   "basis": ["h", "e", "f"],
//!   "bracket": [[1, 2, 2, 2, 1], [1, 3, 3, -2, 1], [2, 3, 1, 1, 1]],
//!   "r": [[2, 3, 1, 1], [1, 1, "1", "4"]]
//! }
//! ```
//!
//! `bracket` entries are `[i, j, k, num, den]` quintuples (1-based indices)
//! meaning the coefficient of `e_k` in `[e_i, e_j]`; `r` entries are
//! `[i, j, num, den]`. Numerators and denominators may be JSON integers or
//! strings of digits (for values beyond the integer range); decimals are
//! rejected. Unspecified entries are zero; giving one orientation of a
//! bracket entry fills the other by antisymmetry; conflicting duplicates
//! are rejected.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::Value;

use rlift::liebialg::zero_tensor3;
use rlift::{Bialgebra, LieBialgebra, Rat};

pub fn parse_input(text: &str) -> Result<Bialgebra, String> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| format!("malformed JSON: {e}"))?;
    let obj = doc.as_object().ok_or("top level must be an object")?;

    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or("missing or invalid \"dim\" (positive integer)")? as usize;
    if dim == 0 || dim > 64 {
        return Err(format!("dim must be in 1..=64, got {dim}"));
    }

    let basis_names = match obj.get("basis") {
        None => None,
        Some(Value::Array(names)) => {
            let mut out = Vec::with_capacity(names.len());
            for v in names {
                out.push(
                    v.as_str()
                        .ok_or("basis names must be strings")?
                        .to_string(),
                );
            }
            if out.len() != dim {
                return Err(format!(
                    "expected {dim} basis names, got {}",
                    out.len()
                ));
            }
            Some(out)
        }
        Some(_) => return Err("\"basis\" must be an array of strings".into()),
    };

    // bracket with antisymmetry completion and conflict detection
    let mut bracket = zero_tensor3::<Rat>(dim);
    let mut seen: BTreeMap<(usize, usize, usize), Rat> = BTreeMap::new();
    for entry in as_entry_list(obj.get("bracket"), "bracket")? {
        let fields = entry
            .as_array()
            .ok_or("bracket entries must be arrays [i, j, k, num, den]")?;
        if fields.len() != 5 {
            return Err(format!(
                "bracket entry must have 5 fields [i, j, k, num, den], got {}",
                fields.len()
            ));
        }
        let i = index_field(&fields[0], dim, "bracket")?;
        let j = index_field(&fields[1], dim, "bracket")?;
        let k = index_field(&fields[2], dim, "bracket")?;
        let q = rational_fields(&fields[3], &fields[4])?;
        if i == j && !q.is_zero() {
            return Err(format!(
                "bracket entry [{}, {}, {}, ...] violates [x, x] = 0",
                i + 1,
                j + 1,
                k + 1
            ));
        }
        for (key, val) in [((i, j, k), q.clone()), ((j, i, k), -q)] {
            if i == j {
                continue;
            }
            match seen.get(&key) {
                Some(prev) if *prev != val => {
                    return Err(format!(
                        "conflicting bracket entries for [e_{}, e_{}] -> e_{}",
                        key.0 + 1,
                        key.1 + 1,
                        key.2 + 1
                    ));
                }
                _ => {
                    seen.insert(key, val);
                }
            }
        }
    }
    for ((i, j, k), q) in seen {
        bracket[i][j][k] = q;
    }

    let mut r = vec![vec![Rat::zero(); dim]; dim];
    let mut seen_r: BTreeMap<(usize, usize), Rat> = BTreeMap::new();
    for entry in as_entry_list(obj.get("r"), "r")? {
        let fields = entry
            .as_array()
            .ok_or("r entries must be arrays [i, j, num, den]")?;
        if fields.len() != 4 {
            return Err(format!(
                "r entry must have 4 fields [i, j, num, den], got {}",
                fields.len()
            ));
        }
        let i = index_field(&fields[0], dim, "r")?;
        let j = index_field(&fields[1], dim, "r")?;
        let q = rational_fields(&fields[2], &fields[3])?;
        match seen_r.get(&(i, j)) {
            Some(prev) if *prev != q => {
                return Err(format!(
                    "conflicting r entries at ({}, {})",
                    i + 1,
                    j + 1
                ));
            }
            _ => {
                seen_r.insert((i, j), q);
            }
        }
    }
    for ((i, j), q) in seen_r {
        r[i][j] = q;
    }

    LieBialgebra::new(bracket, r, basis_names).map_err(|e| e.to_string())
}

fn as_entry_list<'a>(v: Option<&'a Value>, name: &str) -> Result<&'a [Value], String> {
    match v {
        None => Ok(&[]),
        Some(Value::Array(list)) => Ok(list),
        Some(_) => Err(format!("\"{name}\" must be an array of entries")),
    }
}

fn index_field(v: &Value, dim: usize, what: &str) -> Result<usize, String> {
    let idx = v
        .as_u64()
        .ok_or_else(|| format!("{what} index must be an integer"))?;
    if idx < 1 || idx as usize > dim {
        return Err(format!("{what} index {idx} out of range 1..={dim}"));
    }
    Ok(idx as usize - 1)
}

fn bigint_field(v: &Value) -> Result<BigInt, String> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(format!("decimals are forbidden: {n}"))
            }
        }
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| format!("not an integer: {s:?}")),
        other => Err(format!("expected integer or integer string, got {other}")),
    }
}

fn rational_fields(num: &Value, den: &Value) -> Result<Rat, String> {
    let n = bigint_field(num)?;
    let d = bigint_field(den)?;
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(Rat::new(n, d))
}

/// Serialize a bialgebra back into the input schema; `parse_input` of the
/// result is coefficient-identical.
pub fn serialize_bialgebra(l: &Bialgebra) -> Value {
    let mut doc = serde_json::Map::new();
    doc.insert("dim".into(), Value::from(l.dim as u64));
    doc.insert(
        "basis".into(),
        Value::Array(l.basis_names.iter().map(|s| Value::from(s.clone())).collect()),
    );
    let mut bracket = Vec::new();
    for i in 0..l.dim {
        for j in (i + 1)..l.dim {
            for k in 0..l.dim {
                let q = &l.bracket[i][j][k];
                if q.is_zero() {
                    continue;
                }
                bracket.push(Value::Array(vec![
                    Value::from((i + 1) as u64),
                    Value::from((j + 1) as u64),
                    Value::from((k + 1) as u64),
                    Value::from(q.numer().to_string()),
                    Value::from(q.denom().to_string()),
                ]));
            }
        }
    }
    doc.insert("bracket".into(), Value::Array(bracket));
    let mut r = Vec::new();
    for i in 0..l.dim {
        for j in 0..l.dim {
            let q = &l.r[i][j];
            if q.is_zero() {
                continue;
            }
            r.push(Value::Array(vec![
                Value::from((i + 1) as u64),
                Value::from((j + 1) as u64),
                Value::from(q.numer().to_string()),
                Value::from(q.denom().to_string()),
            ]));
        }
    }
    doc.insert("r".into(), Value::Array(r));
    Value::Object(doc)
}
