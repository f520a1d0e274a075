//! Machine-readable artifact emission. Documents are JSON with sorted keys
//! and sorted term lists, so two runs with the same configuration produce
//! byte-identical output.

use serde_json::{Map, Value};

use rlift::liftengine::LiftStep;
use rlift::{AxiomReport, Element, Operator, Rat};

fn coeff_string(c: &Rat) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// An element as a list of `{exponents, coeff}` records, sorted by
/// exponent vector.
pub fn element_to_json(f: &Element) -> Value {
    let mut records = Vec::with_capacity(f.len());
    for (key, c) in f.terms() {
        let mut rec = Map::new();
        rec.insert(
            "exponents".into(),
            Value::Array(key.iter().map(|&e| Value::from(e as u64)).collect()),
        );
        rec.insert("coeff".into(), Value::from(coeff_string(c)));
        records.push(Value::Object(rec));
    }
    Value::Array(records)
}

/// An operator as a list of columns `{source, image}`, sorted by source
/// monomial; identity columns are omitted.
pub fn operator_to_json(op: &Operator, basis: &[Vec<u16>]) -> Value {
    let mut cols = Vec::new();
    for key in basis {
        let img = op.col(key);
        let mut is_identity = img.len() == 1;
        if is_identity {
            let (k, c) = img.terms().next().unwrap();
            is_identity = k == key && c == &Rat::from_integer(1.into());
        }
        if is_identity {
            continue;
        }
        let mut col = Map::new();
        col.insert(
            "source".into(),
            Value::Array(key.iter().map(|&e| Value::from(e as u64)).collect()),
        );
        col.insert("image".into(), element_to_json(&img));
        cols.push(Value::Object(col));
    }
    Value::Array(cols)
}

pub fn report_to_json(rep: &AxiomReport) -> Value {
    let mut out = Map::new();
    let mut checks = Vec::with_capacity(rep.checks.len());
    for c in &rep.checks {
        let mut entry = Map::new();
        entry.insert("name".into(), Value::from(c.name.clone()));
        entry.insert("residual_terms".into(), Value::from(c.residual_terms as u64));
        entry.insert("pass".into(), Value::from(c.pass));
        checks.push(Value::Object(entry));
    }
    out.insert("checks".into(), Value::Array(checks));
    out.insert("pass".into(), Value::from(rep.pass()));
    Value::Object(out)
}

pub fn audit_to_json(trail: &[LiftStep<Rat>]) -> Value {
    let mut steps = Vec::with_capacity(trail.len());
    for step in trail {
        let mut entry = Map::new();
        entry.insert("degree".into(), Value::from(step.n as u64));
        entry.insert("alpha".into(), element_to_json(&step.alpha));
        entry.insert("beta".into(), element_to_json(&step.beta));
        entry.insert("sigma".into(), element_to_json(&step.sigma));
        entry.insert(
            "cocycle_residual_terms".into(),
            Value::Array(
                step.cocycle_residuals
                    .iter()
                    .map(|&c| Value::from(c as u64))
                    .collect(),
            ),
        );
        steps.push(Value::Object(entry));
    }
    Value::Array(steps)
}
