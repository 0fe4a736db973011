//! JSON cost specs: `{"family": "...", ...params}`.
//!
//! Numeric parameters may be JSON numbers or decimal strings; strings are
//! parsed with Rust's correctly-rounded float parser and written back in
//! shortest round-trip form.

use serde_json::{json, Map, Value};

use super::{AlphaSeq, CostFunction};
use crate::error::{Error, Result};

fn num(v: &Value, key: &str) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| Error::Parse(format!("{key}: not an f64"))),
        Value::String(s) => {
            s.trim().parse::<f64>().map_err(|e| Error::Parse(format!("{key}: cannot parse {s:?} as a number ({e})")))
        }
        other => Err(Error::Parse(format!("{key}: expected number or decimal string, got {other}"))),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn num_field(obj: &Map<String, Value>, key: &str) -> Result<f64> {
    num(field(obj, key)?, key)
}

fn num_field_or(obj: &Map<String, Value>, key: &str, default: f64) -> Result<f64> {
    obj.get(key).map_or(Ok(default), |v| num(v, key))
}

fn dec(x: f64) -> Value {
    Value::String(format!("{x}"))
}

fn alpha_from_json(v: &Value) -> Result<AlphaSeq> {
    match v {
        Value::String(s) if s == "factorial" => Ok(AlphaSeq::Factorial),
        Value::Array(items) => Ok(AlphaSeq::Explicit(items.iter().map(|x| num(x, "alpha")).collect::<Result<_>>()?)),
        Value::Object(o) if o.contains_key("super_geometric") => {
            Ok(AlphaSeq::SuperGeometric { base: num(&o["super_geometric"], "super_geometric")? })
        }
        other => Err(Error::Parse(format!(
            "alpha: expected \"factorial\", {{\"super_geometric\": base}} or a list, got {other}"
        ))),
    }
}

fn alpha_to_json(a: &AlphaSeq) -> Value {
    match a {
        AlphaSeq::Factorial => json!("factorial"),
        AlphaSeq::SuperGeometric { base } => json!({ "super_geometric": dec(*base) }),
        AlphaSeq::Explicit(v) => Value::Array(v.iter().map(|x| dec(*x)).collect()),
    }
}

/// Parse and validate a cost spec.
pub fn cost_from_json(v: &Value) -> Result<CostFunction> {
    let obj = v.as_object().ok_or_else(|| Error::Parse(format!("cost spec must be an object, got {v}")))?;
    let family = field(obj, "family")?.as_str().ok_or_else(|| Error::Parse("family must be a string".into()))?;
    let cost = match family {
        "affine" => CostFunction::Affine { a: num_field_or(obj, "a", 0.0)?, b: num_field_or(obj, "b", 0.0)? },
        "monomial" => {
            CostFunction::Monomial { coef: num_field_or(obj, "coef", 1.0)?, degree: num_field(obj, "degree")? }
        }
        "polynomial" => {
            let coeffs = field(obj, "coefficients")?
                .as_array()
                .ok_or_else(|| Error::Parse("coefficients must be a list".into()))?;
            CostFunction::Polynomial {
                coefficients: coeffs.iter().map(|c| num(c, "coefficients")).collect::<Result<_>>()?,
            }
        }
        "constant" => CostFunction::Constant { value: num_field(obj, "value")? },
        "step_geometric" => CostFunction::StepGeometric { a: num_field(obj, "a")? },
        "pwl_square" => CostFunction::PwlSquare { a: num_field(obj, "a")? },
        "exp_over_x" => CostFunction::ExpOverX,
        "step_exp" => CostFunction::StepExp { alpha: alpha_from_json(field(obj, "alpha")?)? },
        "shifted" => CostFunction::Shifted {
            base: Box::new(cost_from_json(field(obj, "base")?)?),
            shift: num_field(obj, "shift")?,
        },
        "affine_saturating" => CostFunction::AffineSaturating {
            a: num_field_or(obj, "a", 0.0)?,
            b: num_field(obj, "b")?,
            h: num_field(obj, "h")?,
        },
        other => return Err(Error::Parse(format!("unknown cost family {other:?}"))),
    };
    cost.validate()?;
    Ok(cost)
}

pub fn cost_to_json(c: &CostFunction) -> Value {
    match c {
        CostFunction::Affine { a, b } => json!({"family": "affine", "a": dec(*a), "b": dec(*b)}),
        CostFunction::Monomial { coef, degree } => {
            json!({"family": "monomial", "coef": dec(*coef), "degree": dec(*degree)})
        }
        CostFunction::Polynomial { coefficients } => json!({
            "family": "polynomial",
            "coefficients": coefficients.iter().map(|x| dec(*x)).collect::<Vec<_>>(),
        }),
        CostFunction::Constant { value } => json!({"family": "constant", "value": dec(*value)}),
        CostFunction::StepGeometric { a } => json!({"family": "step_geometric", "a": dec(*a)}),
        CostFunction::PwlSquare { a } => json!({"family": "pwl_square", "a": dec(*a)}),
        CostFunction::ExpOverX => json!({"family": "exp_over_x"}),
        CostFunction::StepExp { alpha } => json!({"family": "step_exp", "alpha": alpha_to_json(alpha)}),
        CostFunction::Shifted { base, shift } => {
            json!({"family": "shifted", "shift": dec(*shift), "base": cost_to_json(base)})
        }
        CostFunction::AffineSaturating { a, b, h } => {
            json!({"family": "affine_saturating", "a": dec(*a), "b": dec(*b), "h": dec(*h)})
        }
    }
}
