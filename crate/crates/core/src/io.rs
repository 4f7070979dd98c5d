//! JSON file formats. Every number is a decimal string, rationals as `"p/q"`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use crate::exactlin::Scalar;
use crate::projective::ProjPoint;
use crate::rnc::RationalNormalCurve;
use crate::scheme::{Configuration, Hypersurface};
use crate::{Error, Result};

fn parse_err(field: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::Parse {
        field: field.into(),
        reason: reason.into(),
    }
}

/// Parses `"p"` or `"p/q"` with `q > 0`.
pub fn parse_rational(s: &str) -> std::result::Result<Scalar, String> {
    let s = s.trim();
    let int = |t: &str| t.parse::<BigInt>().map_err(|_| format!("`{t}` is not an integer"));
    match s.split_once('/') {
        None => Ok(Scalar::from_integer(int(s)?)),
        Some((p, q)) => {
            let q = int(q)?;
            if !q.is_positive() {
                return Err(format!("denominator of `{s}` must be positive"));
            }
            Ok(Scalar::new(int(p)?, q))
        }
    }
}

pub fn format_rational(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn format_point(p: &ProjPoint) -> Vec<String> {
    p.coords().iter().map(ToString::to_string).collect()
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| parse_err(what, "expected a JSON object"))
}

fn usize_field(obj: &Map<String, Value>, key: &str) -> Result<usize> {
    let v = obj.get(key).ok_or_else(|| parse_err(key, "missing"))?;
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| parse_err(key, "expected a nonnegative integer"))
}

fn rational_list(v: &Value, field: &str) -> Result<Vec<Scalar>> {
    let arr = v.as_array().ok_or_else(|| parse_err(field, "expected an array"))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| {
            let f = format!("{field}[{i}]");
            let s = x.as_str().ok_or_else(|| parse_err(&f, "expected a rational string"))?;
            parse_rational(s).map_err(|r| parse_err(&f, r))
        })
        .collect()
}

fn point_list(v: Option<&Value>, field: &str, n: usize) -> Result<Vec<ProjPoint>> {
    let arr = v
        .ok_or_else(|| parse_err(field, "missing"))?
        .as_array()
        .ok_or_else(|| parse_err(field, "expected an array of points"))?;
    arr.iter()
        .enumerate()
        .map(|(i, p)| {
            let f = format!("{field}[{i}]");
            let coords = rational_list(p, &f)?;
            if coords.len() != n + 1 {
                return Err(parse_err(&f, format!("expected {} coordinates, got {}", n + 1, coords.len())));
            }
            ProjPoint::new(&coords).map_err(|e| parse_err(&f, e.to_string()))
        })
        .collect()
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err("<document>", e.to_string()))
}

pub fn configuration_from_value(v: &Value) -> Result<Configuration> {
    let obj = object(v, "<configuration>")?;
    let n = usize_field(obj, "n")?;
    if n == 0 {
        return Err(parse_err("n", "ambient dimension must be at least 1"));
    }
    let points = point_list(obj.get("points"), "points", n)?;
    let label = match obj.get("label") {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(parse_err("label", "expected a string")),
    };
    Configuration::new(n, points)
        .map(|c| c.with_label(label))
        .map_err(|e| match e {
            Error::DuplicatePoint(i) => parse_err(format!("points[{i}]"), "repeats an earlier point"),
            other => parse_err("points", other.to_string()),
        })
}

pub fn configuration_from_json(text: &str) -> Result<Configuration> {
    configuration_from_value(&parse_json(text)?)
}

pub fn configuration_to_value(c: &Configuration) -> Value {
    json!({
        "n": c.ambient_dim(),
        "points": c.points().iter().map(format_point).collect::<Vec<_>>(),
        "label": c.label(),
    })
}

pub fn configuration_to_json(c: &Configuration) -> String {
    serde_json::to_string_pretty(&configuration_to_value(c)).expect("serializable")
}

pub fn hypersurface_from_json(text: &str) -> Result<Hypersurface> {
    let v = parse_json(text)?;
    let obj = object(&v, "<hypersurface>")?;
    let n = usize_field(obj, "n")?;
    let k = usize_field(obj, "k")?;
    let coeffs = rational_list(obj.get("coeffs").ok_or_else(|| parse_err("coeffs", "missing"))?, "coeffs")?;
    Hypersurface::new(n, k as u32, coeffs).map_err(|e| parse_err("coeffs", e.to_string()))
}

pub fn hypersurface_to_json(h: &Hypersurface) -> String {
    let v = json!({
        "n": h.ambient_dim(),
        "k": h.degree(),
        "coeffs": h.coeffs().iter().map(format_rational).collect::<Vec<_>>(),
    });
    serde_json::to_string_pretty(&v).expect("serializable")
}

pub fn curve_to_value(c: &RationalNormalCurve) -> Value {
    json!({
        "n": c.ambient_dim(),
        "frame": c.frame().iter().map(format_point).collect::<Vec<_>>(),
        "params": c.params().iter().map(format_rational).collect::<Vec<_>>(),
    })
}

pub fn curve_to_json(c: &RationalNormalCurve) -> String {
    serde_json::to_string_pretty(&curve_to_value(c)).expect("serializable")
}

pub fn curve_from_json(text: &str) -> Result<RationalNormalCurve> {
    let v = parse_json(text)?;
    let obj = object(&v, "<curve>")?;
    let n = usize_field(obj, "n")?;
    let frame = point_list(obj.get("frame"), "frame", n)?;
    if frame.len() != n + 2 {
        return Err(parse_err("frame", format!("expected {} points", n + 2)));
    }
    let params = rational_list(obj.get("params").ok_or_else(|| parse_err("params", "missing"))?, "params")?;
    RationalNormalCurve::from_frame(frame, params).map_err(|e| parse_err("frame", e.to_string()))
}

/// Rounds a rational to the nearest `f64` through its decimal expansion;
/// display only.
pub fn approx_f64(x: &Scalar) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let num: f64 = x.numer().to_string().parse().unwrap_or(f64::NAN);
    let den: f64 = x.denom().to_string().parse().unwrap_or(f64::NAN);
    num / den
}
