//! Browser bindings for plane configurations. Points travel in the
//! configuration file format (`{"n": 2, "points": [["1", "x", "y"], ...]}`);
//! results come back as JSON text.

use serde::Serialize;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use rncreg::campaign::{self, GeneratorKind, GeneratorSpec};
use rncreg::io::{self, approx_f64};
use rncreg::{rnc, scheme, secant, Configuration, ProjPoint, Scalar};

/// Curves constructed per search; small so the page stays responsive.
const WEB_RHO_BUDGET: u64 = 20_000;
const SAMPLES: i64 = 200;

fn parse_points(text: &str) -> Result<Configuration, String> {
    let g = io::configuration_from_json(text).map_err(|e| e.to_string())?;
    if g.ambient_dim() != 2 {
        return Err("only plane configurations are supported".into());
    }
    Ok(g)
}

fn affine(p: &ProjPoint) -> Option<[f64; 2]> {
    let c = p.scalars();
    if c[0] == Scalar::from_integer(0.into()) {
        return None;
    }
    Some([approx_f64(&(&c[1] / &c[0])), approx_f64(&(&c[2] / &c[0]))])
}

#[derive(Serialize)]
struct Analysis {
    d: usize,
    reg: usize,
    hilbert: Vec<usize>,
    t: Option<usize>,
    t_witness: Option<Vec<usize>>,
    lgp: bool,
    rho: Value,
}

/// Regularity, Hilbert function, `t` and the best conic of a point list.
pub fn analyze_points(text: &str) -> Result<String, String> {
    let g = parse_points(text)?;
    let prof = scheme::profile(&g);
    let sec = secant::t_invariant(&g).ok();
    let rho = if g.degree() < 5 {
        Value::Null
    } else {
        match rnc::rho(&g, WEB_RHO_BUDGET) {
            Ok(r) => json!({"value": r.rho, "incidence": r.incidence}),
            Err(e) => json!({"error": e.to_string()}),
        }
    };
    let a = Analysis {
        d: g.degree(),
        reg: prof.reg,
        hilbert: prof.values,
        t: sec.as_ref().map(|s| s.t),
        t_witness: sec.and_then(|s| s.witness),
        lgp: secant::is_lgp(&g),
        rho,
    };
    serde_json::to_string(&a).map_err(|e| e.to_string())
}

/// The conic through the first five points, sampled along its
/// parametrization; `null` marks points at infinity.
pub fn conic_polyline(text: &str) -> Result<String, String> {
    let g = parse_points(text)?;
    if g.degree() < 5 {
        return Err("need five points".into());
    }
    let curve = rnc::rnc_through(&g.points()[..5]).map_err(|e| e.to_string())?;
    let mut samples = Vec::new();
    let params = (-SAMPLES..=SAMPLES)
        .map(|k| (SAMPLES, k))
        .chain((-SAMPLES..SAMPLES).rev().map(|k| (k, SAMPLES)).skip(1));
    for (s, t) in params.chain(std::iter::once((SAMPLES, -SAMPLES))) {
        let p = curve
            .point_at(&Scalar::from_integer(s.into()), &Scalar::from_integer(t.into()))
            .map_err(|e| e.to_string())?;
        samples.push(affine(&p));
    }
    let on: Vec<usize> = curve.incidence(&g);
    serde_json::to_string(&json!({"samples": samples, "on_curve": on})).map_err(|e| e.to_string())
}

/// A seeded plane configuration in the file format.
pub fn generate_points(kind: &str, d: usize, outliers: usize, seed: u64) -> Result<String, String> {
    let kind = GeneratorKind::parse(kind).ok_or_else(|| format!("unknown kind `{kind}`"))?;
    let spec = GeneratorSpec::new(kind, 2, d, seed).with_outliers(outliers);
    let g = campaign::generate(&spec).map_err(|e| e.to_string())?;
    Ok(io::configuration_to_json(&g))
}

#[wasm_bindgen]
pub fn analyze(points: &str) -> Result<String, JsValue> {
    analyze_points(points).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn conic(points: &str) -> Result<String, JsValue> {
    conic_polyline(points).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn generate(kind: &str, d: usize, outliers: usize, seed: u64) -> Result<String, JsValue> {
    generate_points(kind, d, outliers, seed).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane(pts: &[[i64; 2]]) -> String {
        let pts: Vec<Vec<String>> = pts.iter().map(|&[x, y]| vec!["1".into(), x.to_string(), y.to_string()]).collect();
        json!({"n": 2, "points": pts}).to_string()
    }

    #[test]
    fn five_points_on_a_parabola() {
        let v: Value = serde_json::from_str(&analyze_points(&plane(&[[0, 0], [1, 1], [2, 4], [3, 9], [-1, 1]])).unwrap()).unwrap();
        assert_eq!(v["reg"], 3);
        assert_eq!(v["rho"]["value"], 5);
        assert_eq!(v["t"], 2);
    }

    #[test]
    fn collinear_triple_gives_t_one() {
        let v: Value = serde_json::from_str(&analyze_points(&plane(&[[0, 0], [1, 1], [2, 2], [0, 1]])).unwrap()).unwrap();
        assert_eq!(v["t"], 1);
        assert_eq!(v["lgp"], false);
    }

    #[test]
    fn polyline_stays_on_the_parabola() {
        let text = plane(&[[0, 0], [1, 1], [2, 4], [3, 9], [-1, 1], [5, 7]]);
        let v: Value = serde_json::from_str(&conic_polyline(&text).unwrap()).unwrap();
        assert_eq!(v["on_curve"], json!([0, 1, 2, 3, 4]));
        let mut finite = 0;
        for s in v["samples"].as_array().unwrap() {
            if let Some(p) = s.as_array() {
                let (x, y) = (p[0].as_f64().unwrap(), p[1].as_f64().unwrap());
                assert!((y - x * x).abs() <= 1e-9 * (1.0 + y.abs()));
                finite += 1;
            }
        }
        assert!(finite > 300);
    }

    #[test]
    fn bad_input_is_an_error() {
        assert!(analyze_points(&plane(&[[0, 0], [0, 0]])).is_err());
        assert!(analyze_points("nope").is_err());
        assert!(analyze_points(r#"{"n": 3, "points": [["1","0","0","0"]]}"#).is_err());
        assert!(conic_polyline(&plane(&[[0, 0]])).is_err());
        assert!(generate_points("spiral", 5, 0, 1).is_err());
    }

    #[test]
    fn generated_points_feed_back_in() {
        let text = generate_points("rnc_plus_outliers", 9, 1, 3).unwrap();
        let v: Value = serde_json::from_str(&analyze_points(&text).unwrap()).unwrap();
        assert_eq!(v["d"], 9);
        assert_eq!(v["rho"]["value"], 8);
    }
}
