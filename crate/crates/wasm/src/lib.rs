//! Browser bindings. Each export returns a JSON string; errors come back as
//! a thrown string.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use sturmion::harness::{run_all, Status};
use sturmion::spectral::{dual_weights, primal_weights};
use sturmion::{build_chain, count_roots, sturmian_pair, GridKind, GridSpec, Polynomial, Scalar, DEFAULT_PRECISION};

fn text(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_canonical_string).collect()
}

fn floats(v: &[Scalar]) -> Vec<f64> {
    v.iter().map(Scalar::to_f64).collect()
}

pub fn chain_value(grid: &str, n: usize) -> Result<Value, String> {
    let kind: GridKind = grid.parse().map_err(|e: sturmion::Error| e.to_string())?;
    let run = || -> sturmion::Result<Value> {
        let spec = GridSpec::new(kind, n)?;
        let (top, next) = sturmian_pair(&spec.characteristic_polynomial()?)?;
        let chain = build_chain(&top, &next)?;
        let nodes = spec.nodes(DEFAULT_PRECISION)?;
        let w = primal_weights(&chain, &nodes)?;
        let wd = dual_weights(chain.top(), chain.poly(n), &nodes)?;
        Ok(json!({
            "b": text(chain.b()),
            "u": text(chain.u()),
            "nodes": floats(&nodes),
            "primal": floats(w.weights()),
            "dual": floats(wd.weights()),
            "primal_exact": text(w.weights()),
        }))
    };
    run().map_err(|e| e.to_string())
}

pub fn count_value(poly: &str, lo: &str, hi: &str) -> Result<usize, String> {
    let p: Polynomial = poly.parse().map_err(|e: sturmion::Error| e.to_string())?;
    let lo: Scalar = lo.parse().map_err(|e: sturmion::Error| e.to_string())?;
    let hi: Scalar = hi.parse().map_err(|e: sturmion::Error| e.to_string())?;
    count_roots(&p, &lo, &hi).map_err(|e| e.to_string())
}

pub fn verify_value(nmax: usize, q: &str) -> Result<Value, String> {
    let q: Scalar = q.parse().map_err(|e: sturmion::Error| e.to_string())?;
    let rows: Vec<Value> = run_all(nmax, &[q], DEFAULT_PRECISION)
        .iter()
        .map(|r| {
            let status = match &r.status {
                Status::ExactMatch => "exact",
                Status::WithinTolerance(_) => "tolerance",
                Status::Mismatch(_) => "mismatch",
                Status::Skipped(_) => "skipped",
                Status::KnownDiscrepancy(_) => "known",
            };
            json!({ "name": r.name, "n": r.n, "status": status })
        })
        .collect();
    Ok(json!(rows))
}

#[wasm_bindgen]
pub fn chain(grid: &str, n: usize) -> Result<String, JsValue> {
    chain_value(grid, n).map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn count(poly: &str, lo: &str, hi: &str) -> Result<usize, JsValue> {
    count_value(poly, lo, hi).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn verify(nmax: usize, q: &str) -> Result<String, JsValue> {
    verify_value(nmax, q).map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_linear() {
        let v = chain_value("linear", 2).unwrap();
        assert_eq!(v["u"], json!(["1/3", "2/3"]));
        assert_eq!(v["primal_exact"], json!(["1/6", "2/3", "1/6"]));
        assert_eq!(v["dual"], json!([1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]));
    }

    #[test]
    fn count_and_errors() {
        assert_eq!(count_value("x^3-3x^2+2x", "1/2", "5/2"), Ok(2));
        assert!(count_value("x^2+1", "0", "1").is_err());
        assert!(chain_value("nope", 2).is_err());
    }

    #[test]
    fn verify_rows() {
        let v = verify_value(1, "1/2").unwrap();
        assert_eq!(v.as_array().unwrap().len(), 7);
    }
}
