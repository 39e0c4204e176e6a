//! Browser bindings. Each export takes plain arguments and returns a JSON
//! string; errors surface as JavaScript exceptions.
//!
//! The `*_json` functions hold the logic and are callable natively.

use koszul_core::analysis::gk_inverse_test;
use koszul_core::analytic::derivative_roots;
use koszul_core::series::SeriesJson;
use koszul_core::ExactSeries;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Larger inputs freeze the page; the CLI has no such cap.
pub const MAX_ORDER: usize = 400;
pub const MAX_BOUND: usize = 3000;

#[derive(Serialize)]
struct InverseOut {
    polynomial: String,
    first_negative: Option<usize>,
    series: SeriesJson,
}

pub fn invert_series_json(text: &str, order: usize) -> Result<String, String> {
    if order > MAX_ORDER {
        return Err(format!("order is limited to {MAX_ORDER} in the browser"));
    }
    let inv = ExactSeries::parse(text, Some(order))
        .and_then(|s| s.invert())
        .map_err(|e| e.to_string())?;
    serde_json::to_string(&InverseOut {
        polynomial: inv.to_polynomial_string(),
        first_negative: inv.first_negative(),
        series: inv.to_json(),
    })
    .map_err(|e| e.to_string())
}

pub fn first_negative_json(n: usize, bound: usize) -> Result<String, String> {
    if bound > MAX_BOUND {
        return Err(format!("bound is limited to {MAX_BOUND} in the browser"));
    }
    let r = gk_inverse_test(n, bound).map_err(|e| e.to_string())?;
    serde_json::to_string(&r).map_err(|e| e.to_string())
}

pub fn critical_points_json(n: usize) -> Result<String, String> {
    let r = derivative_roots(n).map_err(|e| e.to_string())?;
    serde_json::to_string(&r.to_json()).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn invert_series(text: &str, order: usize) -> Result<String, JsError> {
    invert_series_json(text, order).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn first_negative(n: usize, bound: usize) -> Result<String, JsError> {
    first_negative_json(n, bound).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn critical_points(n: usize) -> Result<String, JsError> {
    critical_points_json(n).map_err(|e| JsError::new(&e))
}
