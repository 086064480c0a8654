//! Browser bindings for `ncurve`.
//!
//! Three operations are exported to JavaScript: curvature sampling, a
//! planar projection of the curve, and the finiteness verdict. Each export is
//! a thin wrapper over a plain function so the logic is testable natively.

use ncurve::analysis::classify;
use ncurve::curvature::sample_range;
use ncurve::curve::curve_point;
use ncurve::{CurveSpec, QuadConfig};
use wasm_bindgen::prelude::*;

/// Dimension cap for the page; the sliders never go above it.
pub const WEB_MAX_N: usize = 32;

/// Number of values per sample in [`curvature_series`] output.
pub const SERIES_STRIDE: usize = 4;

fn spec(n: usize) -> Result<CurveSpec, String> {
    CurveSpec::with_cap(n, WEB_MAX_N).map_err(|e| e.to_string())
}

/// Flattened `[t, speed, k1, K1, t, speed, …]` for `steps + 1` samples.
pub fn curvature_series(n: usize, t0: f64, t1: f64, steps: usize) -> Result<Vec<f64>, String> {
    let s = spec(n)?;
    let samples = sample_range(&s, t0, t1, steps).map_err(|e| e.to_string())?;
    Ok(samples
        .iter()
        .flat_map(|p| [p.t, p.speed, p.k1, p.integrand])
        .collect())
}

/// Flattened `[u, v, u, v, …]`: coordinates `i` and `j` of the curve.
///
/// With `normalize`, each point is divided by its norm first, which keeps
/// the exponential growth from swamping the picture.
pub fn projection(
    n: usize,
    i: usize,
    j: usize,
    t0: f64,
    t1: f64,
    steps: usize,
    normalize: bool,
) -> Result<Vec<f64>, String> {
    let s = spec(n)?;
    if i >= n || j >= n {
        return Err(format!("coordinate index out of range for n={n}: ({i}, {j})"));
    }
    if !(t0 < t1) || steps < 2 {
        return Err(format!("need t0 < t1 and steps >= 2, got [{t0}, {t1}] with {steps}"));
    }
    let h = (t1 - t0) / steps as f64;
    let mut out = Vec::with_capacity(2 * (steps + 1));
    for k in 0..=steps {
        let t = if k == steps { t1 } else { t0 + h * k as f64 };
        let x = curve_point(&s, t).map_err(|e| e.to_string())?;
        let scale = if normalize { x.norm() } else { 1.0 };
        out.push(x[i] / scale);
        out.push(x[j] / scale);
    }
    Ok(out)
}

/// Human-readable finiteness certificate for `C_n`.
pub fn verdict_text(n: usize) -> Result<String, String> {
    let v = classify(&spec(n)?, &QuadConfig::default()).map_err(|e| e.to_string())?;
    Ok(v.to_text())
}

#[wasm_bindgen(js_name = curvatureSeries)]
pub fn curvature_series_js(n: usize, t0: f64, t1: f64, steps: usize) -> Result<Vec<f64>, JsError> {
    curvature_series(n, t0, t1, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = projection)]
pub fn projection_js(
    n: usize,
    i: usize,
    j: usize,
    t0: f64,
    t1: f64,
    steps: usize,
    normalize: bool,
) -> Result<Vec<f64>, JsError> {
    projection(n, i, j, t0, t1, steps, normalize).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = verdict)]
pub fn verdict_js(n: usize) -> Result<String, JsError> {
    verdict_text(n).map_err(|e| JsError::new(&e))
}
