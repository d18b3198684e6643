//! WebAssembly bindings for the browser demo. Every export returns a flat
//! `Float64Array`; the layout is given in each doc comment.

use darboux_core::{build_system, scan_singularities, Complex64, Grid, Potential, SusySystem};
use wasm_bindgen::prelude::*;

/// Coarser than the native default; enough for plots.
const X_MAX: f64 = 20.0;
const POINTS: usize = 2001;

fn system(d: f64, b: f64, depth: f64, width: f64) -> Result<SusySystem, JsError> {
    let potential = if depth == 0.0 {
        Potential::zero()
    } else {
        Potential::square_well(depth, width)?
    };
    let grid = Grid::new(X_MAX, POINTS)?;
    Ok(build_system(&potential, Complex64::new(d, b), &grid)?)
}

/// `|(Lf)'(0) + w(0)(Lf)(0)|` on `samples` points of `[k_min, k_max]`, as
/// `[k0, m0, k1, m1, ...]`. Degenerate samples are `NaN`.
#[wasm_bindgen]
pub fn scan_curve(
    d: f64,
    b: f64,
    depth: f64,
    width: f64,
    k_min: f64,
    k_max: f64,
    samples: usize,
) -> Result<Vec<f64>, JsError> {
    let sys = system(d, b, depth, width)?;
    let scan = scan_singularities(&sys, (k_min, k_max), samples)?;
    Ok(scan
        .samples
        .iter()
        .flat_map(|s| [s.k, s.functional.map_or(f64::NAN, |v| v.norm())])
        .collect())
}

/// Fitted minima of the scan as `[k, modulus, is_singularity, ...]`.
#[wasm_bindgen]
pub fn scan_minima(
    d: f64,
    b: f64,
    depth: f64,
    width: f64,
    k_min: f64,
    k_max: f64,
    samples: usize,
) -> Result<Vec<f64>, JsError> {
    let sys = system(d, b, depth, width)?;
    let scan = scan_singularities(&sys, (k_min, k_max), samples)?;
    Ok(scan
        .minima
        .iter()
        .flat_map(|m| [m.k, m.modulus, f64::from(u8::from(m.verdict == darboux_core::Verdict::Singularity))])
        .collect())
}

/// Normalized eigenfunction of the transformed operator as `[x, re, im, ...]`.
#[wasm_bindgen]
pub fn eigenfunction(d: f64, b: f64, depth: f64, width: f64, k: f64) -> Result<Vec<f64>, JsError> {
    let sys = system(d, b, depth, width)?;
    let phi = sys.normalized_phi(k)?.phi;
    Ok(phi
        .grid
        .points()
        .zip(&phi.values)
        .flat_map(|(x, v)| [x, v.re, v.im])
        .collect())
}

/// Transformed potential `V` as `[x, re, im, ...]`.
#[wasm_bindgen]
pub fn transformed_potential(d: f64, b: f64, depth: f64, width: f64) -> Result<Vec<f64>, JsError> {
    let sys = system(d, b, depth, width)?;
    Ok(sys
        .grid()
        .points()
        .zip(&sys.v)
        .flat_map(|(x, v)| [x, v.re, v.im])
        .collect())
}
