//! Browser bindings for the interactive demo page. Every function returns
//! a flat vector (a Float64Array on the JS side); invalid parameters yield
//! an empty vector so the page can react without trapping. The scene is
//! the library's benchmark geometry: expansion center at the origin,
//! element centroid on the x axis.

use q2x::reference::{element_center, eval_point, log_spaced, standard_element, CENTROID_DISTANCE, DEFAULT_RADIUS};
use q2x::{
    analytic, error_bound, evaluate_expansion, expand, ExpansionRequest, Kernel,
    MultipoleCoefficients, Point3,
};
use wasm_bindgen::prelude::*;

const MAX_ORDER: usize = 48;

fn scene_expansion(kind: &str, p: u32) -> Option<(Kernel, MultipoleCoefficients)> {
    let kernel: Kernel = kind.parse().ok()?;
    let p = p as usize;
    if p == 0 || p > MAX_ORDER {
        return None;
    }
    let element = standard_element(kernel.element_kind(), DEFAULT_RADIUS).ok()?;
    let req = ExpansionRequest::new(kernel, Point3::ZERO, p);
    expand(&element, &req).ok().map(|e| (kernel, e))
}

/// Radius of the sphere the truncated series converges outside of.
#[wasm_bindgen]
pub fn scene_radius() -> f64 {
    CENTROID_DISTANCE + DEFAULT_RADIUS
}

/// Vertices of the benchmark element for the given kernel, projected on
/// the y = 0 drawing plane as [x0, z0, x1, z1, ...].
#[wasm_bindgen]
pub fn element_outline(kind: &str) -> Vec<f64> {
    let Ok(kernel) = kind.parse::<Kernel>() else {
        return Vec::new();
    };
    let Ok(element) = standard_element(kernel.element_kind(), DEFAULT_RADIUS) else {
        return Vec::new();
    };
    element.vertices().iter().flat_map(|v| [v.x, v.z]).collect()
}

/// Relative error and model bound along the benchmark evaluation ray:
/// triples [d, error, bound] for `steps` log-spaced distances.
#[wasm_bindgen]
pub fn error_sweep(kind: &str, p: u32, d_min: f64, d_max: f64, steps: u32) -> Vec<f64> {
    let Some((kernel, expansion)) = scene_expansion(kind, p) else {
        return Vec::new();
    };
    if !(2..=500).contains(&steps) {
        return Vec::new();
    }
    let lo = d_min.max(1.02 * scene_radius());
    let hi = d_max.min(1e4);
    if !(hi > lo) {
        return Vec::new();
    }
    let element = standard_element(kernel.element_kind(), DEFAULT_RADIUS).expect("benchmark element");
    let Ok(distances) = log_spaced(lo, hi, steps as usize) else {
        return Vec::new();
    };
    let mut rows = Vec::with_capacity(3 * distances.len());
    for &d in &distances {
        let r = eval_point(d);
        let err = match (analytic::potential(&element, kernel, r), evaluate_expansion(&expansion, r)) {
            (Ok(want), Ok(got)) => (got - want).abs() / want.abs(),
            _ => f64::NAN,
        };
        let bound = error_bound(kernel, CENTROID_DISTANCE, d, p as usize).unwrap_or(f64::NAN);
        rows.extend_from_slice(&[d, err, bound]);
    }
    rows
}

/// log10 of the relative series error over the y = 0 plane: a row-major
/// n-by-n grid spanning [-extent, extent] in x and z, NaN where the truth
/// is unavailable (points on or inside the element, or at the center).
/// Values are clamped to [-16, 4]; the divergence region inside the
/// convergence sphere saturates at the top of that range.
#[wasm_bindgen]
pub fn error_field(kind: &str, p: u32, n: u32, extent: f64) -> Vec<f64> {
    let Some((kernel, expansion)) = scene_expansion(kind, p) else {
        return Vec::new();
    };
    if !(4..=300).contains(&n) || !extent.is_finite() || extent <= 0.0 {
        return Vec::new();
    }
    let element = standard_element(kernel.element_kind(), DEFAULT_RADIUS).expect("benchmark element");
    let n = n as usize;
    let mut grid = Vec::with_capacity(n * n);
    for iz in 0..n {
        // top row first so the grid maps directly onto canvas pixels
        let z = extent - 2.0 * extent * iz as f64 / (n - 1) as f64;
        for ix in 0..n {
            let x = -extent + 2.0 * extent * ix as f64 / (n - 1) as f64;
            let r = Point3::new(x, 0.0, z);
            let value = match (
                analytic::potential(&element, kernel, r),
                evaluate_expansion(&expansion, r),
            ) {
                (Ok(want), Ok(got)) if want != 0.0 => {
                    ((got - want).abs() / want.abs()).log10().clamp(-16.0, 4.0)
                }
                _ => f64::NAN,
            };
            grid.push(value);
        }
    }
    grid
}

/// Coefficient magnitudes |F_n^m| of the benchmark expansion, row-major
/// over the triangle n = 0..p-1, m = 0..=n.
#[wasm_bindgen]
pub fn coefficient_magnitudes(kind: &str, p: u32) -> Vec<f64> {
    let Some((_, expansion)) = scene_expansion(kind, p) else {
        return Vec::new();
    };
    expansion.coeffs.as_slice().iter().map(|c| c.norm()).collect()
}

/// Center-to-centroid distance of the scene, for drawing.
#[wasm_bindgen]
pub fn centroid_distance() -> f64 {
    element_center().x
}
