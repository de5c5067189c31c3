//! Standard benchmark scene: one element inscribed in a small sphere, the
//! expansion centered at the origin, and field points marching away along a
//! fixed oblique ray. Keeping the geometry canonical makes accuracy sweeps
//! comparable across kernels and truncations.

use crate::error::{Error, Result};
use crate::point::Point3;
use crate::simplex::{SimplexElement, SimplexKind};

/// Distance from the expansion center (the origin) to the element centroid.
pub const CENTROID_DISTANCE: f64 = 0.866025403784438646;

/// Default circumradius of the benchmark elements.
pub const DEFAULT_RADIUS: f64 = 0.1;

/// Where the benchmark element is centered.
pub fn element_center() -> Point3 {
    Point3::new(CENTROID_DISTANCE, 0.0, 0.0)
}

/// Unit direction of the field-point ray, oblique to every element axis.
pub fn eval_direction() -> Point3 {
    Point3::new(0.75f64.sqrt(), 0.0, 0.5)
}

/// Field point at distance d from the expansion center.
pub fn eval_point(d: f64) -> Point3 {
    eval_direction() * d
}

/// Unit-density element of the given kind, vertices on the sphere of radius
/// rt around the benchmark center, centroid exactly there. The triangle is
/// ordered so its normal is +z.
pub fn standard_element(kind: SimplexKind, rt: f64) -> Result<SimplexElement> {
    if !(rt > 0.0) || !rt.is_finite() {
        return Err(Error::Domain("element radius must be positive and finite"));
    }
    let c = element_center();
    let e = match kind {
        SimplexKind::Segment => SimplexElement::segment(
            c - Point3::new(rt, 0.0, 0.0),
            c + Point3::new(rt, 0.0, 0.0),
            1.0,
        ),
        SimplexKind::Triangle => {
            let h = 0.75f64.sqrt();
            SimplexElement::triangle(
                c + Point3::new(rt, 0.0, 0.0),
                c + Point3::new(-0.5 * rt, h * rt, 0.0),
                c + Point3::new(-0.5 * rt, -h * rt, 0.0),
                1.0,
            )
        }
        SimplexKind::Tetrahedron => {
            let a = 1.0 / 3.0;
            let b = 2.0f64.sqrt() / 3.0;
            let s = (2.0f64 / 3.0).sqrt();
            SimplexElement::tetrahedron(
                c + Point3::new(rt, 0.0, 0.0),
                c + Point3::new(-a * rt, -b * rt, s * rt),
                c + Point3::new(-a * rt, -b * rt, -s * rt),
                c + Point3::new(-a * rt, 2.0 * b * rt, 0.0),
                1.0,
            )
        }
    };
    Ok(e)
}

/// n geometrically spaced values from min to max inclusive.
pub fn log_spaced(min: f64, max: f64, n: usize) -> Result<Vec<f64>> {
    if !(min > 0.0) || !(max >= min) || !max.is_finite() {
        return Err(Error::Domain("range must satisfy 0 < min <= max < inf"));
    }
    if n == 0 {
        return Err(Error::Domain("need at least one sample"));
    }
    if n == 1 {
        return Ok(vec![min]);
    }
    let ratio = (max / min).ln();
    let mut out: Vec<f64> = (0..n)
        .map(|k| min * (ratio * k as f64 / (n - 1) as f64).exp())
        .collect();
    out[0] = min;
    out[n - 1] = max;
    Ok(out)
}
