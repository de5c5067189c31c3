//! Closed-form reference potentials for the four kernels.
//!
//! These are exact up to round-off wherever the field point keeps a small
//! guard distance from the element, so they serve as ground truth for the
//! truncated expansions. Each form is arranged to avoid cancellation in the
//! regimes the expansions are used in (well separated points), and to stay
//! finite and honest much closer in than that.

use crate::error::{Error, Result};
use crate::expansion::Kernel;
use crate::point::Point3;
use crate::simplex::{SimplexElement, SimplexKind};
use std::f64::consts::PI;

/// Guard radius as a fraction of the element diameter. Points closer than
/// this to the element are rejected rather than evaluated inaccurately.
const NEAR_GUARD: f64 = 1e-12;

/// Free-space kernel 1 / (4 pi |r - source|).
pub fn green(r: Point3, source: Point3) -> Result<f64> {
    let d = (r - source).norm();
    if d == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    Ok(1.0 / (4.0 * PI * d))
}

fn point_segment_distance(r: Point3, a: Point3, b: Point3) -> f64 {
    let ab = b - a;
    let len_sq = ab.norm_sq();
    if len_sq == 0.0 {
        return (r - a).norm();
    }
    let t = ((r - a).dot(ab) / len_sq).clamp(0.0, 1.0);
    (r - (a + ab * t)).norm()
}

/// Single layer over a segment. In the symmetric form the integral is
/// log1p of 2 len / (ra + rb - len), which loses no precision even when the
/// potential itself is tiny compared to 1 / distance.
pub fn segment_potential(element: &SimplexElement, r: Point3) -> Result<f64> {
    if element.kind != SimplexKind::Segment {
        return Err(Error::IncompatibleKind { kernel: Kernel::LinePotential, element: element.kind });
    }
    element.jacobian()?;
    let a = element.vertices()[0];
    let b = element.vertices()[1];
    let len = (b - a).norm();
    let dist = point_segment_distance(r, a, b);
    let guard = NEAR_GUARD * len;
    if dist <= guard {
        return Err(Error::NearSingularEval { distance: dist, guard });
    }
    let ra = (r - a).norm();
    let rb = (r - b).norm();
    Ok(element.density / (4.0 * PI) * (2.0 * len / (ra + rb - len)).ln_1p())
}

/// Signed solid angle of the triangle spanned by a, b, c as seen from the
/// origin; positive when a, b, c wind counterclockwise around the viewer.
fn solid_angle(a: Point3, b: Point3, c: Point3) -> f64 {
    let la = a.norm();
    let lb = b.norm();
    let lc = c.norm();
    let triple = a.dot(b.cross(c));
    let denom = la * lb * lc + a.dot(b) * lc + a.dot(c) * lb + b.dot(c) * la;
    2.0 * triple.atan2(denom)
}

fn point_triangle_distance(r: Point3, v: [Point3; 3]) -> f64 {
    let n = (v[1] - v[0]).cross(v[2] - v[0]);
    let n_len = n.norm();
    if n_len == 0.0 {
        return (0..3)
            .map(|q| point_segment_distance(r, v[q], v[(q + 1) % 3]))
            .fold(f64::INFINITY, f64::min);
    }
    let nh = n * (1.0 / n_len);
    let w = (r - v[0]).dot(nh);
    let mut interior = true;
    let mut best = f64::INFINITY;
    for q in 0..3 {
        let a = v[q];
        let b = v[(q + 1) % 3];
        let ih = (b - a) * (1.0 / (b - a).norm());
        let outward = ih.cross(nh);
        if (a - r).dot(outward) < 0.0 {
            interior = false;
            best = best.min(point_segment_distance(r, a, b));
        }
    }
    if interior {
        w.abs()
    } else {
        best
    }
}

struct RawTriangle {
    /// Integral of 1/R over the triangle, without density or 1/(4 pi).
    single: f64,
    /// Signed solid angle subtended at r, oriented by the vertex order.
    omega: f64,
}

/// Edge-by-edge reduction of the 1/R surface integral plus the solid angle.
/// Every logarithm argument is a sum of nonnegative terms in its branch, so
/// exterior points arbitrarily near the triangle plane stay accurate.
fn raw_triangle(r: Point3, v: [Point3; 3]) -> Result<RawTriangle> {
    let diam = (0..3)
        .map(|q| (v[(q + 1) % 3] - v[q]).norm())
        .fold(0.0f64, f64::max);
    let dist = point_triangle_distance(r, v);
    let guard = NEAR_GUARD * diam;
    if dist <= guard {
        return Err(Error::NearSingularEval { distance: dist, guard });
    }
    let n = (v[1] - v[0]).cross(v[2] - v[0]);
    let nh = n * (1.0 / n.norm());
    let w = (r - v[0]).dot(nh);
    // coplanar exterior points subtend nothing; zeroing here keeps the
    // arctangent quadrant noise of a vanishing numerator out of the result
    let omega = if w.abs() <= 1e-14 * diam {
        0.0
    } else {
        solid_angle(v[0] - r, v[1] - r, v[2] - r)
    };
    let mut edge_sum = 0.0;
    for q in 0..3 {
        let a = v[q];
        let b = v[(q + 1) % 3];
        let len = (b - a).norm();
        let ih = (b - a) * (1.0 / len);
        let t0 = (a - r).dot(ih.cross(nh));
        let sa = (a - r).dot(ih);
        let sb = (b - r).dot(ih);
        let ra = (r - a).norm();
        let rb = (r - b).norm();
        // rb - ra through the difference of squares; the direct subtraction
        // would throw away the edge-scale signal at far field
        let drb = (b - a).dot((a - r) + (b - r)) / (ra + rb);
        let f = if sa >= 0.0 {
            ((len + drb) / (ra + sa)).ln_1p()
        } else if sb <= 0.0 {
            -((drb - len) / (ra - sa)).ln_1p()
        } else {
            // projection falls within the edge span; rho is the distance to
            // the edge line and is kept positive by the guard, and the two
            // arcsinh terms share a sign
            let rho = (t0 * t0 + w * w).sqrt();
            (sb / rho).asinh() - (sa / rho).asinh()
        };
        edge_sum += t0 * f;
    }
    Ok(RawTriangle { single: edge_sum + w * omega, omega })
}

/// Single and double layer over a triangle, in that order. The double layer
/// is oriented by the stored vertex order and jumps by density across the
/// element; coplanar exterior points get exactly zero.
pub fn triangle_layers(element: &SimplexElement, r: Point3) -> Result<(f64, f64)> {
    if element.kind != SimplexKind::Triangle {
        return Err(Error::IncompatibleKind { kernel: Kernel::SingleLayer, element: element.kind });
    }
    element.jacobian()?;
    let v = element.vertices();
    let raw = raw_triangle(r, [v[0], v[1], v[2]])?;
    let scale = element.density / (4.0 * PI);
    Ok((scale * raw.single, -scale * raw.omega))
}

/// Newtonian potential of a tetrahedron via the divergence identity: the
/// volume integral of 1/R equals minus half the sum over faces of the face
/// plane offset times the face's 1/R surface integral.
pub fn tetrahedron_potential(element: &SimplexElement, r: Point3) -> Result<f64> {
    if element.kind != SimplexKind::Tetrahedron {
        return Err(Error::IncompatibleKind {
            kernel: Kernel::VolumePotential,
            element: element.kind,
        });
    }
    element.jacobian()?;
    let v = element.vertices();
    const FACES: [[usize; 4]; 4] = [[1, 2, 3, 0], [0, 2, 3, 1], [0, 1, 3, 2], [0, 1, 2, 3]];
    let mut offsets = [0.0f64; 4];
    let mut corners = [[Point3::ZERO; 3]; 4];
    for (j, face) in FACES.iter().enumerate() {
        let (a, b, c, opp) = (v[face[0]], v[face[1]], v[face[2]], v[face[3]]);
        let n = (b - a).cross(c - a);
        let mut nh = n * (1.0 / n.norm());
        if nh.dot(opp - a) > 0.0 {
            nh = -nh;
        }
        offsets[j] = nh.dot(r - a);
        corners[j] = [a, b, c];
    }
    if offsets.iter().all(|&s| s < 0.0) {
        return Err(Error::InteriorEval);
    }
    let mut acc = 0.0;
    for j in 0..4 {
        acc += offsets[j] * raw_triangle(r, corners[j])?.single;
    }
    Ok(-element.density / (8.0 * PI) * acc)
}

/// Reference value of the kernel's potential at r.
pub fn potential(element: &SimplexElement, kernel: Kernel, r: Point3) -> Result<f64> {
    if !kernel.applies_to(element.kind) {
        return Err(Error::IncompatibleKind { kernel, element: element.kind });
    }
    if !r.is_finite() {
        return Err(Error::Domain("evaluation point must be finite"));
    }
    match kernel {
        Kernel::LinePotential => segment_potential(element, r),
        Kernel::SingleLayer => triangle_layers(element, r).map(|lm| lm.0),
        Kernel::DoubleLayer => triangle_layers(element, r).map(|lm| lm.1),
        Kernel::VolumePotential => tetrahedron_potential(element, r),
    }
}
