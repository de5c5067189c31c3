//! Shared helpers for the integration suites. Everything here is
//! deliberately independent of the library's own quadrature and recursion
//! paths: quadrature tables are hardcoded from published values, and the
//! regular basis is rebuilt from associated Legendre functions.

#![allow(dead_code)]

use num_complex::Complex64;
use q2x::{Point3, SimplexElement, SimplexKind};
use rand::Rng;

/// 12-point Gauss-Legendre rule on [-1, 1], abscissa and weight.
pub const GL12: [(f64, f64); 12] = [
    (-0.9815606342467192, 0.0471753363865118),
    (-0.9041172563704749, 0.1069393259953184),
    (-0.7699026741943047, 0.1600783285433462),
    (-0.5873179542866175, 0.2031674267230659),
    (-0.3678314989981802, 0.2334925365383548),
    (-0.1252334085114689, 0.2491470458134028),
    (0.1252334085114689, 0.2491470458134028),
    (0.3678314989981802, 0.2334925365383548),
    (0.5873179542866175, 0.2031674267230659),
    (0.7699026741943047, 0.1600783285433462),
    (0.9041172563704749, 0.1069393259953184),
    (0.9815606342467192, 0.0471753363865118),
];

/// 7-point Gauss-Legendre rule on [-1, 1], used as the error estimator.
pub const GL7: [(f64, f64); 7] = [
    (-0.9491079123427585, 0.1294849661688697),
    (-0.7415311855993945, 0.2797053914892766),
    (-0.4058451513773972, 0.3818300505051189),
    (0.0, 0.4179591836734694),
    (0.4058451513773972, 0.3818300505051189),
    (0.7415311855993945, 0.2797053914892766),
    (0.9491079123427585, 0.1294849661688697),
];

/// Rule mapped to [0, 1].
pub fn unit_rule(rule: &[(f64, f64)]) -> Vec<(f64, f64)> {
    rule.iter().map(|&(x, w)| (0.5 * (1.0 + x), 0.5 * w)).collect()
}

fn fixed_rule_integral<F: Fn(Point3) -> f64>(verts: &[Point3], rule: &[(f64, f64)], f: &F) -> f64 {
    let r01 = unit_rule(rule);
    match verts.len() {
        2 => {
            let j = (verts[1] - verts[0]).norm();
            let sum: f64 = r01
                .iter()
                .map(|&(u, w)| w * f(verts[0] + (verts[1] - verts[0]) * u))
                .sum();
            j * sum
        }
        3 => {
            let eu = verts[1] - verts[0];
            let ev = verts[2] - verts[0];
            let j = eu.cross(ev).norm();
            let mut sum = 0.0;
            for &(u, wu) in &r01 {
                for &(t, wt) in &r01 {
                    let v = (1.0 - u) * t;
                    sum += wu * wt * (1.0 - u) * f(verts[0] + eu * u + ev * v);
                }
            }
            j * sum
        }
        4 => {
            let eu = verts[1] - verts[0];
            let ev = verts[2] - verts[0];
            let ew = verts[3] - verts[0];
            let j = eu.cross(ev).dot(ew).abs();
            let mut sum = 0.0;
            for &(u, wu) in &r01 {
                for &(t, wt) in &r01 {
                    let v = (1.0 - u) * t;
                    for &(s, ws) in &r01 {
                        let w = (1.0 - u - v) * s;
                        sum += wu * wt * ws
                            * (1.0 - u)
                            * (1.0 - u - v)
                            * f(verts[0] + eu * u + ev * v + ew * w);
                    }
                }
            }
            j * sum
        }
        _ => unreachable!("simplex vertex count"),
    }
}

fn longest_edge(verts: &[Point3]) -> (usize, usize) {
    let mut best = (0, 1);
    let mut len = -1.0;
    for i in 0..verts.len() {
        for j in (i + 1)..verts.len() {
            let d = (verts[i] - verts[j]).norm();
            if d > len {
                len = d;
                best = (i, j);
            }
        }
    }
    best
}

fn refine<F: Fn(Point3) -> f64>(verts: &[Point3], f: &F, tol: f64, depth: usize) -> f64 {
    let hi = fixed_rule_integral(verts, &GL12, f);
    let lo = fixed_rule_integral(verts, &GL7, f);
    if (hi - lo).abs() <= tol || depth >= 22 {
        return hi;
    }
    let (i, j) = longest_edge(verts);
    let mid = (verts[i] + verts[j]) * 0.5;
    let mut a = verts.to_vec();
    let mut b = verts.to_vec();
    a[i] = mid;
    b[j] = mid;
    refine(&a, f, 0.5 * tol, depth + 1) + refine(&b, f, 0.5 * tol, depth + 1)
}

/// Adaptive integral of f over the simplex spanned by verts (physical
/// measure), by longest-edge bisection to the absolute tolerance.
pub fn adaptive_integral<F: Fn(Point3) -> f64>(verts: &[Point3], f: &F, abs_tol: f64) -> f64 {
    refine(verts, f, abs_tol, 0)
}

/// Signed solid angle of triangle abc viewed from r, positive when the
/// vertices wind counterclockwise as seen from r.
pub fn solid_angle_from(r: Point3, a: Point3, b: Point3, c: Point3) -> f64 {
    let (a, b, c) = (a - r, b - r, c - r);
    let num = a.dot(b.cross(c));
    let den = a.norm() * b.norm() * c.norm()
        + a.dot(b) * c.norm()
        + a.dot(c) * b.norm()
        + b.dot(c) * a.norm();
    2.0 * num.atan2(den)
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|j| j as f64).product()
}

fn i_pow(k: i64) -> Complex64 {
    match k.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Associated Legendre P_n^m with the Condon-Shortley phase, by the stable
/// diagonal-then-upward recurrences.
fn assoc_legendre(n: usize, m: usize, x: f64) -> f64 {
    assert!(m <= n);
    let somx2 = ((1.0 - x) * (1.0 + x)).max(0.0).sqrt();
    let mut pmm = 1.0;
    for k in 1..=m {
        pmm *= -((2 * k - 1) as f64) * somx2;
    }
    if n == m {
        return pmm;
    }
    let mut pm1 = pmm;
    let mut p = x * (2 * m + 1) as f64 * pmm;
    for k in (m + 2)..=n {
        let next = (x * (2 * k - 1) as f64 * p - (k + m - 1) as f64 * pm1) / (k - m) as f64;
        pm1 = p;
        p = next;
    }
    p
}

/// Regular scaled solid harmonic from its spherical definition, independent
/// of the library's recurrences. Valid for m >= 0.
pub fn naive_regular(point: Point3, n: usize, m: usize) -> Complex64 {
    let r = point.norm();
    if r == 0.0 {
        return if n == 0 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
    }
    let ct = (point.z / r).clamp(-1.0, 1.0);
    let phi = point.y.atan2(point.x);
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let radial = sign * r.powi(n as i32) / factorial(n + m);
    let angular = assoc_legendre(n, m, ct) * Complex64::new(0.0, m as f64 * phi).exp();
    i_pow(2 * m as i64) * radial * angular
}

/// Uniform random unit vector.
pub fn rand_unit<R: Rng>(rng: &mut R) -> Point3 {
    loop {
        let v = Point3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 0.1 && n <= 1.0 {
            return v * (1.0 / n);
        }
    }
}

/// Random well-shaped element of the kind: vertices inside a ball of the
/// given radius around base, rejected until comfortably nondegenerate.
pub fn random_element<R: Rng>(
    rng: &mut R,
    kind: SimplexKind,
    base: Point3,
    radius: f64,
) -> SimplexElement {
    loop {
        let mut v = [Point3::ZERO; 4];
        for vk in v.iter_mut().take(kind.vertex_count()) {
            *vk = base + rand_unit(rng) * (radius * rng.gen_range(0.3..1.0));
        }
        let density = rng.gen_range(0.25..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let e = match kind {
            SimplexKind::Segment => SimplexElement::segment(v[0], v[1], density),
            SimplexKind::Triangle => SimplexElement::triangle(v[0], v[1], v[2], density),
            SimplexKind::Tetrahedron => {
                SimplexElement::tetrahedron(v[0], v[1], v[2], v[3], density)
            }
        };
        let dim = kind.dim() as i32;
        match e.jacobian() {
            Ok(j) if j >= 0.05 * e.diameter().powi(dim) => return e,
            _ => continue,
        }
    }
}
