//! Recursive multipole expansion of simplex layer potentials.
//!
//! Every moment family obeys the same one-degree ladder; families differ only
//! in the direction split fed to the ladder, the denominator shift coming from
//! the number of integrations, and the lower-dimensional family sourcing the
//! boundary term. Cost is O(p^2) per family, independent of element size.

use crate::error::{Error, Result};
use crate::harmonics::{ComplexSplit, TriangularCoeffs};
use crate::point::Point3;
use crate::simplex::{ParametricFrame, SimplexElement, SimplexKind};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Which integral the expansion represents. Letters follow the usual
/// single-letter naming for the four simplex potentials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kernel {
    /// K: single layer over a segment.
    LinePotential,
    /// L: single layer over a triangle.
    SingleLayer,
    /// M: double layer over a triangle, oriented by vertex order.
    DoubleLayer,
    /// N: Newtonian potential over a tetrahedron.
    VolumePotential,
}

impl Kernel {
    pub const ALL: [Kernel; 4] = [
        Kernel::LinePotential,
        Kernel::SingleLayer,
        Kernel::DoubleLayer,
        Kernel::VolumePotential,
    ];

    pub fn letter(self) -> char {
        match self {
            Kernel::LinePotential => 'K',
            Kernel::SingleLayer => 'L',
            Kernel::DoubleLayer => 'M',
            Kernel::VolumePotential => 'N',
        }
    }

    pub fn element_kind(self) -> SimplexKind {
        match self {
            Kernel::LinePotential => SimplexKind::Segment,
            Kernel::SingleLayer | Kernel::DoubleLayer => SimplexKind::Triangle,
            Kernel::VolumePotential => SimplexKind::Tetrahedron,
        }
    }

    pub fn applies_to(self, kind: SimplexKind) -> bool {
        self.element_kind() == kind
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Kernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "K" | "k" => Ok(Kernel::LinePotential),
            "L" | "l" => Ok(Kernel::SingleLayer),
            "M" | "m" => Ok(Kernel::DoubleLayer),
            "N" | "n" => Ok(Kernel::VolumePotential),
            _ => Err(Error::Domain("kernel must be one of K, L, M, N")),
        }
    }
}

/// What to expand: kernel, expansion center, and coefficient count per order
/// (degrees 0..p-1 are stored).
#[derive(Debug, Clone, Copy)]
pub struct ExpansionRequest {
    pub kernel: Kernel,
    pub center: Point3,
    pub p: usize,
}

impl ExpansionRequest {
    pub fn new(kernel: Kernel, center: Point3, p: usize) -> Self {
        ExpansionRequest { kernel, center, p }
    }
}

/// Expansion coefficients about `center`. Only m >= 0 is stored; negative
/// orders follow from conjugate symmetry. Pair with the singular basis via
/// [`crate::series::evaluate_expansion`].
#[derive(Debug, Clone)]
pub struct MultipoleCoefficients {
    pub kernel: Kernel,
    pub center: Point3,
    pub coeffs: TriangularCoeffs,
}

impl MultipoleCoefficients {
    pub fn truncation(&self) -> usize {
        self.coeffs.truncation()
    }
}

/// One degree of the shared moment ladder.
///
/// dst must hold degree n-1 already; feed, when present, supplies the boundary
/// moments of the next-lower-dimensional family at degree n. shift is the
/// count of parametric integrations in the family (0 for a pure point value).
/// Orders run top down purely for cache friendliness; row n reads only row
/// n-1 of dst.
fn ladder_degree(
    dst: &mut TriangularCoeffs,
    n: usize,
    shift: usize,
    a: ComplexSplit,
    feed: Option<&TriangularCoeffs>,
) {
    debug_assert!(n >= 1);
    let inv = 1.0 / (n + shift) as f64;
    for m in (1..=n).rev() {
        let mut v = -a.xi * dst.at(n - 1, m - 1) + a.eta * dst.at(n - 1, m + 1)
            - a.z * dst.at(n - 1, m);
        if let Some(f) = feed {
            v += f.get(n, m);
        }
        dst.set(n, m, inv * v);
    }
    // m = 0 stays real: the m = -1 and m = +1 neighbor terms are conjugates
    let mut v0 = 2.0 * (a.eta * dst.at(n - 1, 1)).re - a.z * dst.at(n - 1, 0).re;
    if let Some(f) = feed {
        v0 += f.get(n, 0).re;
    }
    dst.set(n, 0, Complex64::new(inv * v0, 0.0));
}

fn ladder_family(
    p: usize,
    seed: f64,
    a: ComplexSplit,
    shift: usize,
    feed: Option<&TriangularCoeffs>,
) -> Result<TriangularCoeffs> {
    let mut c = TriangularCoeffs::zeros(p)?;
    c.set(0, 0, Complex64::new(seed, 0.0));
    for n in 1..p {
        ladder_degree(&mut c, n, shift, a, feed);
    }
    Ok(c)
}

/// Moments of a segment frame: the regular basis at the far vertex and its
/// running integral along the element.
#[derive(Debug, Clone)]
pub struct SegmentMoments {
    /// Regular basis evaluated at r0 + ru.
    pub endpoint: TriangularCoeffs,
    /// Basis integrated over the parameter interval.
    pub line: TriangularCoeffs,
}

pub fn segment_moments(frame: &ParametricFrame, p: usize) -> Result<SegmentMoments> {
    let endpoint = ladder_family(p, 1.0, ComplexSplit::of(frame.r0 + frame.ru), 0, None)?;
    let line = ladder_family(p, 1.0, frame.s0, 1, Some(&endpoint))?;
    Ok(SegmentMoments { endpoint, line })
}

/// Moments of a triangle frame. The slant edge joins r0 + ru to r0 + rv; its
/// moments seed the surface integral the same way the endpoint seeds an edge.
#[derive(Debug, Clone)]
pub struct TriangleMoments {
    pub endpoint: TriangularCoeffs,
    pub slant_edge: TriangularCoeffs,
    pub surface: TriangularCoeffs,
}

pub fn triangle_moments(frame: &ParametricFrame, p: usize) -> Result<TriangleMoments> {
    let endpoint = ladder_family(p, 1.0, ComplexSplit::of(frame.r0 + frame.ru), 0, None)?;
    let slant_edge =
        ladder_family(p, 1.0, ComplexSplit::of(frame.r0 + frame.rv), 1, Some(&endpoint))?;
    let surface = ladder_family(p, 0.5, frame.s0, 2, Some(&slant_edge))?;
    Ok(TriangleMoments { endpoint, slant_edge, surface })
}

/// Moments of a tetrahedron frame. The chain climbs one dimension at a time:
/// far vertex, slant edge, slant face, volume.
#[derive(Debug, Clone)]
pub struct TetrahedronMoments {
    pub endpoint: TriangularCoeffs,
    pub slant_edge: TriangularCoeffs,
    pub slant_face: TriangularCoeffs,
    pub volume: TriangularCoeffs,
}

pub fn tetrahedron_moments(frame: &ParametricFrame, p: usize) -> Result<TetrahedronMoments> {
    let endpoint = ladder_family(p, 1.0, ComplexSplit::of(frame.r0 + frame.ru), 0, None)?;
    let slant_edge =
        ladder_family(p, 1.0, ComplexSplit::of(frame.r0 + frame.rv), 1, Some(&endpoint))?;
    let slant_face =
        ladder_family(p, 0.5, ComplexSplit::of(frame.r0 + frame.rw), 2, Some(&slant_edge))?;
    let volume = ladder_family(p, 1.0 / 6.0, frame.s0, 3, Some(&slant_face))?;
    Ok(TetrahedronMoments { endpoint, slant_edge, slant_face, volume })
}

/// Surface moments of the normal derivative, from the plain surface moments
/// and the unit normal. Degree n draws only on degree n-1, so the double
/// layer loses one stored degree relative to the single layer; its monopole
/// term vanishes identically.
pub(crate) fn double_layer_from_surface(
    surface: &TriangularCoeffs,
    normal: Point3,
    p: usize,
) -> Result<TriangularCoeffs> {
    let mut l = TriangularCoeffs::zeros(p)?;
    let nxy = Complex64::new(normal.x, -normal.y);
    for n in 1..p {
        for m in (1..=n).rev() {
            let v = 0.5 * nxy * surface.at(n - 1, m + 1)
                - 0.5 * nxy.conj() * surface.at(n - 1, m - 1)
                - normal.z * surface.at(n - 1, m);
            l.set(n, m, v);
        }
        let v0 = (nxy * surface.at(n - 1, 1)).re - normal.z * surface.at(n - 1, 0).re;
        l.set(n, 0, Complex64::new(v0, 0.0));
    }
    Ok(l)
}

/// Scale raw parametric moments into expansion coefficients: geometry
/// Jacobian and density fold in, 1/(4 pi) from the kernel, and the parity
/// conjugation that re-centers the basis on the field point.
pub(crate) fn assemble_coefficients(
    element: &SimplexElement,
    req: &ExpansionRequest,
    raw: &TriangularCoeffs,
) -> Result<MultipoleCoefficients> {
    let scale = element.density * element.jacobian()? / (4.0 * PI);
    let mut coeffs = TriangularCoeffs::zeros(req.p)?;
    for (n, m, v) in raw.iter() {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        coeffs.set(n, m, scale * sign * v.conj());
    }
    Ok(MultipoleCoefficients { kernel: req.kernel, center: req.center, coeffs })
}

/// Coefficients of a unit point source, the degenerate element every kernel
/// collapses to. Useful for calibration: paired with the singular basis they
/// must reproduce the free-space kernel itself.
pub fn point_source(source: Point3, center: Point3, p: usize) -> Result<TriangularCoeffs> {
    let basis = crate::harmonics::eval_regular_tilde(source - center, p)?;
    let mut c = TriangularCoeffs::zeros(p)?;
    for (n, m, v) in basis.iter() {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        c.set(n, m, sign / (4.0 * PI) * v.conj());
    }
    Ok(c)
}

/// Expand a single element by the recursive moment ladders.
pub fn expand(element: &SimplexElement, req: &ExpansionRequest) -> Result<MultipoleCoefficients> {
    if !req.kernel.applies_to(element.kind) {
        return Err(Error::IncompatibleKind { kernel: req.kernel, element: element.kind });
    }
    if req.p == 0 {
        return Err(Error::InvalidTruncation(0));
    }
    let frame = element.frame(req.center)?;
    let raw = match req.kernel {
        Kernel::LinePotential => segment_moments(&frame, req.p)?.line,
        Kernel::SingleLayer => triangle_moments(&frame, req.p)?.surface,
        Kernel::DoubleLayer => {
            let surface = triangle_moments(&frame, req.p)?.surface;
            double_layer_from_surface(&surface, element.unit_normal()?, req.p)?
        }
        Kernel::VolumePotential => tetrahedron_moments(&frame, req.p)?.volume,
    };
    assemble_coefficients(element, req, &raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonics::eval_regular_tilde;
    use crate::quadrature::expand_by_quadrature;
    use proptest::prelude::*;

    const TOL: f64 = 1e-13;

    fn p3(x: f64, y: f64, z: f64) -> Point3 {
        Point3::new(x, y, z)
    }

    fn assert_close(got: Complex64, want: Complex64, tol: f64, what: &str) {
        assert!((got - want).norm() <= tol, "{what}: got {got}, want {want}");
    }

    #[test]
    fn kernel_letters_round_trip() {
        for k in Kernel::ALL {
            assert_eq!(k.letter().to_string().parse::<Kernel>().unwrap(), k);
            assert_eq!(
                k.letter().to_ascii_lowercase().to_string().parse::<Kernel>().unwrap(),
                k
            );
        }
        assert!("X".parse::<Kernel>().is_err());
        assert!("".parse::<Kernel>().is_err());
    }

    #[test]
    fn segment_moments_match_hand_values() {
        // axial segment from (0,0,1) to (0,0,2), center at the origin
        let e = SimplexElement::segment(p3(0.0, 0.0, 1.0), p3(0.0, 0.0, 2.0), 1.0);
        let frame = e.frame(Point3::ZERO).unwrap();
        let m = segment_moments(&frame, 4).unwrap();
        assert_close(m.endpoint.get(1, 0), Complex64::new(-2.0, 0.0), TOL, "endpoint(1,0)");
        assert_close(m.line.get(1, 0), Complex64::new(-1.5, 0.0), TOL, "line(1,0)");

        let req = ExpansionRequest::new(Kernel::LinePotential, Point3::ZERO, 4);
        let c = expand(&e, &req).unwrap();
        let q = 1.0 / (4.0 * PI);
        assert_close(c.coeffs.get(0, 0), Complex64::new(q, 0.0), TOL, "K(0,0)");
        assert_close(c.coeffs.get(1, 0), Complex64::new(1.5 * q, 0.0), TOL, "K(1,0)");
    }

    #[test]
    fn triangle_moments_match_hand_values() {
        let e = SimplexElement::triangle(
            p3(0.0, 0.0, 1.0),
            p3(1.0, 0.0, 1.0),
            p3(0.0, 1.0, 1.0),
            1.0,
        );
        let frame = e.frame(Point3::ZERO).unwrap();
        let m = triangle_moments(&frame, 4).unwrap();
        assert_close(m.slant_edge.get(1, 0), Complex64::new(-1.0, 0.0), TOL, "edge(1,0)");
        assert_close(m.surface.get(1, 0), Complex64::new(-0.5, 0.0), TOL, "surface(1,0)");

        let q = 1.0 / (8.0 * PI);
        let single =
            expand(&e, &ExpansionRequest::new(Kernel::SingleLayer, Point3::ZERO, 4)).unwrap();
        assert_close(single.coeffs.get(0, 0), Complex64::new(q, 0.0), TOL, "L(0,0)");
        assert_close(single.coeffs.get(1, 0), Complex64::new(q, 0.0), TOL, "L(1,0)");

        let double =
            expand(&e, &ExpansionRequest::new(Kernel::DoubleLayer, Point3::ZERO, 4)).unwrap();
        assert_close(double.coeffs.get(0, 0), Complex64::ZERO, 0.0, "M(0,0)");
        assert_close(double.coeffs.get(1, 0), Complex64::new(q, 0.0), TOL, "M(1,0)");
    }

    #[test]
    fn tetrahedron_moments_match_hand_values() {
        let e = SimplexElement::tetrahedron(
            p3(0.0, 0.0, 1.0),
            p3(1.0, 0.0, 1.0),
            p3(0.0, 1.0, 1.0),
            p3(0.0, 0.0, 2.0),
            1.0,
        );
        let frame = e.frame(Point3::ZERO).unwrap();
        let m = tetrahedron_moments(&frame, 4).unwrap();
        assert_close(m.volume.get(0, 0), Complex64::new(1.0 / 6.0, 0.0), 0.0, "volume(0,0)");
        assert_close(m.volume.get(1, 0), Complex64::new(-5.0 / 24.0, 0.0), TOL, "volume(1,0)");

        let c = expand(&e, &ExpansionRequest::new(Kernel::VolumePotential, Point3::ZERO, 4))
            .unwrap();
        assert_close(
            c.coeffs.get(0, 0),
            Complex64::new(1.0 / (24.0 * PI), 0.0),
            TOL,
            "N(0,0)",
        );
    }

    #[test]
    fn endpoint_family_is_the_regular_basis_at_the_far_vertex() {
        let e = SimplexElement::triangle(
            p3(0.3, -0.2, 1.1),
            p3(1.2, 0.4, 0.9),
            p3(-0.1, 1.0, 1.4),
            1.0,
        );
        let frame = e.frame(p3(0.05, -0.3, 0.2)).unwrap();
        let m = triangle_moments(&frame, 9).unwrap();
        let direct = eval_regular_tilde(frame.map(1.0, 0.0, 0.0), 9).unwrap();
        for (n, mm, v) in m.endpoint.iter() {
            assert_close(v, direct.get(n, mm), 1e-14 * direct.degree_max(n).max(1.0), "q");
        }
    }

    #[test]
    fn slant_families_reduce_to_lower_frames() {
        // the slant edge is a segment frame rooted at the rv vertex, and the
        // slant face is a triangle frame rooted at the rw vertex
        let e = SimplexElement::tetrahedron(
            p3(0.2, 0.1, 0.9),
            p3(1.1, -0.3, 1.2),
            p3(-0.2, 0.8, 1.0),
            p3(0.3, 0.2, 1.9),
            1.0,
        );
        let center = p3(-0.4, 0.25, 0.1);
        let frame = e.frame(center).unwrap();
        let m = tetrahedron_moments(&frame, 10).unwrap();

        let edge_frame = ParametricFrame::new(
            SimplexKind::Segment,
            frame.r0 + frame.rv,
            frame.ru - frame.rv,
            Point3::ZERO,
            Point3::ZERO,
        );
        let edge = segment_moments(&edge_frame, 10).unwrap();
        let face_frame = ParametricFrame::new(
            SimplexKind::Triangle,
            frame.r0 + frame.rw,
            frame.ru - frame.rw,
            frame.rv - frame.rw,
            Point3::ZERO,
        );
        let face = triangle_moments(&face_frame, 10).unwrap();
        for (n, mm, v) in m.slant_edge.iter() {
            let scale = edge.line.degree_max(n).max(1.0);
            assert_close(v, edge.line.get(n, mm), 1e-13 * scale, "slant edge");
        }
        for (n, mm, v) in m.slant_face.iter() {
            let scale = face.surface.degree_max(n).max(1.0);
            assert_close(v, face.surface.get(n, mm), 1e-13 * scale, "slant face");
        }
    }

    #[test]
    fn rejects_mismatched_kernel_and_zero_truncation() {
        let seg = SimplexElement::segment(p3(0.0, 0.0, 1.0), p3(0.0, 0.0, 2.0), 1.0);
        let err = expand(&seg, &ExpansionRequest::new(Kernel::SingleLayer, Point3::ZERO, 4))
            .unwrap_err();
        assert!(matches!(err, Error::IncompatibleKind { .. }));
        let err = expand(&seg, &ExpansionRequest::new(Kernel::LinePotential, Point3::ZERO, 0))
            .unwrap_err();
        assert!(matches!(err, Error::InvalidTruncation(0)));
    }

    #[test]
    fn recursion_agrees_with_quadrature_on_fixed_elements() {
        let p = 8;
        let center = p3(0.1, -0.05, 0.2);
        let cases: Vec<(SimplexElement, Kernel)> = vec![
            (
                SimplexElement::segment(p3(0.4, 0.3, 1.0), p3(-0.2, 0.9, 1.8), 1.3),
                Kernel::LinePotential,
            ),
            (
                SimplexElement::triangle(
                    p3(0.3, -0.2, 1.1),
                    p3(1.2, 0.4, 0.9),
                    p3(-0.1, 1.0, 1.4),
                    -0.7,
                ),
                Kernel::SingleLayer,
            ),
            (
                SimplexElement::triangle(
                    p3(0.3, -0.2, 1.1),
                    p3(1.2, 0.4, 0.9),
                    p3(-0.1, 1.0, 1.4),
                    2.1,
                ),
                Kernel::DoubleLayer,
            ),
            (
                SimplexElement::tetrahedron(
                    p3(0.2, 0.1, 0.9),
                    p3(1.1, -0.3, 1.2),
                    p3(-0.2, 0.8, 1.0),
                    p3(0.3, 0.2, 1.9),
                    0.8,
                ),
                Kernel::VolumePotential,
            ),
        ];
        for (e, kernel) in cases {
            let req = ExpansionRequest::new(kernel, center, p);
            let fast = expand(&e, &req).unwrap();
            let slow = expand_by_quadrature(&e, &req).unwrap();
            for (n, m, v) in fast.coeffs.iter() {
                let scale = fast.coeffs.degree_max(n).max(slow.coeffs.degree_max(n)).max(1e-30);
                let diff = (v - slow.coeffs.get(n, m)).norm() / scale;
                assert!(diff <= 1e-12, "{kernel} (n={n}, m={m}): relative gap {diff:.3e}");
            }
        }
    }

    proptest! {
        #[test]
        fn coefficients_are_linear_in_density(
            d in -3.0f64..3.0,
            z0 in 0.5f64..2.0,
        ) {
            let a = p3(0.1, 0.2, z0);
            let b = p3(0.9, -0.1, z0 + 0.4);
            let c = p3(-0.2, 0.8, z0 + 0.2);
            let one = SimplexElement::triangle(a, b, c, 1.0);
            let many = SimplexElement::triangle(a, b, c, d);
            let req = ExpansionRequest::new(Kernel::SingleLayer, Point3::ZERO, 6);
            let cu = expand(&one, &req).unwrap();
            let cd = expand(&many, &req).unwrap();
            for (n, m, v) in cd.coeffs.iter() {
                let want = d * cu.coeffs.get(n, m);
                prop_assert!((v - want).norm() <= 1e-13 * (1.0 + want.norm()));
            }
        }

        #[test]
        fn recursion_matches_quadrature_at_random_geometry(
            ax in -0.5f64..0.5, ay in -0.5f64..0.5,
            bx in -0.5f64..0.5, by in -0.5f64..0.5,
            cz in 0.2f64..1.0,
        ) {
            let e = SimplexElement::tetrahedron(
                p3(ax, ay, 1.0),
                p3(ax + 1.0, by, 1.1),
                p3(bx, ay + 1.0, 0.9),
                p3(bx, by, 1.0 + cz),
                1.0,
            );
            let req = ExpansionRequest::new(Kernel::VolumePotential, Point3::ZERO, 6);
            let fast = expand(&e, &req).unwrap();
            let slow = expand_by_quadrature(&e, &req).unwrap();
            for (n, m, v) in fast.coeffs.iter() {
                let scale = fast.coeffs.degree_max(n).max(1e-30);
                prop_assert!((v - slow.coeffs.get(n, m)).norm() <= 1e-11 * scale);
            }
        }
    }
}
