//! Simplex elements (segments, triangles, tetrahedra) and the affine frames
//! the moment recursions consume.

use crate::error::{Error, Result};
use crate::harmonics::ComplexSplit;
use crate::point::Point3;
use std::fmt;

/// Relative Jacobian below which an element counts as degenerate.
const DEGENERACY_THRESHOLD: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimplexKind {
    Segment,
    Triangle,
    Tetrahedron,
}

impl SimplexKind {
    pub fn vertex_count(self) -> usize {
        match self {
            SimplexKind::Segment => 2,
            SimplexKind::Triangle => 3,
            SimplexKind::Tetrahedron => 4,
        }
    }

    pub fn dim(self) -> usize {
        match self {
            SimplexKind::Segment => 1,
            SimplexKind::Triangle => 2,
            SimplexKind::Tetrahedron => 3,
        }
    }
}

impl fmt::Display for SimplexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SimplexKind::Segment => "segment",
            SimplexKind::Triangle => "triangle",
            SimplexKind::Tetrahedron => "tetrahedron",
        })
    }
}

/// A flat element carrying a constant source density (line charge, surface
/// charge or dipole strength, or volume charge, depending on the kernel).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexElement {
    pub kind: SimplexKind,
    verts: [Point3; 4],
    pub density: f64,
}

impl SimplexElement {
    pub fn segment(a: Point3, b: Point3, density: f64) -> Self {
        SimplexElement { kind: SimplexKind::Segment, verts: [a, b, Point3::ZERO, Point3::ZERO], density }
    }

    pub fn triangle(a: Point3, b: Point3, c: Point3, density: f64) -> Self {
        SimplexElement { kind: SimplexKind::Triangle, verts: [a, b, c, Point3::ZERO], density }
    }

    pub fn tetrahedron(a: Point3, b: Point3, c: Point3, d: Point3, density: f64) -> Self {
        SimplexElement { kind: SimplexKind::Tetrahedron, verts: [a, b, c, d], density }
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.verts[..self.kind.vertex_count()]
    }

    pub fn centroid(&self) -> Point3 {
        let vs = self.vertices();
        let sum = vs.iter().fold(Point3::ZERO, |acc, &v| acc + v);
        sum * (1.0 / vs.len() as f64)
    }

    /// Longest pairwise vertex distance.
    pub fn diameter(&self) -> f64 {
        let vs = self.vertices();
        let mut d = 0.0f64;
        for i in 0..vs.len() {
            for j in (i + 1)..vs.len() {
                d = d.max((vs[i] - vs[j]).norm());
            }
        }
        d
    }

    /// Edge vectors from the first vertex.
    fn edges(&self) -> (Point3, Point3, Point3) {
        (
            self.verts[1] - self.verts[0],
            self.verts[2] - self.verts[0],
            self.verts[3] - self.verts[0],
        )
    }

    /// Map Jacobian onto the unit simplex: segment length, twice the triangle
    /// area, or six times the tetrahedron volume. Errors when the element is
    /// degenerate relative to its own size.
    pub fn jacobian(&self) -> Result<f64> {
        let (ru, rv, rw) = self.edges();
        let j = match self.kind {
            SimplexKind::Segment => ru.norm(),
            SimplexKind::Triangle => ru.cross(rv).norm(),
            SimplexKind::Tetrahedron => ru.cross(rv).dot(rw).abs(),
        };
        let scale = self.diameter().powi(self.kind.dim() as i32);
        let threshold = DEGENERACY_THRESHOLD * scale;
        if !(j > threshold) {
            return Err(Error::DegenerateElement { jacobian: j, threshold });
        }
        Ok(j)
    }

    /// Unit normal of a triangle, oriented by the vertex order (right-hand
    /// rule). Errors for other element kinds or a degenerate triangle.
    pub fn unit_normal(&self) -> Result<Point3> {
        if self.kind != SimplexKind::Triangle {
            return Err(Error::Unsupported("unit normal is defined for triangles only"));
        }
        let (ru, rv, _) = self.edges();
        self.jacobian()?;
        Ok(ru.cross(rv).normalized().expect("non-degenerate triangle"))
    }

    /// Affine frame of the element relative to an expansion center.
    pub fn frame(&self, center: Point3) -> Result<ParametricFrame> {
        self.jacobian()?;
        let (ru, rv, rw) = self.edges();
        let (rv, rw) = match self.kind {
            SimplexKind::Segment => (Point3::ZERO, Point3::ZERO),
            SimplexKind::Triangle => (rv, Point3::ZERO),
            SimplexKind::Tetrahedron => (rv, rw),
        };
        Ok(ParametricFrame::new(self.kind, self.verts[0] - center, ru, rv, rw))
    }
}

/// Center-relative affine frame r(u, v, w) = r0 + ru u + rv v + rw w over the
/// unit simplex, with the complex splits the recursions work in. Unused axes
/// are zero vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParametricFrame {
    pub kind: SimplexKind,
    pub r0: Point3,
    pub ru: Point3,
    pub rv: Point3,
    pub rw: Point3,
    pub s0: ComplexSplit,
    pub su: ComplexSplit,
    pub sv: ComplexSplit,
    pub sw: ComplexSplit,
}

impl ParametricFrame {
    pub fn new(kind: SimplexKind, r0: Point3, ru: Point3, rv: Point3, rw: Point3) -> Self {
        ParametricFrame {
            kind,
            r0,
            ru,
            rv,
            rw,
            s0: ComplexSplit::of(r0),
            su: ComplexSplit::of(ru),
            sv: ComplexSplit::of(rv),
            sw: ComplexSplit::of(rw),
        }
    }

    /// Center-relative position of a parameter-space point.
    pub fn map(&self, u: f64, v: f64, w: f64) -> Point3 {
        self.r0 + self.ru * u + self.rv * v + self.rw * w
    }
}
