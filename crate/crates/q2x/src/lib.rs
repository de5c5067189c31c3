//! Multipole expansions of Laplace layer potentials over flat simplices.
//!
//! A segment, triangle, or tetrahedron carrying a constant density induces a
//! potential that, outside a sphere enclosing the element, is a convergent
//! series in singular solid harmonics. This crate computes the series
//! coefficients exactly (up to round-off) by recurrence: moments of the
//! regular harmonics over the element are generated degree by degree from a
//! chain of lower-dimensional boundary moments, at O(p^2) arithmetic for p
//! coefficient orders, with no numerical integration anywhere.
//!
//! The pieces:
//!
//! - [`harmonics`]: scaled regular and singular solid harmonic bases.
//! - [`simplex`]: elements, degeneracy checks, and their parametric frames.
//! - [`expansion`]: the moment recurrences and coefficient assembly.
//! - [`analytic`]: closed-form potentials used as ground truth.
//! - [`quadrature`]: Gauss rules and a brute-force expansion baseline.
//! - [`series`]: pairing coefficients with the singular basis at field
//!   points, plus the truncation error model.
//! - [`reference`]: the canonical benchmark scene.
//! - [`mesh`]: a tiny text format for element lists.
//!
//! ```
//! use q2x::{expand, evaluate_expansion, ExpansionRequest, Kernel, Point3, SimplexElement};
//!
//! let e = SimplexElement::triangle(
//!     Point3::new(0.1, 0.0, 0.0),
//!     Point3::new(-0.05, 0.09, 0.0),
//!     Point3::new(-0.02, -0.08, 0.03),
//!     1.0,
//! );
//! let req = ExpansionRequest::new(Kernel::SingleLayer, Point3::ZERO, 16);
//! let exp = expand(&e, &req).unwrap();
//! let far = evaluate_expansion(&exp, Point3::new(1.0, 0.5, 0.8)).unwrap();
//! let exact = q2x::analytic::potential(&e, Kernel::SingleLayer, Point3::new(1.0, 0.5, 0.8)).unwrap();
//! assert!((far - exact).abs() < 1e-12 * exact.abs());
//! ```

pub mod analytic;
pub mod error;
pub mod expansion;
pub mod harmonics;
pub mod mesh;
pub mod point;
pub mod quadrature;
pub mod reference;
pub mod series;
pub mod simplex;

pub use error::{Error, Result};
pub use expansion::{
    expand, point_source, segment_moments, tetrahedron_moments, triangle_moments,
    ExpansionRequest, Kernel, MultipoleCoefficients,
};
pub use harmonics::{eval_regular_tilde, eval_singular_tilde, to_real_basis, TriangularCoeffs};
pub use mesh::parse_mesh;
pub use point::Point3;
pub use quadrature::{expand_by_quadrature, gauss_legendre_unit, simplex_rule};
pub use series::{error_bound, evaluate_expansion, evaluate_series, relative_error};
pub use simplex::{ParametricFrame, SimplexElement, SimplexKind};
