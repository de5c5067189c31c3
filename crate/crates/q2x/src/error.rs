use crate::expansion::Kernel;
use crate::simplex::SimplexKind;
use std::fmt;

/// Failure modes of the expansion and evaluation routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Element Jacobian fell below the degeneracy threshold for its size.
    DegenerateElement { jacobian: f64, threshold: f64 },
    /// Singular basis evaluation at zero radius.
    ZeroRadius,
    /// Green's function requested for coincident points.
    CoincidentPoints,
    /// Evaluation point sits on or too close to the element support.
    NearSingularEval { distance: f64, guard: f64 },
    /// Evaluation point lies inside the volume element.
    InteriorEval,
    /// Kernel kind does not apply to this element type.
    IncompatibleKind { kernel: Kernel, element: SimplexKind },
    /// Truncation order must be at least 1.
    InvalidTruncation(usize),
    /// Operation not defined for this input shape.
    Unsupported(&'static str),
    /// Scalar argument outside the mathematical domain of the operation.
    Domain(&'static str),
    /// Mesh text could not be parsed; `line` is 1-based.
    Mesh { line: usize, reason: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DegenerateElement { jacobian, threshold } => write!(
                f,
                "degenerate element: |jacobian| = {jacobian:.3e} below threshold {threshold:.3e}"
            ),
            Error::ZeroRadius => write!(f, "singular basis evaluated at zero radius"),
            Error::CoincidentPoints => write!(f, "green's function at coincident points"),
            Error::NearSingularEval { distance, guard } => write!(
                f,
                "evaluation point within {distance:.3e} of the element support (guard {guard:.3e})"
            ),
            Error::InteriorEval => write!(f, "evaluation point inside the volume element"),
            Error::IncompatibleKind { kernel, element } => {
                write!(f, "kernel {kernel} does not apply to a {element} element")
            }
            Error::InvalidTruncation(p) => write!(f, "truncation order must be >= 1, got {p}"),
            Error::Unsupported(what) => write!(f, "{what}"),
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::Mesh { line, reason } => write!(f, "mesh line {line}: {reason}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
