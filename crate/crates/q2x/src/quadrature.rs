//! Gauss-Legendre rules on the unit interval and collapsed tensor-product
//! rules on the unit triangle and tetrahedron. These power the brute-force
//! expansion path the recursive moments are checked and benchmarked against.

use crate::error::{Error, Result};
use crate::expansion::{assemble_coefficients, ExpansionRequest, Kernel, MultipoleCoefficients};
use crate::harmonics::{eval_regular_tilde, TriangularCoeffs};
use crate::simplex::SimplexElement;
use std::f64::consts::PI;

/// Nodes and weights exact for polynomials up to `degree` on the unit simplex
/// of dimension `dim`. Node coordinates beyond `dim` are zero.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub dim: usize,
    pub degree: usize,
    pub nodes: Vec<[f64; 3]>,
    pub weights: Vec<f64>,
}

/// Gauss-Legendre nodes and weights on [0, 1], exact through degree 2n - 1.
///
/// Roots of the Legendre polynomial are found by Newton iteration from the
/// Chebyshev angle estimate; each root is polished to 1e-15 and mirrored so
/// the rule is exactly symmetric about 1/2.
pub fn gauss_legendre_unit(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 || n > 64 {
        return Err(Error::Domain("gauss-legendre size must be in 1..=64"));
    }
    let mut x = vec![0.0f64; n];
    let mut w = vec![0.0f64; n];
    for k in 0..(n + 1) / 2 {
        // guess near the k-th root in (-1, 1), descending
        let mut t = (PI * (4.0 * (k + 1) as f64 - 1.0) / (4.0 * n as f64 + 2.0)).cos();
        let mut converged = false;
        for _ in 0..100 {
            // Legendre value and derivative by the three-term recurrence
            let mut p0 = 1.0;
            let mut p1 = t;
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * t * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (t * p1 - p0) / (t * t - 1.0);
            let step = p1 / dp;
            t -= step;
            if step.abs() <= 1e-15 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Domain("gauss-legendre iteration did not converge"));
        }
        // weight on [-1, 1]: 2 / ((1 - t^2) P'(t)^2)
        let mut p0 = 1.0;
        let mut p1 = t;
        for j in 2..=n {
            let p2 = ((2 * j - 1) as f64 * t * p1 - (j - 1) as f64 * p0) / j as f64;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (t * p1 - p0) / (t * t - 1.0);
        let weight = 2.0 / ((1.0 - t * t) * dp * dp);
        // map to [0, 1] and mirror
        x[k] = 0.5 * (1.0 - t);
        x[n - 1 - k] = 0.5 * (1.0 + t);
        w[k] = 0.5 * weight;
        w[n - 1 - k] = 0.5 * weight;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.5;
    }
    Ok((x, w))
}

/// Rule for the unit simplex of dimension 1, 2 or 3, exact for total degree
/// `degree`. Triangle and tetrahedron rules collapse a tensor-product grid,
/// which raises the required one-dimensional orders by the collapse factors.
pub fn simplex_rule(dim: usize, degree: usize) -> Result<QuadratureRule> {
    let rule = match dim {
        1 => {
            let (xu, wu) = gauss_legendre_unit(degree / 2 + 1)?;
            let nodes = xu.iter().map(|&u| [u, 0.0, 0.0]).collect();
            QuadratureRule { dim, degree, nodes, weights: wu }
        }
        2 => {
            let (xu, wu) = gauss_legendre_unit((degree + 3) / 2)?;
            let (xt, wt) = gauss_legendre_unit((degree + 2) / 2)?;
            let mut nodes = Vec::with_capacity(xu.len() * xt.len());
            let mut weights = Vec::with_capacity(nodes.capacity());
            for (&u, &cu) in xu.iter().zip(&wu) {
                for (&t, &ct) in xt.iter().zip(&wt) {
                    nodes.push([u, (1.0 - u) * t, 0.0]);
                    weights.push(cu * ct * (1.0 - u));
                }
            }
            QuadratureRule { dim, degree, nodes, weights }
        }
        3 => {
            let (xu, wu) = gauss_legendre_unit((degree + 4) / 2)?;
            let (xt, wt) = gauss_legendre_unit((degree + 3) / 2)?;
            let (xs, ws) = gauss_legendre_unit((degree + 2) / 2)?;
            let mut nodes = Vec::new();
            let mut weights = Vec::new();
            for (&u, &cu) in xu.iter().zip(&wu) {
                for (&t, &ct) in xt.iter().zip(&wt) {
                    let v = (1.0 - u) * t;
                    for (&s, &cs) in xs.iter().zip(&ws) {
                        nodes.push([u, v, (1.0 - u - v) * s]);
                        weights.push(cu * ct * cs * (1.0 - u) * (1.0 - u - v));
                    }
                }
            }
            QuadratureRule { dim, degree, nodes, weights }
        }
        _ => return Err(Error::Unsupported("simplex rules exist for dimensions 1, 2 and 3")),
    };
    Ok(rule)
}

/// Brute-force counterpart of [`crate::expansion::expand`]: integrates the
/// regular basis over the element with a rule exact for the highest stored
/// degree, then applies the same coefficient assembly. Agrees with the
/// recursive path to round-off; costs one basis evaluation per node.
pub fn expand_by_quadrature(
    element: &SimplexElement,
    req: &ExpansionRequest,
) -> Result<MultipoleCoefficients> {
    if !req.kernel.applies_to(element.kind) {
        return Err(Error::IncompatibleKind { kernel: req.kernel, element: element.kind });
    }
    if req.p == 0 {
        return Err(Error::InvalidTruncation(0));
    }
    let frame = element.frame(req.center)?;
    let rule = simplex_rule(element.kind.dim(), req.p.saturating_sub(1))?;
    let mut raw = TriangularCoeffs::zeros(req.p)?;
    for (node, &weight) in rule.nodes.iter().zip(&rule.weights) {
        let at = frame.map(node[0], node[1], node[2]);
        let basis = eval_regular_tilde(at, req.p)?;
        for n in 0..req.p {
            for m in 0..=n {
                raw.set(n, m, raw.get(n, m) + weight * basis.get(n, m));
            }
        }
    }
    let raw = match req.kernel {
        Kernel::DoubleLayer => {
            crate::expansion::double_layer_from_surface(&raw, element.unit_normal()?, req.p)?
        }
        _ => raw,
    };
    assemble_coefficients(element, req, &raw)
}
