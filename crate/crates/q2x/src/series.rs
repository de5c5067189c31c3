//! Pairing of expansion coefficients with the singular basis, and the
//! a-priori truncation error model the benchmarks are judged against.

use crate::error::{Error, Result};
use crate::expansion::{Kernel, MultipoleCoefficients};
use crate::harmonics::{eval_singular_tilde, TriangularCoeffs};
use crate::point::Point3;

/// Sum the series about `center` at the field point. Negative orders enter
/// through conjugate symmetry, which folds into twice the real part of the
/// positive-order products.
pub fn evaluate_series(coeffs: &TriangularCoeffs, center: Point3, r: Point3) -> Result<f64> {
    if !r.is_finite() {
        return Err(Error::Domain("evaluation point must be finite"));
    }
    let p = coeffs.truncation();
    let basis = eval_singular_tilde(r - center, p)?;
    let mut acc = 0.0;
    for n in 0..p {
        let mut row = (coeffs.get(n, 0) * basis.get(n, 0)).re;
        for m in 1..=n {
            row += 2.0 * (coeffs.get(n, m) * basis.get(n, m)).re;
        }
        acc += row;
    }
    Ok(acc)
}

/// Sum an element expansion at the field point.
pub fn evaluate_expansion(expansion: &MultipoleCoefficients, r: Point3) -> Result<f64> {
    evaluate_series(&expansion.coeffs, expansion.center, r)
}

/// |got - want| / |want|; zero reference gives 0 for an exact hit and
/// infinity otherwise.
pub fn relative_error(got: f64, want: f64) -> f64 {
    if got == want {
        0.0
    } else {
        (got - want).abs() / want.abs()
    }
}

/// Expected relative truncation error for a truncation at p coefficients per
/// order, with moments gathered inside radius `moment_radius` and the field
/// point at `distance`. Single layers decay like the convergence ratio to the
/// p-th power; the double layer differentiates the series once, which costs
/// one power and a factor p.
pub fn error_bound(kernel: Kernel, moment_radius: f64, distance: f64, p: usize) -> Result<f64> {
    if p == 0 {
        return Err(Error::InvalidTruncation(0));
    }
    if !(moment_radius > 0.0) || !moment_radius.is_finite() {
        return Err(Error::Domain("moment radius must be positive and finite"));
    }
    if !(distance > moment_radius) {
        return Err(Error::Domain("field distance must exceed the moment radius"));
    }
    let t = moment_radius / distance;
    const C: f64 = 0.1;
    Ok(match kernel {
        Kernel::LinePotential | Kernel::SingleLayer | Kernel::VolumePotential => C * t.powi(p as i32),
        Kernel::DoubleLayer => C * p as f64 * t.powi(p as i32 - 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic;
    use crate::expansion::{expand, point_source, ExpansionRequest};
    use crate::simplex::SimplexElement;

    fn p3(x: f64, y: f64, z: f64) -> Point3 {
        Point3::new(x, y, z)
    }

    #[test]
    fn point_source_series_reproduces_green() {
        let source = p3(0.3, -0.2, 0.4);
        let center = p3(0.1, 0.0, 0.1);
        let coeffs = point_source(source, center, 24).unwrap();
        for r in [p3(2.0, 1.0, -0.5), p3(-1.5, 2.5, 0.0), p3(0.0, 0.0, 3.0)] {
            let got = evaluate_series(&coeffs, center, r).unwrap();
            let want = analytic::green(r, source).unwrap();
            assert!(
                relative_error(got, want) <= 1e-13,
                "at {r:?}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn bare_monopole_is_green_about_the_center() {
        let center = p3(0.5, -0.25, 1.0);
        let coeffs = point_source(center, center, 6).unwrap();
        let r = p3(3.0, 1.0, 0.0);
        let got = evaluate_series(&coeffs, center, r).unwrap();
        let want = analytic::green(r, center).unwrap();
        assert!(relative_error(got, want) <= 1e-15);
    }

    #[test]
    fn expansions_of_all_kernels_converge_to_the_oracle() {
        let p = 24;
        let center = p3(0.05, -0.02, 0.01);
        let r = p3(1.3, 0.8, 1.6);
        let seg = SimplexElement::segment(p3(-0.1, 0.05, 0.0), p3(0.1, -0.05, 0.1), 1.4);
        let tri = SimplexElement::triangle(
            p3(0.1, 0.0, 0.02),
            p3(-0.05, 0.09, -0.01),
            p3(-0.02, -0.08, 0.05),
            -0.6,
        );
        let tet = SimplexElement::tetrahedron(
            p3(0.1, 0.0, 0.0),
            p3(-0.04, 0.09, 0.01),
            p3(-0.03, -0.07, 0.02),
            p3(0.0, 0.01, 0.11),
            2.3,
        );
        let cases: [(&SimplexElement, Kernel); 4] = [
            (&seg, Kernel::LinePotential),
            (&tri, Kernel::SingleLayer),
            (&tri, Kernel::DoubleLayer),
            (&tet, Kernel::VolumePotential),
        ];
        for (e, kernel) in cases {
            let exp = expand(e, &ExpansionRequest::new(kernel, center, p)).unwrap();
            let got = evaluate_expansion(&exp, r).unwrap();
            let want = analytic::potential(e, kernel, r).unwrap();
            // the dipole-dominated double layer is judged on the single
            // layer's scale at the same distance
            let scale = match kernel {
                Kernel::DoubleLayer => {
                    analytic::potential(e, Kernel::SingleLayer, r).unwrap().abs()
                }
                _ => want.abs(),
            };
            assert!(
                (got - want).abs() <= 1e-12 * scale,
                "{kernel}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn evaluation_rejects_the_center_and_nonfinite_points() {
        let center = p3(0.5, 0.0, 0.0);
        let coeffs = point_source(p3(0.4, 0.0, 0.0), center, 8).unwrap();
        assert!(matches!(
            evaluate_series(&coeffs, center, center),
            Err(Error::ZeroRadius)
        ));
        assert!(matches!(
            evaluate_series(&coeffs, center, p3(f64::INFINITY, 0.0, 0.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn error_bound_matches_frozen_values() {
        let single = error_bound(Kernel::SingleLayer, 1.0, 3.0, 8).unwrap();
        assert!(relative_error(single, 0.1 / 6561.0) < 1e-15);
        let double = error_bound(Kernel::DoubleLayer, 1.0, 3.0, 8).unwrap();
        assert!(relative_error(double, 0.8 / 2187.0) < 1e-15);
        // the line and volume kernels share the single layer's envelope
        for k in [Kernel::LinePotential, Kernel::VolumePotential] {
            assert_eq!(error_bound(k, 1.0, 3.0, 8).unwrap(), single);
        }
    }

    #[test]
    fn error_bound_rejects_bad_domains() {
        assert!(error_bound(Kernel::SingleLayer, 1.0, 3.0, 0).is_err());
        assert!(error_bound(Kernel::SingleLayer, 0.0, 3.0, 8).is_err());
        assert!(error_bound(Kernel::SingleLayer, 3.0, 1.0, 8).is_err());
        assert!(error_bound(Kernel::SingleLayer, 1.0, 1.0, 8).is_err());
    }

    #[test]
    fn relative_error_handles_zero_references() {
        assert_eq!(relative_error(0.0, 0.0), 0.0);
        assert_eq!(relative_error(1.0, 0.0), f64::INFINITY);
        assert!((relative_error(1.1, 1.0) - 0.1).abs() < 1e-14);
    }
}
