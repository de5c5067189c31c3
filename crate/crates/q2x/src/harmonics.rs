//! Solid harmonic bases used by the moment recursions and series evaluation.
//!
//! Both families are kept in the "tilde" normalization in which coefficients at
//! opposite azimuthal index are plain complex conjugates: F(n, -m) = conj(F(n, m)).
//! Only the m >= 0 half is therefore stored. The regular family R grows like r^n
//! and feeds the moment recursions; the singular family S decays like r^(-n-1)
//! and multiplies the coefficients when a truncated series is evaluated.

use crate::error::{Error, Result};
use crate::point::Point3;
use num_complex::Complex64;

/// Split of a real 3-vector into the complex pair used by the recursions:
/// xi = (x + iy)/2, eta = (x - iy)/2 = conj(xi), plus the raw z component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexSplit {
    pub xi: Complex64,
    pub eta: Complex64,
    pub z: f64,
}

impl ComplexSplit {
    pub fn of(p: Point3) -> Self {
        let xi = Complex64::new(0.5 * p.x, 0.5 * p.y);
        ComplexSplit { xi, eta: xi.conj(), z: p.z }
    }

    /// Inverse of [`ComplexSplit::of`]; exact in floating point.
    pub fn point(self) -> Point3 {
        Point3::new(2.0 * self.xi.re, 2.0 * self.xi.im, self.z)
    }
}

/// Packed lower-triangular complex array c(n, m) for 0 <= m <= n < p.
///
/// Entry (n, m) lives at index n(n+1)/2 + m; the full array holds p(p+1)/2
/// entries. Negative m is never stored: every family kept in one of these
/// satisfies c(n, -m) = conj(c(n, m)).
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularCoeffs {
    p: usize,
    data: Vec<Complex64>,
}

impl TriangularCoeffs {
    pub fn zeros(p: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidTruncation(0));
        }
        Ok(TriangularCoeffs { p, data: vec![Complex64::ZERO; p * (p + 1) / 2] })
    }

    /// Truncation order: stored degrees are 0..p-1.
    pub fn truncation(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    fn idx(n: usize, m: usize) -> usize {
        n * (n + 1) / 2 + m
    }

    /// Entry (n, m) with 0 <= m <= n < truncation. Panics out of range.
    #[inline]
    pub fn get(&self, n: usize, m: usize) -> Complex64 {
        assert!(n < self.p && m <= n, "triangular index ({n},{m}) out of range");
        self.data[Self::idx(n, m)]
    }

    #[inline]
    pub fn set(&mut self, n: usize, m: usize, v: Complex64) {
        assert!(n < self.p && m <= n, "triangular index ({n},{m}) out of range");
        self.data[Self::idx(n, m)] = v;
    }

    /// Read with structural zeros: entries above the diagonal (m > n) are 0.
    #[inline]
    pub(crate) fn at(&self, n: usize, m: usize) -> Complex64 {
        if m > n {
            Complex64::ZERO
        } else {
            self.data[Self::idx(n, m)]
        }
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    /// Iterate entries in (n, m) order: (0,0), (1,0), (1,1), (2,0), ...
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.p).flat_map(move |n| (0..=n).map(move |m| (n, m, self.data[Self::idx(n, m)])))
    }

    /// Largest entry magnitude at degree n; used to normalize comparisons.
    pub fn degree_max(&self, n: usize) -> f64 {
        (0..=n).map(|m| self.get(n, m).norm()).fold(0.0, f64::max)
    }
}

/// Regular solid harmonics R(n, m) in tilde normalization, all degrees below p.
///
/// Degree ascent: n R(n,m) = -xi R(n-1,m-1) + eta R(n-1,m+1) - z R(n-1,m) for
/// m >= 1, and n R(n,0) = 2 Re[eta R(n-1,1)] - z R(n-1,0), seeded with R(0,0) = 1.
/// Reads above the diagonal are structural zeros. Valid at any point, including
/// the origin.
pub fn eval_regular_tilde(point: Point3, p: usize) -> Result<TriangularCoeffs> {
    let mut c = TriangularCoeffs::zeros(p)?;
    c.set(0, 0, Complex64::ONE);
    let s = ComplexSplit::of(point);
    for n in 1..p {
        let inv = 1.0 / n as f64;
        for m in (1..=n).rev() {
            let v = -s.xi * c.at(n - 1, m - 1) + s.eta * c.at(n - 1, m + 1)
                - s.z * c.at(n - 1, m);
            c.set(n, m, v * inv);
        }
        let re = 2.0 * (s.eta * c.at(n - 1, 1)).re - s.z * c.at(n - 1, 0).re;
        c.set(n, 0, Complex64::new(re * inv, 0.0));
    }
    Ok(c)
}

/// Singular solid harmonics S(n, m) in tilde normalization, all degrees below p.
///
/// Built from the diagonal S(m,m) = (2m-1) * 2 xi * S(m-1,m-1) / r^2 with
/// S(0,0) = 1/r, then raised in degree by
/// S(n+1,m) = [(2n+1) z S(n,m) - (n^2 - m^2) S(n-1,m)] / r^2.
/// Stable for truncations up to around 60; errors on a zero-radius point.
pub fn eval_singular_tilde(point: Point3, p: usize) -> Result<TriangularCoeffs> {
    let r2 = point.norm_sq();
    if r2 == 0.0 {
        return Err(Error::ZeroRadius);
    }
    let inv_r2 = 1.0 / r2;
    let mut c = TriangularCoeffs::zeros(p)?;
    c.set(0, 0, Complex64::new(r2.sqrt().recip(), 0.0));
    let s = ComplexSplit::of(point);
    let two_xi = 2.0 * s.xi;
    for m in 1..p {
        let diag = (2 * m - 1) as f64 * two_xi * c.get(m - 1, m - 1) * inv_r2;
        c.set(m, m, diag);
    }
    for m in 0..p {
        for n in m..p.saturating_sub(1) {
            let below = if n == m { Complex64::ZERO } else { c.get(n - 1, m) };
            let v = ((2 * n + 1) as f64 * s.z * c.get(n, m) - ((n * n - m * m) as f64) * below)
                * inv_r2;
            c.set(n + 1, m, v);
        }
    }
    Ok(c)
}

/// Real-valued coefficient array over the full index range -n <= m <= n.
#[derive(Debug, Clone, PartialEq)]
pub struct RealCoeffs {
    p: usize,
    data: Vec<f64>,
}

impl RealCoeffs {
    pub fn truncation(&self) -> usize {
        self.p
    }

    /// Entry (n, m) with -n <= m <= n; index n^2 + n + m into the packed array.
    pub fn get(&self, n: usize, m: isize) -> f64 {
        assert!(n < self.p && m.unsigned_abs() <= n, "real index ({n},{m}) out of range");
        self.data[n * n + (n as isize + m) as usize]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

/// Collapse a conjugate-symmetric complex set to its real form: the m >= 0 slot
/// holds Re c(n,m), the -m slot holds -Im c(n,m) (equal to Im c(n,-m)). The map
/// is a bijection on conjugate-symmetric sets.
pub fn to_real_basis(c: &TriangularCoeffs) -> RealCoeffs {
    let p = c.truncation();
    let mut data = vec![0.0; p * p];
    for (n, m, v) in c.iter() {
        data[n * n + n + m] = v.re;
        if m > 0 {
            data[n * n + n - m] = -v.im;
        }
    }
    RealCoeffs { p, data }
}
