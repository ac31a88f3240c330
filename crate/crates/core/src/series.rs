//! Truncated complex power series `z^p + a_{p+1} z^{p+1} + ...` and the
//! starlikeness / convexity functionals evaluated on them.
//!
//! A [`PowerSeries`] stores its coefficients in ascending exponent order,
//! starting at exponent [`PowerSeries::order`]. Every disk check in this crate
//! runs on the truncated polynomial itself, so results are exact statements
//! about a concrete polynomial rather than approximations of an infinite
//! series.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Moduli below this are treated as zeros when dividing.
pub const ZERO_TOL: f64 = 1e-13;

/// Default number of stored coefficients.
pub const DEFAULT_TRUNCATION: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("valence order must be at least 1, got {0}")]
    InvalidOrder(usize),
    #[error("truncation must be at least 1, got {0}")]
    InvalidTruncation(usize),
    #[error("expected {expected} tail coefficients for truncation {truncation}, got {got}")]
    TailLength {
        expected: usize,
        got: usize,
        truncation: usize,
    },
    #[error("coefficient {index} is not finite")]
    NonFinite { index: usize },
    #[error("point {re}+{im}i is outside the open unit disk")]
    OutsideDisk { re: f64, im: f64 },
    #[error("denominator modulus {modulus:e} at {re}+{im}i is below the zero tolerance")]
    DivisionNearZero { re: f64, im: f64, modulus: f64 },
    #[error("argument of zero is undefined")]
    ArgOfZero,
}

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPoint(Complex64);

impl EvalPoint {
    pub fn new(z: Complex64) -> Result<Self, SeriesError> {
        if !(z.re.is_finite() && z.im.is_finite()) || z.norm() >= 1.0 {
            return Err(SeriesError::OutsideDisk { re: z.re, im: z.im });
        }
        Ok(Self(z))
    }

    pub fn from_parts(re: f64, im: f64) -> Result<Self, SeriesError> {
        Self::new(Complex64::new(re, im))
    }

    pub fn z(self) -> Complex64 {
        self.0
    }
}

impl TryFrom<Complex64> for EvalPoint {
    type Error = SeriesError;

    fn try_from(z: Complex64) -> Result<Self, Self::Error> {
        Self::new(z)
    }
}

/// Truncated power series `sum_j coeffs[j] * z^(order + j)`.
///
/// The stored form is canonical: the first coefficient is nonzero unless the
/// series is identically zero, in which case it is the single coefficient `0`
/// at order 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerSeries {
    order: usize,
    coeffs: Vec<Complex64>,
}

impl PowerSeries {
    /// Builds a series from raw coefficients, stripping exact leading zeros.
    pub fn new(order: usize, coeffs: Vec<Complex64>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::InvalidTruncation(0));
        }
        if let Some(index) = coeffs
            .iter()
            .position(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(SeriesError::NonFinite { index });
        }
        Ok(Self::canonical(order, coeffs))
    }

    /// `z^p + sum_j tail[j] z^(p+1+j)` with `n` stored terms. Unlike
    /// [`make_series`] this accepts `p = 0`, which is how `q(z) = 1 + ...`
    /// inputs are represented.
    pub fn with_unit_leading(p: usize, tail: &[Complex64], n: usize) -> Result<Self, SeriesError> {
        if n < 1 {
            return Err(SeriesError::InvalidTruncation(n));
        }
        if tail.len() + 1 != n {
            return Err(SeriesError::TailLength {
                expected: n - 1,
                got: tail.len(),
                truncation: n,
            });
        }
        let mut coeffs = Vec::with_capacity(n);
        coeffs.push(Complex64::new(1.0, 0.0));
        coeffs.extend_from_slice(tail);
        if let Some(index) = coeffs
            .iter()
            .position(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(SeriesError::NonFinite { index });
        }
        Ok(Self { order: p, coeffs })
    }

    pub fn monomial(p: usize) -> Self {
        Self {
            order: p,
            coeffs: vec![Complex64::new(1.0, 0.0)],
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::canonical(0, vec![c])
    }

    pub fn zero() -> Self {
        Self {
            order: 0,
            coeffs: vec![Complex64::new(0.0, 0.0)],
        }
    }

    fn canonical(order: usize, mut coeffs: Vec<Complex64>) -> Self {
        let lead = coeffs.iter().position(|c| *c != Complex64::new(0.0, 0.0));
        match lead {
            None => Self::zero(),
            Some(0) => Self { order, coeffs },
            Some(k) => {
                coeffs.drain(..k);
                Self {
                    order: order + k,
                    coeffs,
                }
            }
        }
    }

    /// Exponent of the first stored coefficient.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Number of stored coefficients.
    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    /// Highest stored exponent.
    pub fn degree(&self) -> usize {
        self.order + self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Complex64::new(0.0, 0.0)
    }

    /// Coefficient of `z^exponent` (zero outside the stored range).
    pub fn coefficient(&self, exponent: usize) -> Complex64 {
        if self.is_zero() || exponent < self.order {
            return Complex64::new(0.0, 0.0);
        }
        self.coeffs
            .get(exponent - self.order)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// True for members of `A_p`: order at least 1 and leading coefficient 1.
    pub fn is_normalized(&self) -> bool {
        self.order >= 1 && self.coeffs[0] == Complex64::new(1.0, 0.0)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::canonical(self.order, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Term-by-term `k`-th derivative. Terms whose exponent would drop below
    /// zero vanish.
    pub fn differentiate(&self, k: usize) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let first = self.order.max(k);
        if first > self.degree() {
            return Self::zero();
        }
        let coeffs = (first..=self.degree())
            .map(|e| self.coeffs[e - self.order] * falling_factorial(e, k))
            .collect();
        Self::canonical(first - k, coeffs)
    }

    /// Term-by-term `k`-fold antiderivative with all integration constants 0.
    pub fn integrate(&self, k: usize) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let e = self.order + j;
                c / falling_factorial(e + k, k)
            })
            .collect();
        Self::canonical(self.order + k, coeffs)
    }

    /// Horner value of the stored polynomial without the `z^order` factor.
    pub(crate) fn reduced(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// Evaluation without the open-disk check.
    pub(crate) fn value_at(&self, z: Complex64) -> Complex64 {
        self.reduced(z) * z.powu(self.order as u32)
    }

    /// `s(z) / z^m`, computed from the reduced polynomial so that the known
    /// zero at the origin never enters a division.
    pub(crate) fn over_power(&self, z: Complex64, m: usize) -> Complex64 {
        let r = self.reduced(z);
        match self.order.cmp(&m) {
            std::cmp::Ordering::Equal => r,
            std::cmp::Ordering::Greater => r * z.powu((self.order - m) as u32),
            std::cmp::Ordering::Less => r / z.powu((m - self.order) as u32),
        }
    }

    pub fn eval(&self, z: EvalPoint) -> Complex64 {
        self.value_at(z.z())
    }
}

fn falling_factorial(top: usize, k: usize) -> f64 {
    ((top + 1 - k)..=top).map(|v| v as f64).product()
}

/// `z^p + sum_j tail[j] z^(p+1+j)`, a member of `A_p` truncated at `n` terms.
pub fn make_series(p: usize, tail: &[Complex64], n: usize) -> Result<PowerSeries, SeriesError> {
    if p < 1 {
        return Err(SeriesError::InvalidOrder(p));
    }
    PowerSeries::with_unit_leading(p, tail, n)
}

pub fn differentiate(s: &PowerSeries, k: usize) -> PowerSeries {
    s.differentiate(k)
}

pub fn integrate(s: &PowerSeries, k: usize) -> PowerSeries {
    s.integrate(k)
}

pub fn eval(s: &PowerSeries, z: EvalPoint) -> Complex64 {
    s.eval(z)
}

/// `z * num(z) / den(z)` evaluated from reduced polynomials. The zero
/// tolerance applies to `den(z) / z^order(den)`, i.e. to genuine zeros of the
/// denominator rather than to its zero at the origin.
pub(crate) fn log_ratio(
    num: &PowerSeries,
    den: &PowerSeries,
    z: Complex64,
) -> Result<Complex64, SeriesError> {
    let d = den.reduced(z);
    let modulus = d.norm();
    if den.is_zero() || modulus < ZERO_TOL {
        return Err(SeriesError::DivisionNearZero {
            re: z.re,
            im: z.im,
            modulus,
        });
    }
    if num.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let n = num.reduced(z);
    let shift = (num.order + 1) as i64 - den.order as i64;
    let q = n / d;
    Ok(match shift.cmp(&0) {
        std::cmp::Ordering::Equal => q,
        std::cmp::Ordering::Greater => q * z.powu(shift as u32),
        std::cmp::Ordering::Less => q / z.powu((-shift) as u32),
    })
}

/// Starlikeness functional `z f'(z) / f(z)`.
pub fn jst(f: &PowerSeries, z: EvalPoint) -> Result<Complex64, SeriesError> {
    let z = z.z();
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(f.order as f64, 0.0));
    }
    log_ratio(&f.differentiate(1), f, z)
}

/// Convexity functional `1 + z f''(z) / f'(z)`.
pub fn jcv(f: &PowerSeries, z: EvalPoint) -> Result<Complex64, SeriesError> {
    let w = z.z();
    let fp = f.differentiate(1);
    if w == Complex64::new(0.0, 0.0) {
        if fp.is_zero() {
            return Err(SeriesError::DivisionNearZero {
                re: 0.0,
                im: 0.0,
                modulus: 0.0,
            });
        }
        return Ok(Complex64::new(1.0 + fp.order as f64, 0.0));
    }
    Ok(log_ratio(&fp.differentiate(1), &fp, w)? + 1.0)
}

/// Principal argument in `(-pi, pi]`.
pub fn principal_arg(w: Complex64) -> Result<f64, SeriesError> {
    if w == Complex64::new(0.0, 0.0) {
        return Err(SeriesError::ArgOfZero);
    }
    if w.im == 0.0 && w.re < 0.0 {
        // atan2 returns -pi for a negative zero imaginary part
        return Ok(std::f64::consts::PI);
    }
    Ok(w.im.atan2(w.re))
}
