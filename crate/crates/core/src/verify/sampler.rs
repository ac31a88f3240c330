use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::VerifyError;
use crate::series::PowerSeries;

fn factorial(n: usize) -> f64 {
    (1..=n).map(|v| v as f64).product()
}

/// `1 + sum_{n=1..degree} c_n z^n` with random phases and
/// `sum |c_n| = radius`.
fn random_factor(rng: &mut ChaCha8Rng, degree: usize, radius: f64) -> Vec<Complex64> {
    let weights: Vec<f64> = (0..degree).map(|_| rng.random::<f64>()).collect();
    let total: f64 = weights.iter().sum();
    let mut out = vec![Complex64::new(1.0, 0.0)];
    for w in weights {
        let modulus = if total > 0.0 { radius * w / total } else { 0.0 };
        let phase = TAU * rng.random::<f64>();
        out.push(Complex64::from_polar(modulus, phase));
    }
    out
}

fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Random `h(z) = 1 + ...` of degree at most `n - 1` with
/// `|arg h(z)| < bound` on the whole closed unit disk.
///
/// `h` is a product of `m` factors `1 + w_j(z)` with
/// `max |w_j| <= sum |c| = sin(bound / m) u_j`, `u_j` in `[0, 1)`. Each factor
/// then satisfies `|arg| <= asin(sin(bound / m) u_j) < bound / m`.
fn sector_polynomial(rng: &mut ChaCha8Rng, bound: f64, n: usize) -> Vec<Complex64> {
    let factors = if bound <= FRAC_PI_2 { 1 } else { 2 }.min(n - 1);
    let degree = (n - 1) / factors;
    let share = bound / factors as f64;
    let mut h = vec![Complex64::new(1.0, 0.0)];
    for _ in 0..factors {
        let u = rng.random::<f64>();
        h = poly_mul(&h, &random_factor(rng, degree, share.sin() * u));
    }
    h.resize(n, Complex64::new(0.0, 0.0));
    h
}

/// Builds `f` with `f^(p) = p! h` where `|arg h| < bound` on the closed disk,
/// so the sector hypothesis on the `p`-th derivative holds by construction.
///
/// `bound` may be anything in `(0, pi)`; beyond `pi/2` the sector is split
/// across two factors. With `s_gap = Some(s)` the result is a general series
/// with `a_{s-1} = 0`, `a_s = 1` and `f^(s) = s! h` (`p` is then unused), plus
/// random lower coefficients `a_1..a_{s-2}`.
pub fn sample_hypothesis_function(
    seed: u64,
    p: usize,
    bound: f64,
    n: usize,
    s_gap: Option<usize>,
) -> Result<PowerSeries, VerifyError> {
    if !(bound > 0.0 && bound < PI) {
        return Err(VerifyError::ParamOutOfRange(format!(
            "sampler bound must lie in (0, pi), got {bound}"
        )));
    }
    if n < 2 {
        return Err(VerifyError::ParamOutOfRange(format!(
            "sampler needs at least 2 terms, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = s_gap.unwrap_or(p);
    if order < 1 {
        return Err(VerifyError::ParamOutOfRange("p must be at least 1".into()));
    }
    if matches!(s_gap, Some(s) if s < 2) {
        return Err(VerifyError::ParamOutOfRange(
            "gap index must be at least 2".into(),
        ));
    }
    let h = sector_polynomial(&mut rng, bound, n);
    let scale = factorial(order);
    let fp = PowerSeries::new(0, h.into_iter().map(|c| c * scale).collect())?;
    let f = fp.integrate(order);
    let mut coeffs: Vec<Complex64> = f.coeffs().to_vec();
    coeffs[0] = Complex64::new(1.0, 0.0);
    match s_gap {
        None => PowerSeries::new(order, coeffs).map_err(Into::into),
        Some(s) => {
            // a_1 .. a_{s-2}, then a_{s-1} = 0, then the tail starting at a_s
            let mut lower: Vec<Complex64> = (1..s - 1)
                .map(|_| Complex64::from_polar(rng.random::<f64>(), TAU * rng.random::<f64>()))
                .collect();
            lower.push(Complex64::new(0.0, 0.0));
            lower.extend(coeffs);
            PowerSeries::new(1, lower).map_err(Into::into)
        }
    }
}
