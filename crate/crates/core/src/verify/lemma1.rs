//! Numeric probe of the boundary-point lemma for `q(z) = 1 + c_m z^m + ...`.
//!
//! The probe finds the smallest radius `r0` at which `max |arg q|` over the
//! circle `|z| = r0` reaches `pi gamma / 2`, locates the maximizing angle and
//! reports the logarithmic derivative `z0 q'(z0) / q(z0)` there together with
//! the lemma's derived constants `k` and `a`.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::abs_arg_of;
use super::{DiskGrid, VerifyError};
use crate::roots::{bisect_increasing, RootConfig};
use crate::series::{PowerSeries, ZERO_TOL};

const ANGLE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lemma1Report {
    pub gamma: f64,
    /// `pi gamma / 2`
    pub level: f64,
    /// Index of the first nonzero coefficient after the constant term.
    pub m: usize,
    pub r0: f64,
    pub theta0: f64,
    pub z0: Complex64,
    pub q_z0: Complex64,
    pub arg_q_z0: f64,
    /// `z0 q'(z0) / q(z0)`
    pub ratio: Complex64,
    /// `(pi/2) |Im ratio| / |arg q(z0)|`
    pub k_est: f64,
    /// `|q(z0)|^(1/gamma)`, so that `q(z0)^(1/gamma) = +-i a`.
    pub a_est: f64,
    /// `m (a + 1/a) / 2`, the lemma's lower bound for `k`.
    pub k_lower_bound: f64,
    /// `|Re ratio|`; zero at an exact boundary point.
    pub imag_purity: f64,
    pub grid: DiskGrid,
}

/// Golden-section maximization of `g` on `[a, b]`.
fn golden_max<G: Fn(f64) -> f64>(g: G, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    while (b - a).abs() > tol {
        if gc > gd {
            b = d;
            d = c;
            gd = gc;
            c = b - inv_phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + inv_phi * (b - a);
            gd = g(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, g(x))
}

fn abs_arg_q(q: &PowerSeries, z: Complex64) -> Result<f64, VerifyError> {
    abs_arg_of(q.value_at(z), z, "lemma probe: |arg q|")
}

/// Maximum of `|arg q|` on the circle of radius `r`: coarse scan on the grid
/// angles, then golden-section refinement around the best coarse angle.
fn circle_max(q: &PowerSeries, r: f64, angles: &[f64]) -> Result<(f64, f64), VerifyError> {
    let mut best = (f64::NEG_INFINITY, 0.0);
    for &t in angles {
        let v = abs_arg_q(q, Complex64::from_polar(r, t))?;
        if v > best.0 {
            best = (v, t);
        }
    }
    let step = TAU / angles.len() as f64;
    let eval = |t: f64| abs_arg_q(q, Complex64::from_polar(r, t)).unwrap_or(f64::NEG_INFINITY);
    let (t, v) = golden_max(eval, best.1 - step, best.1 + step, ANGLE_TOL);
    if v > best.0 {
        Ok((v, t.rem_euclid(TAU)))
    } else {
        Ok((best.0, best.1))
    }
}

/// Probes `q` (with `q(0) = 1`) for the first boundary point at level
/// `pi gamma / 2` inside `|z| <= grid.r_max`.
pub fn lemma1_probe(
    q: &PowerSeries,
    gamma: f64,
    grid: &DiskGrid,
) -> Result<Lemma1Report, VerifyError> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(VerifyError::ParamOutOfRange(format!(
            "gamma must be positive, got {gamma}"
        )));
    }
    if q.order() != 0 || q.coeffs()[0] != Complex64::new(1.0, 0.0) {
        return Err(VerifyError::ParamOutOfRange("probe needs q(0) = 1".into()));
    }
    let level = FRAC_PI_2 * gamma;
    let m = (1..q.truncation()).find(|&j| q.coeffs()[j] != Complex64::new(0.0, 0.0));
    let angles = grid.angles();
    let radii = grid.radii();

    let mut best_sup: f64 = 0.0;
    let mut hit = None;
    for (i, &r) in radii.iter().enumerate() {
        let mut sup: f64 = 0.0;
        for &t in &angles {
            sup = sup.max(abs_arg_q(q, Complex64::from_polar(r, t))?);
        }
        best_sup = best_sup.max(sup);
        if sup >= level {
            hit = Some(i);
            break;
        }
    }
    let (Some(i), Some(m)) = (hit, m) else {
        return Err(VerifyError::NotAttained { level, best_sup });
    };

    let cfg = RootConfig::default();
    let excess = |r: f64| match circle_max(q, r, &angles) {
        Ok((v, _)) => v - level,
        Err(_) => f64::INFINITY,
    };
    let r_hi = radii[i];
    let r0 = if excess(r_hi) <= 0.0 {
        r_hi
    } else {
        let lo = if i > 0 && excess(radii[i - 1]) < 0.0 {
            radii[i - 1]
        } else {
            0.0
        };
        bisect_increasing(excess, lo, r_hi, &cfg)?
    };
    let (_, theta0) = circle_max(q, r0, &angles)?;
    let z0 = Complex64::from_polar(r0, theta0);
    let q_z0 = q.value_at(z0);
    if q_z0.norm() < ZERO_TOL {
        return Err(super::grid::zero_on_grid(
            z0,
            q_z0.norm(),
            "lemma probe: q(z0)",
        ));
    }
    let ratio = z0 * q.differentiate(1).value_at(z0) / q_z0;
    let arg_q_z0 = q_z0.arg();
    let k_est = FRAC_PI_2 * ratio.im.abs() / arg_q_z0.abs();
    let a_est = q_z0.norm().powf(1.0 / gamma);
    Ok(Lemma1Report {
        gamma,
        level,
        m,
        r0,
        theta0,
        z0,
        q_z0,
        arg_q_z0,
        ratio,
        k_est,
        a_est,
        k_lower_bound: m as f64 * (a_est + 1.0 / a_est) / 2.0,
        imag_purity: ratio.re.abs(),
        grid: *grid,
    })
}
