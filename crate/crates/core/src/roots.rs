//! Bisection solvers for the implicit constants: the Corollary-style root
//! `gamma0`, the alpha-sequence, its explicit majorant and the admissible
//! range of `delta`.
//!
//! Every equation solved here has a left-hand side that is strictly
//! increasing in the unknown, so all roots are bracketed and found by plain
//! bisection. The returned root is always the midpoint of the final bracket.

use std::f64::consts::{FRAC_2_PI, PI};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error(
        "bracket [{lo}, {hi}] does not straddle a sign change (g(lo) = {g_lo}, g(hi) = {g_hi})"
    )]
    BracketInvalid {
        lo: f64,
        hi: f64,
        g_lo: f64,
        g_hi: f64,
    },
    #[error("no convergence after {iterations} iterations; bracket [{lo}, {hi}]")]
    NoConvergence { lo: f64, hi: f64, iterations: usize },
    #[error("invalid solver input: {0}")]
    InvalidInput(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootConfig {
    pub abs_tol: f64,
    pub max_iter: usize,
}

impl Default for RootConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            max_iter: 200,
        }
    }
}

impl RootConfig {
    pub fn new(abs_tol: f64, max_iter: usize) -> Result<Self, RootError> {
        if !(abs_tol > 0.0 && abs_tol.is_finite()) {
            return Err(RootError::InvalidInput(format!(
                "abs_tol must be positive, got {abs_tol}"
            )));
        }
        if max_iter < 1 {
            return Err(RootError::InvalidInput(
                "max_iter must be at least 1".into(),
            ));
        }
        Ok(Self { abs_tol, max_iter })
    }
}

/// Root of a strictly increasing `g` on `[lo, hi]`, requiring
/// `g(lo) < 0 < g(hi)`. Halves the bracket until its width is at most
/// `cfg.abs_tol` (or until f64 can no longer split it) and returns the
/// midpoint.
pub fn bisect_increasing<G>(g: G, lo: f64, hi: f64, cfg: &RootConfig) -> Result<f64, RootError>
where
    G: Fn(f64) -> f64,
{
    let (g_lo, g_hi) = (g(lo), g(hi));
    if !(lo < hi && g_lo < 0.0 && g_hi > 0.0) {
        return Err(RootError::BracketInvalid { lo, hi, g_lo, g_hi });
    }
    let (mut lo, mut hi) = (lo, hi);
    let mut iterations = 0;
    while hi - lo > cfg.abs_tol {
        if iterations == cfg.max_iter {
            return Err(RootError::NoConvergence { lo, hi, iterations });
        }
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Ok(lo + 0.5 * (hi - lo))
}

/// `x + (2/pi) atan(x / k)`, the left side of the alpha recurrence.
fn alpha_lhs(x: f64, k: f64) -> f64 {
    x + FRAC_2_PI * (x / k).atan()
}

/// A root together with the bound it induces and its defining residual.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImplicitConstant {
    pub root: f64,
    pub bound: f64,
    pub residual: f64,
}

/// Positive root of `2g + (2/pi) atan(g) = 1`. `bound` is
/// `g + (2/pi) atan(g)`, the sector factor of the corresponding hypothesis.
pub fn solve_gamma0(cfg: &RootConfig) -> Result<ImplicitConstant, RootError> {
    let g = |x: f64| 2.0 * x + FRAC_2_PI * x.atan() - 1.0;
    let root = bisect_increasing(g, 0.0, 1.0, cfg)?;
    Ok(ImplicitConstant {
        root,
        bound: alpha_lhs(root, 1.0),
        residual: g(root).abs(),
    })
}

/// Positive root of `2d + (2/pi) atan(d) = 2`, the supremum of admissible
/// `delta`. `bound` is `d + (2/pi) atan(d)` at the root.
pub fn solve_delta_max(cfg: &RootConfig) -> Result<ImplicitConstant, RootError> {
    let g = |x: f64| 2.0 * x + FRAC_2_PI * x.atan() - 2.0;
    let root = bisect_increasing(g, 0.0, 2.0, cfg)?;
    Ok(ImplicitConstant {
        root,
        bound: alpha_lhs(root, 1.0),
        residual: g(root).abs(),
    })
}

/// Unique `a` in `(0, alpha_prev)` with `a + (2/pi) atan(a / k) = alpha_prev`.
pub fn alpha_next(k: usize, alpha_prev: f64, cfg: &RootConfig) -> Result<f64, RootError> {
    if k < 1 {
        return Err(RootError::InvalidInput("k must be at least 1".into()));
    }
    if !(alpha_prev > 0.0 && alpha_prev.is_finite()) {
        return Err(RootError::InvalidInput(format!(
            "alpha_prev must be positive, got {alpha_prev}"
        )));
    }
    let kf = k as f64;
    bisect_increasing(|x| alpha_lhs(x, kf) - alpha_prev, 0.0, alpha_prev, cfg)
}

/// `alpha_0, ..., alpha_n` with the residual of each chained solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaSequence {
    pub alpha0: f64,
    pub values: Vec<f64>,
    /// `residuals[k] = |a_k + (2/pi) atan(a_k / k) - a_{k-1}|`; entry 0 is 0.
    pub residuals: Vec<f64>,
}

impl AlphaSequence {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `alpha_k + alpha_{k-1}` for `k >= 1`.
    pub fn pair_sum(&self, k: usize) -> f64 {
        self.values[k] + self.values[k - 1]
    }

    /// First `sigma >= from` with `alpha_sigma + alpha_{sigma-1} <= 1` among
    /// the computed values.
    pub fn first_pair_sum_at_most_one(&self, from: usize) -> Option<usize> {
        (from.max(1)..self.values.len()).find(|&k| self.pair_sum(k) <= 1.0)
    }
}

pub fn alpha_sequence(alpha0: f64, n: usize, cfg: &RootConfig) -> Result<AlphaSequence, RootError> {
    if !(alpha0 > 0.0 && alpha0 <= 1.5) {
        return Err(RootError::InvalidInput(format!(
            "alpha0 must lie in (0, 3/2], got {alpha0}"
        )));
    }
    let mut values = Vec::with_capacity(n + 1);
    let mut residuals = Vec::with_capacity(n + 1);
    values.push(alpha0);
    residuals.push(0.0);
    for k in 1..=n {
        let prev = values[k - 1];
        let next = alpha_next(k, prev, cfg)?;
        residuals.push((alpha_lhs(next, k as f64) - prev).abs());
        values.push(next);
    }
    Ok(AlphaSequence {
        alpha0,
        values,
        residuals,
    })
}

/// First `sigma >= 1` with `alpha_sigma + alpha_{sigma-1} <= 1`, extending the
/// chain up to `max_k` terms. The sequence tends to zero, so such a `sigma`
/// always exists; `None` means only that `max_k` was too small.
pub fn pair_sum_threshold(
    alpha0: f64,
    max_k: usize,
    cfg: &RootConfig,
) -> Result<Option<usize>, RootError> {
    let seq = alpha_sequence(alpha0, max_k, cfg)?;
    Ok(seq.first_pair_sum_at_most_one(1))
}

/// The explicit majorant `x_k = x_{k-1} / (1 + 1/(k pi))`, `x_0 = 2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MajorantSequence {
    pub values: Vec<f64>,
    /// `2 / prod_{j<=k} (1 + 1/(j pi))`, computed independently of the recurrence.
    pub closed_form: Vec<f64>,
}

pub fn majorant_sequence(n: usize) -> MajorantSequence {
    let mut values = Vec::with_capacity(n + 1);
    values.push(2.0);
    for k in 1..=n {
        let prev = values[k - 1];
        values.push(prev / (1.0 + 1.0 / (k as f64 * PI)));
    }
    let closed_form = (0..=n)
        .map(|k| {
            let denom: f64 = (1..=k).map(|j| 1.0 + 1.0 / (j as f64 * PI)).product();
            2.0 / denom
        })
        .collect();
    MajorantSequence {
        values,
        closed_form,
    }
}

/// Lower bound and value of `log prod_{k<=n} (1 + 1/(k pi))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogProductBound {
    pub n: usize,
    /// `(1/pi) sum_{k<=n} 1/(k + 1/pi)`
    pub harmonic_sum: f64,
    pub log_product: f64,
}

pub fn log_product_bound(n: usize) -> LogProductBound {
    let harmonic_sum = (1..=n).map(|k| 1.0 / (k as f64 + 1.0 / PI)).sum::<f64>() / PI;
    let log_product = (1..=n).map(|k| (1.0 / (k as f64 * PI)).ln_1p()).sum();
    LogProductBound {
        n,
        harmonic_sum,
        log_product,
    }
}
