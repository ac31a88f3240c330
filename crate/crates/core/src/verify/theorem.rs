//! Hypothesis/conclusion checks for each argument-bound implication.
//!
//! Every check evaluates the hypothesis quantity on the grid first. Only when
//! it holds strictly are the conclusion quantities evaluated; a conclusion
//! `value < bound` counts as violated when `value > bound + CONCLUSION_SLACK`
//! (and symmetrically for lower bounds).

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::{min_real_by, sup_abs_arg_by, sup_arg_on, zero_on_grid, GridSamples};
use super::{DiskGrid, VerifyError};
use crate::roots::{alpha_sequence, solve_delta_max, solve_gamma0, RootConfig};
use crate::series::{log_ratio, PowerSeries, SeriesError};

pub const CONCLUSION_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum TheoremId {
    T1,
    C1,
    C2,
    T3,
    T4,
    T5,
    L2,
    L3,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::T1,
        TheoremId::C1,
        TheoremId::C2,
        TheoremId::T3,
        TheoremId::T4,
        TheoremId::T5,
        TheoremId::L2,
        TheoremId::L3,
    ];
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TheoremId::T1 => "T1",
            TheoremId::C1 => "C1",
            TheoremId::C2 => "C2",
            TheoremId::T3 => "T3",
            TheoremId::T4 => "T4",
            TheoremId::T5 => "T5",
            TheoremId::L2 => "L2",
            TheoremId::L3 => "L3",
        };
        f.write_str(s)
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|id| id.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                format!("unknown theorem id `{s}` (expected one of t1 c1 c2 t3 t4 t5 l2 l3)")
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TheoremParams {
    /// `|arg f^(p)| < (pi/2)(a1 + (2/pi) atan a1)` implies
    /// `|arg f^(p-1)/z| < a1 pi / 2`, for `a1` in `(0, 1]`.
    T1 { alpha1: f64 },
    /// The `a1 = 1` case plus positivity of `Re f^(p-k-1)/z^(k+1)`.
    C1,
    /// Sector `gamma0 + (2/pi) atan(gamma0)` implies `|arg z f'/f| < pi/2`.
    C2,
    /// `|arg f^(p)| < pi a0 / 2` implies `|arg f^(p-k)/z^k| < pi a_k / 2`.
    T3 { alpha0: f64 },
    /// Log-derivative bounds `(pi/2)(a_s + a_{s-1})` built from the alpha chain.
    T4 { alpha0: f64 },
    /// Gap condition `a_{s-1} = 0`, `a_s != 0` with sector parameter `delta`.
    T5 { delta: f64, s: usize },
    /// `Re z f^(p)/f^(p-1) > 0` propagates to every lower order.
    L2,
    /// `Re p + z f^(p+1)/f^(p) > 0` propagates to every lower order.
    L3,
}

impl TheoremParams {
    pub fn id(&self) -> TheoremId {
        match self {
            TheoremParams::T1 { .. } => TheoremId::T1,
            TheoremParams::C1 => TheoremId::C1,
            TheoremParams::C2 => TheoremId::C2,
            TheoremParams::T3 { .. } => TheoremId::T3,
            TheoremParams::T4 { .. } => TheoremId::T4,
            TheoremParams::T5 { .. } => TheoremId::T5,
            TheoremParams::L2 => TheoremId::L2,
            TheoremParams::L3 => TheoremId::L3,
        }
    }

    pub fn validate(&self) -> Result<(), VerifyError> {
        match *self {
            TheoremParams::T1 { alpha1 } if !(alpha1 > 0.0 && alpha1 <= 1.0) => Err(
                VerifyError::ParamOutOfRange(format!("alpha1 must lie in (0, 1], got {alpha1}")),
            ),
            TheoremParams::T3 { alpha0 } | TheoremParams::T4 { alpha0 }
                if !(alpha0 > 0.0 && alpha0 <= 1.5) =>
            {
                Err(VerifyError::ParamOutOfRange(format!(
                    "alpha0 must lie in (0, 3/2], got {alpha0}"
                )))
            }
            TheoremParams::T5 { s, .. } if s < 2 => Err(VerifyError::ParamOutOfRange(format!(
                "gap index s must be at least 2, got {s}"
            ))),
            TheoremParams::T5 { delta, .. } => {
                let delta_max = solve_delta_max(&RootConfig::default())?.root;
                if delta > 0.0 && delta < delta_max {
                    Ok(())
                } else {
                    Err(VerifyError::ParamOutOfRange(format!(
                        "delta must lie in (0, {delta_max}), got {delta}"
                    )))
                }
            }
            _ => Ok(()),
        }
    }
}

/// Parameters as they appear in reports.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ParamRecord {
    pub p: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s: Option<usize>,
}

impl ParamRecord {
    pub fn new(params: &TheoremParams, p: usize) -> Self {
        let mut rec = ParamRecord {
            p,
            ..Default::default()
        };
        match *params {
            TheoremParams::T1 { alpha1 } => rec.alpha1 = Some(alpha1),
            TheoremParams::T3 { alpha0 } | TheoremParams::T4 { alpha0 } => {
                rec.alpha0 = Some(alpha0)
            }
            TheoremParams::T5 { delta, s } => {
                rec.delta = Some(delta);
                rec.s = Some(s);
            }
            _ => {}
        }
        rec
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    /// `value < bound`
    Below,
    /// `value > bound`
    Above,
}

/// One sampled quantity compared against its bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub label: String,
    pub value: f64,
    pub bound: f64,
    pub constraint: Constraint,
    /// Positive when the strict inequality holds.
    pub margin: f64,
    pub witness: Complex64,
}

impl Quantity {
    fn new(
        label: String,
        value: f64,
        bound: f64,
        constraint: Constraint,
        witness: Complex64,
    ) -> Self {
        let margin = match constraint {
            Constraint::Below => bound - value,
            Constraint::Above => value - bound,
        };
        Self {
            label,
            value,
            bound,
            constraint,
            margin,
            witness,
        }
    }

    pub fn holds_strictly(&self) -> bool {
        self.margin > 0.0
    }

    pub fn violated(&self) -> bool {
        self.margin < -CONCLUSION_SLACK
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    HypothesisNotSatisfied,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem_id: TheoremId,
    pub params: ParamRecord,
    pub hypothesis: Quantity,
    pub hypothesis_satisfied: bool,
    /// Empty unless the hypothesis holds.
    pub conclusions: Vec<Quantity>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
    pub grid: DiskGrid,
}

impl VerificationReport {
    pub fn hypothesis_sup(&self) -> f64 {
        self.hypothesis.value
    }

    pub fn hypothesis_bound(&self) -> f64 {
        self.hypothesis.bound
    }

    pub fn witnesses(&self) -> Vec<Complex64> {
        std::iter::once(self.hypothesis.witness)
            .chain(self.conclusions.iter().map(|q| q.witness))
            .collect()
    }

    /// The conclusion with the smallest margin.
    pub fn tightest(&self) -> Option<&Quantity> {
        self.conclusions
            .iter()
            .min_by(|a, b| a.margin.total_cmp(&b.margin))
    }
}

/// Bound on the hypothesis quantity: an angle for the sector theorems, `0`
/// for the real-part lemmas.
pub fn hypothesis_bound(params: &TheoremParams) -> Result<f64, VerifyError> {
    let cfg = RootConfig::default();
    Ok(match *params {
        TheoremParams::T1 { alpha1 } => FRAC_PI_2 * alpha1 + alpha1.atan(),
        TheoremParams::C1 => 0.75 * PI,
        TheoremParams::C2 => {
            let g = solve_gamma0(&cfg)?;
            FRAC_PI_2 * g.bound
        }
        TheoremParams::T3 { alpha0 } | TheoremParams::T4 { alpha0 } => FRAC_PI_2 * alpha0,
        TheoremParams::T5 { delta, .. } => FRAC_PI_2 * delta + delta.atan(),
        TheoremParams::L2 | TheoremParams::L3 => 0.0,
    })
}

fn d(k: usize) -> String {
    match k {
        0 => "f".to_string(),
        k => format!("f^({k})"),
    }
}

fn zpow(m: usize) -> String {
    match m {
        0 => String::new(),
        1 => "/z".to_string(),
        m => format!("/z^{m}"),
    }
}

fn from_series(e: SeriesError, context: &str) -> VerifyError {
    match e {
        SeriesError::DivisionNearZero { re, im, modulus } => {
            zero_on_grid(Complex64::new(re, im), modulus, context)
        }
        other => other.into(),
    }
}

/// Evaluates labelled quantities of one function on one grid.
struct Evaluator<'a> {
    derivs: Vec<PowerSeries>,
    samples: &'a GridSamples,
}

impl<'a> Evaluator<'a> {
    fn new(f: &PowerSeries, max_order: usize, samples: &'a GridSamples) -> Self {
        let mut derivs = Vec::with_capacity(max_order + 1);
        derivs.push(f.clone());
        for k in 1..=max_order {
            let next = derivs[k - 1].differentiate(1);
            derivs.push(next);
        }
        Self { derivs, samples }
    }

    fn points(&self) -> &[Complex64] {
        &self.samples.points
    }

    /// `|arg f^(k)/z^m| < bound`
    fn arg_over_power(&self, k: usize, m: usize, bound: f64) -> Result<Quantity, VerifyError> {
        let r = sup_arg_on(&self.derivs[k], m, self.points())?;
        Ok(Quantity::new(
            format!("|arg {}(z){}|", d(k), zpow(m)),
            r.sup_abs_arg,
            bound,
            Constraint::Below,
            r.witness,
        ))
    }

    /// `|arg z f^(k)/f^(k-1)| < bound`
    fn arg_log_ratio(&self, k: usize, bound: f64) -> Result<Quantity, VerifyError> {
        let label = format!("|arg z {}(z)/{}(z)|", d(k), d(k - 1));
        let (num, den) = (&self.derivs[k], &self.derivs[k - 1]);
        let r = sup_abs_arg_by(
            self.points(),
            |z| log_ratio(num, den, z).map_err(|e| from_series(e, &label)),
            &label,
        )?;
        Ok(Quantity::new(
            label,
            r.sup_abs_arg,
            bound,
            Constraint::Below,
            r.witness,
        ))
    }

    /// `Re(shift + z f^(k)/f^(k-1)) > 0`
    fn re_log_ratio(&self, k: usize, shift: usize) -> Result<Quantity, VerifyError> {
        let label = if shift == 0 {
            format!("Re z {}(z)/{}(z)", d(k), d(k - 1))
        } else {
            format!("Re {shift} + z {}(z)/{}(z)", d(k), d(k - 1))
        };
        let (num, den) = (&self.derivs[k], &self.derivs[k - 1]);
        let r = min_real_by(self.points(), |z| {
            log_ratio(num, den, z)
                .map(|w| w + shift as f64)
                .map_err(|e| from_series(e, &label))
        })?;
        Ok(Quantity::new(
            label,
            r.min_real,
            0.0,
            Constraint::Above,
            r.witness,
        ))
    }

    /// `Re f^(k)/z^m > 0`
    fn re_over_power(&self, k: usize, m: usize) -> Result<Quantity, VerifyError> {
        let label = format!("Re {}(z){}", d(k), zpow(m));
        let s = &self.derivs[k];
        let r = min_real_by(self.points(), |z| {
            let w = s.over_power(z, m);
            if w.norm() < crate::series::ZERO_TOL {
                return Err(zero_on_grid(z, w.norm(), &label));
            }
            Ok(w)
        })?;
        Ok(Quantity::new(
            label,
            r.min_real,
            0.0,
            Constraint::Above,
            r.witness,
        ))
    }
}

type Conclusions = Vec<Quantity>;

fn conclusions_for(
    params: &TheoremParams,
    p: usize,
    ev: &Evaluator<'_>,
    notes: &mut Vec<String>,
) -> Result<Conclusions, VerifyError> {
    let cfg = RootConfig::default();
    let mut out = Vec::new();
    match *params {
        TheoremParams::T1 { alpha1 } => {
            out.push(ev.arg_over_power(p - 1, 1, FRAC_PI_2 * alpha1)?);
        }
        TheoremParams::C1 => {
            out.push(ev.arg_over_power(p - 1, 1, FRAC_PI_2)?);
            for k in 0..p {
                out.push(ev.re_over_power(p - k - 1, k + 1)?);
            }
        }
        TheoremParams::C2 => {
            let gamma0 = solve_gamma0(&cfg)?.root;
            out.push(ev.arg_over_power(p - 1, 1, FRAC_PI_2 * gamma0)?);
            if p > 1 {
                out.push(ev.arg_log_ratio(p, FRAC_PI_2)?);
            }
            out.push(ev.arg_log_ratio(1, FRAC_PI_2)?);
        }
        TheoremParams::T3 { alpha0 } => {
            let seq = alpha_sequence(alpha0, p, &cfg)?;
            for k in 1..=p {
                out.push(ev.arg_over_power(p - k, k, FRAC_PI_2 * seq.values[k])?);
            }
        }
        TheoremParams::T4 { alpha0 } => {
            let seq = alpha_sequence(alpha0, p, &cfg)?;
            let a = &seq.values;
            if a[0] + a[1] < 2.0 {
                out.push(ev.arg_log_ratio(p, FRAC_PI_2 * (a[1] + a[0]))?);
            } else {
                notes.push("s = 1 omitted: alpha0 + alpha1 >= 2".into());
            }
            for s in 2..=p {
                out.push(ev.arg_log_ratio(p - s + 1, FRAC_PI_2 * (a[s] + a[s - 1]))?);
            }
            notes.push(
                "sigma is searched in 2..=p; the s = 1 bound is reported only when alpha0 + alpha1 < 2"
                    .into(),
            );
            match seq.first_pair_sum_at_most_one(2) {
                Some(sigma) => {
                    notes.push(format!("sigma = {sigma}"));
                    let mut q = ev.arg_log_ratio(1, FRAC_PI_2 * (a[p - 1] + a[p]))?;
                    q.label = format!("{} (starlike order)", q.label);
                    out.push(q);
                }
                None => {
                    notes.push("no sigma in 2..=p with alpha_sigma + alpha_(sigma-1) <= 1".into())
                }
            }
        }
        TheoremParams::T5 { delta, s } => {
            out.push(ev.arg_over_power(s - 1, 1, FRAC_PI_2 * delta)?);
            out.push(ev.arg_log_ratio(s, PI * delta + delta.atan())?);
        }
        TheoremParams::L2 => {
            for k in 1..=p {
                out.push(ev.re_log_ratio(k, 0)?);
            }
        }
        TheoremParams::L3 => {
            for k in 1..p {
                out.push(ev.re_log_ratio(k + 1, k)?);
            }
        }
    }
    Ok(out)
}

fn check_t5_input(f: &PowerSeries, s: usize) -> Result<(), VerifyError> {
    if f.coefficient(s - 1) != Complex64::new(0.0, 0.0) {
        return Err(VerifyError::ParamOutOfRange(format!(
            "T5 needs a_{} = 0",
            s - 1
        )));
    }
    let a_s = f.coefficient(s);
    if !(a_s.re > 0.0 && a_s.im == 0.0) {
        // the sector hypothesis on f^(s) is stated relative to a positive a_s
        return Err(VerifyError::ParamOutOfRange(format!(
            "T5 needs a_{s} real and positive, got {a_s}"
        )));
    }
    if f.order() < 1 {
        return Err(VerifyError::ParamOutOfRange("T5 needs f(0) = 0".into()));
    }
    Ok(())
}

pub(crate) fn check_on(
    params: &TheoremParams,
    f: &PowerSeries,
    samples: &GridSamples,
) -> Result<VerificationReport, VerifyError> {
    params.validate()?;
    let p = f.order();
    let max_order = match *params {
        TheoremParams::T5 { s, .. } => {
            check_t5_input(f, s)?;
            s
        }
        _ => {
            if !f.is_normalized() {
                return Err(VerifyError::ParamOutOfRange(
                    "f must be normalized as z^p + higher-order terms with p >= 1".into(),
                ));
            }
            if params.id() == TheoremId::L3 {
                p + 1
            } else {
                p
            }
        }
    };
    let ev = Evaluator::new(f, max_order, samples);
    let bound = hypothesis_bound(params)?;
    let hypothesis = match *params {
        TheoremParams::T5 { s, .. } => ev.arg_over_power(s, 0, bound)?,
        TheoremParams::L2 => ev.re_log_ratio(p, 0)?,
        TheoremParams::L3 => ev.re_log_ratio(p + 1, p)?,
        _ => ev.arg_over_power(p, 0, bound)?,
    };
    let hypothesis_satisfied = hypothesis.holds_strictly();
    let mut notes = Vec::new();
    let conclusions = if hypothesis_satisfied {
        conclusions_for(params, p, &ev, &mut notes)?
    } else {
        Vec::new()
    };
    let verdict = if !hypothesis_satisfied {
        Verdict::HypothesisNotSatisfied
    } else if conclusions.iter().any(Quantity::violated) {
        Verdict::Fail
    } else {
        Verdict::Pass
    };
    Ok(VerificationReport {
        theorem_id: params.id(),
        params: ParamRecord::new(params, p),
        hypothesis,
        hypothesis_satisfied,
        conclusions,
        verdict,
        notes,
        grid: samples.grid,
    })
}

/// Runs one implication check on `grid`.
pub fn check_theorem(
    params: &TheoremParams,
    f: &PowerSeries,
    grid: &DiskGrid,
) -> Result<VerificationReport, VerifyError> {
    check_on(params, f, &grid.samples())
}
