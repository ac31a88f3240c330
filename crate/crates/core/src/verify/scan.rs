use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::theorem::{check_on, hypothesis_bound};
use super::{
    sample_hypothesis_function, DiskGrid, ParamRecord, TheoremId, TheoremParams, Verdict,
    VerifyError,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanConfig {
    pub theorem: TheoremParams,
    pub trials: usize,
    pub seed: u64,
    /// Valence of the sampled functions (ignored for T5, which uses `s`).
    pub p: usize,
    /// Stored terms of the sampled `p`-th derivative.
    pub n_terms: usize,
    /// Sector half-angle handed to the sampler; defaults to the theorem's
    /// hypothesis bound (or `pi/4` for the real-part lemmas).
    pub sampler_bound: Option<f64>,
    pub grid: DiskGrid,
}

impl ScanConfig {
    pub fn new(theorem: TheoremParams, trials: usize, seed: u64, p: usize) -> Self {
        Self {
            theorem,
            trials,
            seed,
            p,
            n_terms: 24,
            sampler_bound: None,
            grid: DiskGrid::default(),
        }
    }

    pub fn effective_sampler_bound(&self) -> Result<f64, VerifyError> {
        if let Some(b) = self.sampler_bound {
            return Ok(b);
        }
        Ok(match self.theorem {
            TheoremParams::L2 | TheoremParams::L3 => FRAC_PI_4,
            ref t => hypothesis_bound(t)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialVerdict {
    pub trial: usize,
    pub seed: u64,
    pub verdict: Verdict,
    /// Smallest conclusion margin; absent when the hypothesis failed.
    pub min_margin: Option<f64>,
}

/// The trial whose tightest conclusion came closest to its bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorstCase {
    pub trial: usize,
    pub seed: u64,
    pub label: String,
    pub value: f64,
    pub bound: f64,
    pub margin: f64,
    pub witness: Complex64,
    pub order: usize,
    pub coefficients: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub theorem_id: TheoremId,
    pub params: ParamRecord,
    pub trials: usize,
    pub seed: u64,
    pub n_terms: usize,
    pub sampler_bound: f64,
    pub passed: usize,
    pub failed: usize,
    pub hypothesis_not_satisfied: usize,
    pub worst: Option<WorstCase>,
    pub verdicts: Vec<TrialVerdict>,
    pub grid: DiskGrid,
}

/// Runs the implication check over `trials` sampled functions.
///
/// Per-trial seeds are drawn from one ChaCha stream seeded with `seed`, and
/// trials are collected in order, so the report does not depend on how the
/// work is scheduled.
pub fn counterexample_scan(cfg: &ScanConfig) -> Result<ScanReport, VerifyError> {
    if cfg.trials < 1 {
        return Err(VerifyError::ParamOutOfRange(
            "trials must be at least 1".into(),
        ));
    }
    cfg.theorem.validate()?;
    let bound = cfg.effective_sampler_bound()?;
    let mut master = ChaCha8Rng::seed_from_u64(cfg.seed);
    let seeds: Vec<u64> = (0..cfg.trials).map(|_| master.random()).collect();
    let gap = match cfg.theorem {
        TheoremParams::T5 { s, .. } => Some(s),
        _ => None,
    };
    let samples = cfg.grid.samples();

    let outcomes: Vec<_> = seeds
        .par_iter()
        .enumerate()
        .map(|(trial, &seed)| {
            let f = sample_hypothesis_function(seed, cfg.p, bound, cfg.n_terms, gap)?;
            let report = check_on(&cfg.theorem, &f, &samples)?;
            Ok((trial, seed, f, report))
        })
        .collect::<Result<_, VerifyError>>()?;

    let mut verdicts = Vec::with_capacity(outcomes.len());
    let mut worst: Option<WorstCase> = None;
    let (mut passed, mut failed, mut skipped) = (0, 0, 0);
    let mut params = ParamRecord::new(&cfg.theorem, cfg.p);
    for (trial, seed, f, report) in outcomes {
        params.p = report.params.p;
        match report.verdict {
            Verdict::Pass => passed += 1,
            Verdict::Fail => failed += 1,
            Verdict::HypothesisNotSatisfied => skipped += 1,
        }
        let tight = report.tightest();
        if let Some(q) = tight {
            if worst.as_ref().is_none_or(|w| q.margin < w.margin) {
                worst = Some(WorstCase {
                    trial,
                    seed,
                    label: q.label.clone(),
                    value: q.value,
                    bound: q.bound,
                    margin: q.margin,
                    witness: q.witness,
                    order: f.order(),
                    coefficients: f.coeffs().to_vec(),
                });
            }
        }
        verdicts.push(TrialVerdict {
            trial,
            seed,
            verdict: report.verdict,
            min_margin: tight.map(|q| q.margin),
        });
    }
    Ok(ScanReport {
        theorem_id: cfg.theorem.id(),
        params,
        trials: cfg.trials,
        seed: cfg.seed,
        n_terms: cfg.n_terms,
        sampler_bound: bound,
        passed,
        failed,
        hypothesis_not_satisfied: skipped,
        worst,
        verdicts,
        grid: cfg.grid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_grid() -> DiskGrid {
        DiskGrid::new(0.995, 12, 96).unwrap()
    }

    #[test]
    fn monomial_trial_keeps_full_margin() {
        let mut cfg = ScanConfig::new(TheoremParams::T1 { alpha1: 0.5 }, 1, 3, 2);
        cfg.sampler_bound = Some(1e-300);
        cfg.grid = small_grid();
        let r = counterexample_scan(&cfg).unwrap();
        assert_eq!((r.passed, r.failed), (1, 0));
        let w = r.worst.unwrap();
        assert_eq!(w.margin, w.bound);
        assert_eq!(w.bound, 0.25 * std::f64::consts::PI);
    }

    #[test]
    fn scan_is_deterministic() {
        let mut cfg = ScanConfig::new(TheoremParams::T3 { alpha0: 1.0 }, 6, 7, 3);
        cfg.grid = small_grid();
        let a = counterexample_scan(&cfg).unwrap();
        let b = counterexample_scan(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.verdicts.len(), 6);
        assert_eq!(a.failed, 0);
    }

    #[test]
    fn rejects_zero_trials() {
        let cfg = ScanConfig::new(TheoremParams::C1, 0, 1, 2);
        assert!(counterexample_scan(&cfg).is_err());
    }

    #[test]
    fn lemma_scans_use_quarter_sector_by_default() {
        let cfg = ScanConfig::new(TheoremParams::L2, 1, 1, 2);
        assert_eq!(cfg.effective_sampler_bound().unwrap(), FRAC_PI_4);
    }
}
