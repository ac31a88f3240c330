//! Grid-based checks of the argument-bound implications, the boundary-point
//! lemma probe, a constructive hypothesis sampler and a randomized
//! counterexample scanner built on top of them.

mod grid;
mod lemma1;
mod sampler;
mod scan;
mod theorem;

use thiserror::Error;

use crate::roots::RootError;
use crate::series::SeriesError;

pub use grid::{min_real, sup_arg, DiskGrid, GridSamples, MinRealResult, SupArgResult};
pub use lemma1::{lemma1_probe, Lemma1Report};
pub use sampler::sample_hypothesis_function;
pub use scan::{counterexample_scan, ScanConfig, ScanReport, TrialVerdict, WorstCase};
pub use theorem::{
    check_theorem, hypothesis_bound, Constraint, ParamRecord, Quantity, TheoremId, TheoremParams,
    Verdict, VerificationReport, CONCLUSION_SLACK,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("value of modulus {modulus:e} at grid point {re}+{im}i ({context})")]
    ZeroOnGrid {
        re: f64,
        im: f64,
        modulus: f64,
        context: String,
    },
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("level {level} not reached within the grid; best sup of |arg q| was {best_sup}")]
    NotAttained { level: f64, best_sup: f64 },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Root(#[from] RootError),
}
