//! Numerical companion for argument-bound criteria of `p`-valent starlikeness
//! and convexity.
//!
//! The crate checks implications of the form "a sector bound on `f^(p)`
//! forces a sector bound on `f^(p-k) / z^k`" on concrete truncated power
//! series, sampled over a polar grid of the disk. It also solves the implicit
//! constants and recursive sequences those bounds are built from.
//!
//! - [`series`]: truncated power series, derivatives, `z f'/f` and `1 + z f''/f'`.
//! - [`roots`]: bracketed solvers for the implicit constants and the alpha chain.
//! - [`verify`]: grid extrema, implication checks, the boundary-point probe,
//!   a hypothesis sampler and a counterexample scanner.
//! - [`cli`]: the `starlike` command line, function-spec files and reports.

pub mod cli;
pub mod roots;
pub mod series;
pub mod verify;
