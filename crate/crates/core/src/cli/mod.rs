//! The `starlike` command line.
//!
//! Reports go to stdout (or `--out`), diagnostics to stderr. Exit codes:
//! 0 for a pass or an informational command, 1 for a FAIL verdict, 2 for
//! usage errors and out-of-range parameters, 3 for unreadable or malformed
//! function files, 4 for numeric failures and output I/O errors.

mod heatmap;
mod report;
mod spec_file;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::roots::{
    alpha_sequence, majorant_sequence, pair_sum_threshold, solve_delta_max, solve_gamma0,
    RootConfig, RootError,
};
use crate::series::{PowerSeries, SeriesError};
use crate::verify::{
    check_theorem, counterexample_scan, lemma1_probe, DiskGrid, ScanConfig, TheoremId,
    TheoremParams, Verdict, VerifyError,
};

pub use heatmap::{
    emit_heatmap, heatmap_rows, write_heatmap_csv, HeatmapError, HeatmapQuantity, HeatmapRow,
};
pub use report::{
    AlphaReport, AlphaRow, ConstantReport, HeatmapReport, ReportEnvelope, TOOL, VERSION,
};
pub use spec_file::{parse_function_file, read_function_spec, FunctionSpecFile, SpecError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

/// The `sigma` search in `alpha` extends the chain at least this far.
const SIGMA_SEARCH: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "starlike",
    version,
    about = "Argument-bound checks for p-valent starlike and convex functions"
)]
struct Cli {
    /// Report format (json by default; csv by default for heatmap)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Absolute bracket tolerance of the root solver
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,
    /// Iteration cap of the root solver
    #[arg(long = "max-iter", global = true, default_value_t = 200)]
    max_iter: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GridArgs {
    /// Outer radius of the sampled disk
    #[arg(long, default_value_t = 0.995)]
    rmax: f64,
    /// Radial x angular sample counts
    #[arg(long, default_value = "64x512", value_parser = parse_grid_shape)]
    grid: (usize, usize),
}

impl GridArgs {
    fn grid(&self) -> Result<DiskGrid, CliError> {
        Ok(DiskGrid::new(self.rmax, self.grid.0, self.grid.1)?)
    }
}

#[derive(Debug, Args)]
struct TheoremArgs {
    /// One of t1 c1 c2 t3 t4 t5 l2 l3
    #[arg(long)]
    theorem: TheoremId,
    #[arg(long)]
    alpha1: Option<f64>,
    #[arg(long)]
    alpha0: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    /// Gap index for t5
    #[arg(long)]
    s: Option<usize>,
}

impl TheoremArgs {
    fn params(&self, default_s: Option<usize>) -> Result<TheoremParams, CliError> {
        fn need<T>(v: Option<T>, flag: &str, id: TheoremId) -> Result<T, CliError> {
            v.ok_or_else(|| CliError::Usage(format!("{id} requires --{flag}")))
        }
        let id = self.theorem;
        let params = match id {
            TheoremId::T1 => TheoremParams::T1 {
                alpha1: need(self.alpha1, "alpha1", id)?,
            },
            TheoremId::C1 => TheoremParams::C1,
            TheoremId::C2 => TheoremParams::C2,
            TheoremId::T3 => TheoremParams::T3 {
                alpha0: need(self.alpha0, "alpha0", id)?,
            },
            TheoremId::T4 => TheoremParams::T4 {
                alpha0: need(self.alpha0, "alpha0", id)?,
            },
            TheoremId::T5 => TheoremParams::T5 {
                delta: need(self.delta, "delta", id)?,
                s: need(self.s.or(default_s), "s", id)?,
            },
            TheoremId::L2 => TheoremParams::L2,
            TheoremId::L3 => TheoremParams::L3,
        };
        params.validate()?;
        Ok(params)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Root of 2g + (2/pi) atan g = 1 and its composite bound
    Gamma0,
    /// Root of 2d + (2/pi) atan d = 2, the supremum of admissible delta
    Deltamax,
    /// The alpha chain, its majorant and the first sigma with a pair sum <= 1
    Alpha {
        #[arg(long)]
        alpha0: f64,
        #[arg(long)]
        count: usize,
    },
    /// Check one implication on a function from a spec file
    Verify {
        #[command(flatten)]
        theorem: TheoremArgs,
        #[arg(long)]
        function: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Boundary-point probe for q(z) = 1 + c_m z^m + ... (spec file with p = 0)
    Lemma1 {
        #[arg(long)]
        function: PathBuf,
        #[arg(long)]
        gamma: f64,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Randomized search for counterexamples among hypothesis-satisfying functions
    Scan {
        #[command(flatten)]
        theorem: TheoremArgs,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Valence of the sampled functions (ignored for t5)
        #[arg(long, default_value_t = 2)]
        p: usize,
        /// Stored terms of the sampled p-th derivative
        #[arg(long, default_value_t = 24)]
        terms: usize,
        /// Sector half-angle for the sampler (defaults to the hypothesis bound)
        #[arg(long = "sampler-bound")]
        sampler_bound: Option<f64>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Sample a quantity on the grid as r,theta,value rows
    Heatmap {
        #[arg(long)]
        function: PathBuf,
        /// arg-fp, arg-fp1-over-z, arg-jst or re-ratio
        #[arg(long)]
        quantity: HeatmapQuantity,
        #[command(flatten)]
        grid: GridArgs,
    },
}

fn parse_grid_shape(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected <radial>x<angular>, got `{s}`"))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|e| format!("bad grid size `{t}`: {e}"))
    };
    Ok((parse(a)?, parse(b)?))
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Parse(SpecError),
    Numeric(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Numeric(_) => EXIT_NUMERIC,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Parse(e) => write!(f, "input error: {e}"),
            CliError::Numeric(m) => write!(f, "numeric error: {m}"),
        }
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        CliError::Parse(e)
    }
}

impl From<RootError> for CliError {
    fn from(e: RootError) -> Self {
        match e {
            RootError::InvalidInput(_) => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        match e {
            SeriesError::DivisionNearZero { .. }
            | SeriesError::ArgOfZero
            | SeriesError::NonFinite { .. } => CliError::Numeric(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::ParamOutOfRange(_) => CliError::Usage(e.to_string()),
            VerifyError::Series(s) => s.into(),
            VerifyError::Root(r) => r.into(),
            VerifyError::ZeroOnGrid { .. } | VerifyError::NotAttained { .. } => {
                CliError::Numeric(e.to_string())
            }
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Numeric(format!("cannot write report: {e}"))
    }
}

/// Where a report goes: `--out` if given, stdout otherwise.
fn with_sink<F>(out: Option<&Path>, stdout: &mut dyn Write, write: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write(&mut w)?;
            w.flush()?;
        }
        None => {
            write(stdout)?;
            stdout.flush()?;
        }
    }
    Ok(())
}

struct Ctx<'a> {
    format: Option<Format>,
    out: Option<PathBuf>,
    command: Vec<String>,
    solver: RootConfig,
    stdout: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit<T, C>(&mut self, grid: Option<DiskGrid>, result: T, csv: C) -> Result<(), CliError>
    where
        T: Serialize,
        C: FnOnce(&T, &mut dyn Write) -> io::Result<()>,
    {
        let format = self.format.unwrap_or(Format::Json);
        let envelope = ReportEnvelope::new(self.command.clone(), grid, self.solver, result);
        with_sink(self.out.as_deref(), self.stdout, |w| match format {
            Format::Json => report::write_json(&envelope, w),
            Format::Csv => csv(&envelope.result, w),
        })
    }
}

fn load_function(path: &Path) -> Result<(PowerSeries, Option<usize>), CliError> {
    let spec = read_function_spec(path)?;
    let f = spec.to_series()?;
    Ok((f, spec.gap_index))
}

fn verdict_code(v: Verdict) -> i32 {
    if v == Verdict::Fail {
        EXIT_FAIL
    } else {
        EXIT_OK
    }
}

fn dispatch(command: Command, ctx: &mut Ctx<'_>) -> Result<i32, CliError> {
    let solver = ctx.solver;
    match command {
        Command::Gamma0 => {
            let c = ConstantReport::new("gamma0", solve_gamma0(&solver)?);
            ctx.emit(None, c, |c, w| {
                report::constants_csv(std::slice::from_ref(c), w)
            })?;
            Ok(EXIT_OK)
        }
        Command::Deltamax => {
            let c = ConstantReport::new("delta_max", solve_delta_max(&solver)?);
            ctx.emit(None, c, |c, w| {
                report::constants_csv(std::slice::from_ref(c), w)
            })?;
            Ok(EXIT_OK)
        }
        Command::Alpha { alpha0, count } => {
            let seq = alpha_sequence(alpha0, count, &solver)?;
            let majorant = majorant_sequence(count);
            let rows = (0..=count)
                .map(|k| AlphaRow {
                    k,
                    alpha: seq.values[k],
                    residual: seq.residuals[k],
                    majorant: majorant.values[k],
                })
                .collect();
            let sigma = pair_sum_threshold(alpha0, count.max(SIGMA_SEARCH), &solver)?;
            let report = AlphaReport {
                alpha0,
                count,
                rows,
                sigma,
            };
            ctx.emit(None, report, |r, w| report::alpha_csv(r, w))?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            theorem,
            function,
            grid,
        } => {
            let (f, gap) = load_function(&function)?;
            let params = theorem.params(gap)?;
            let grid = grid.grid()?;
            let report = check_theorem(&params, &f, &grid)?;
            let code = verdict_code(report.verdict);
            ctx.emit(Some(grid), report, |r, w| report::verification_csv(r, w))?;
            Ok(code)
        }
        Command::Lemma1 {
            function,
            gamma,
            grid,
        } => {
            let (q, _) = load_function(&function)?;
            let grid = grid.grid()?;
            let report = lemma1_probe(&q, gamma, &grid)?;
            ctx.emit(Some(grid), report, |r, w| report::lemma1_csv(r, w))?;
            Ok(EXIT_OK)
        }
        Command::Scan {
            theorem,
            trials,
            seed,
            p,
            terms,
            sampler_bound,
            grid,
        } => {
            let params = theorem.params(None)?;
            let mut cfg = ScanConfig::new(params, trials, seed, p);
            cfg.n_terms = terms;
            cfg.sampler_bound = sampler_bound;
            cfg.grid = grid.grid()?;
            let report = counterexample_scan(&cfg)?;
            let code = if report.failed > 0 {
                EXIT_FAIL
            } else {
                EXIT_OK
            };
            ctx.emit(Some(cfg.grid), report, |r, w| report::scan_csv(r, w))?;
            Ok(code)
        }
        Command::Heatmap {
            function,
            quantity,
            grid,
        } => {
            let (f, _) = load_function(&function)?;
            let grid = grid.grid()?;
            let rows = heatmap_rows(&f, quantity, &grid)?;
            ctx.format.get_or_insert(Format::Csv);
            let report = HeatmapReport {
                quantity: quantity.to_string(),
                rows,
            };
            ctx.emit(Some(grid), report, |r, w| write_heatmap_csv(&r.rows, w))?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    let solver = match RootConfig::new(cli.tol, cli.max_iter) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(stderr, "usage error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut ctx = Ctx {
        format: cli.format,
        out: cli.out,
        command: args
            .iter()
            .skip(1)
            .map(|a| a.to_string_lossy().into_owned())
            .collect(),
        solver,
        stdout,
    };
    match dispatch(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            e.code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("starlike").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn grid_shape_parser() {
        assert_eq!(parse_grid_shape("64x512"), Ok((64, 512)));
        assert_eq!(parse_grid_shape("8X16"), Ok((8, 16)));
        assert!(parse_grid_shape("64").is_err());
        assert!(parse_grid_shape("ax2").is_err());
    }

    #[test]
    fn gamma0_reports_constant_and_bound() {
        let (code, out, err) = run_args(&["gamma0"]);
        assert_eq!(code, 0, "{err}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let root = v["result"]["root"].as_f64().unwrap();
        assert!((root - 0.383_448_602_770_69).abs() < 1e-12);
        assert!(v["result"]["bound"].as_f64().unwrap() > 0.6);
        assert_eq!(v["command"][0], "gamma0");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_args(&[]).0, 2);
        assert_eq!(run_args(&["nope"]).0, 2);
        assert_eq!(run_args(&["alpha", "--count", "3"]).0, 2);
        assert_eq!(run_args(&["alpha", "--alpha0", "2", "--count", "3"]).0, 2);
        assert_eq!(run_args(&["--tol", "0", "gamma0"]).0, 2);
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("scan"));
    }

    #[test]
    fn csv_alpha_table() {
        let (code, out, _) =
            run_args(&["alpha", "--alpha0", "1", "--count", "2", "--format", "csv"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "k,alpha,residual,majorant");
        assert_eq!(lines[1], "0,1.0,0.0,2.0");
        assert_eq!(lines.len(), 4);
    }

    #[test]
    fn missing_theorem_parameter_is_usage_error() {
        let (code, _, err) = run_args(&["scan", "--theorem", "t1", "--trials", "1"]);
        assert_eq!(code, 2);
        assert!(err.contains("--alpha1"), "{err}");
    }
}
