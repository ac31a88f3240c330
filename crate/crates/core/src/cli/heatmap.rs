use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::{log_ratio, principal_arg, PowerSeries, SeriesError, ZERO_TOL};
use crate::verify::{DiskGrid, VerifyError};

/// Sampled quantity for a heatmap; `p` is the order of `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeatmapQuantity {
    /// `arg f^(p)(z)`
    ArgFp,
    /// `arg f^(p-1)(z) / z`
    ArgFp1OverZ,
    /// `arg z f'(z) / f(z)`
    ArgJst,
    /// `Re z f^(p)(z) / f^(p-1)(z)`
    ReRatio,
}

impl HeatmapQuantity {
    pub const ALL: [HeatmapQuantity; 4] = [
        HeatmapQuantity::ArgFp,
        HeatmapQuantity::ArgFp1OverZ,
        HeatmapQuantity::ArgJst,
        HeatmapQuantity::ReRatio,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HeatmapQuantity::ArgFp => "arg-fp",
            HeatmapQuantity::ArgFp1OverZ => "arg-fp1-over-z",
            HeatmapQuantity::ArgJst => "arg-jst",
            HeatmapQuantity::ReRatio => "re-ratio",
        }
    }
}

impl fmt::Display for HeatmapQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HeatmapQuantity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|q| q.name() == s)
            .ok_or_else(|| {
                format!(
                    "unknown quantity `{s}` (expected arg-fp, arg-fp1-over-z, arg-jst or re-ratio)"
                )
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeatmapRow {
    pub r: f64,
    pub theta: f64,
    pub value: f64,
}

#[derive(Debug, Error)]
pub enum HeatmapError {
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("cannot write heatmap: {0}")]
    Io(#[from] io::Error),
}

fn checked_arg(w: Complex64, z: Complex64, context: &str) -> Result<f64, VerifyError> {
    if w.norm() < ZERO_TOL {
        return Err(zero(z, w.norm(), context));
    }
    Ok(principal_arg(w).expect("nonzero"))
}

fn zero(z: Complex64, modulus: f64, context: &str) -> VerifyError {
    VerifyError::ZeroOnGrid {
        re: z.re,
        im: z.im,
        modulus,
        context: context.to_string(),
    }
}

fn ratio(
    num: &PowerSeries,
    den: &PowerSeries,
    z: Complex64,
    context: &str,
) -> Result<Complex64, VerifyError> {
    log_ratio(num, den, z).map_err(|e| match e {
        SeriesError::DivisionNearZero { modulus, .. } => zero(z, modulus, context),
        other => other.into(),
    })
}

/// Samples `quantity` on `grid` in (radial, angular) order. Arguments are
/// principal values in `(-pi, pi]`.
pub fn heatmap_rows(
    f: &PowerSeries,
    quantity: HeatmapQuantity,
    grid: &DiskGrid,
) -> Result<Vec<HeatmapRow>, VerifyError> {
    let p = f.order();
    let needs_lower = matches!(
        quantity,
        HeatmapQuantity::ArgFp1OverZ | HeatmapQuantity::ReRatio
    );
    if f.is_zero() || (needs_lower && p < 1) {
        return Err(VerifyError::ParamOutOfRange(format!(
            "{quantity} needs a nonzero f of order at least 1"
        )));
    }
    let fp = f.differentiate(p);
    let fp1 = f.differentiate(p.saturating_sub(1));
    let f1 = f.differentiate(1);
    let value = |z: Complex64| -> Result<f64, VerifyError> {
        match quantity {
            HeatmapQuantity::ArgFp => checked_arg(fp.value_at(z), z, "f^(p)"),
            HeatmapQuantity::ArgFp1OverZ => checked_arg(fp1.over_power(z, 1), z, "f^(p-1)/z"),
            HeatmapQuantity::ArgJst => checked_arg(ratio(&f1, f, z, "z f'/f")?, z, "z f'/f"),
            HeatmapQuantity::ReRatio => Ok(ratio(&fp, &fp1, z, "z f^(p)/f^(p-1)")?.re),
        }
    };
    let radii = grid.radii();
    let angles = grid.angles();
    (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let (r, theta) = (radii[i / angles.len()], angles[i % angles.len()]);
            let z = Complex64::from_polar(r, theta);
            value(z).map(|value| HeatmapRow { r, theta, value })
        })
        .collect()
}

/// CSV with header `r,theta,value` and LF line endings.
pub fn write_heatmap_csv<W: Write + ?Sized>(rows: &[HeatmapRow], out: &mut W) -> io::Result<()> {
    writeln!(out, "r,theta,value")?;
    for row in rows {
        // Debug formatting is shortest round-trip and switches to exponents
        // for tiny magnitudes, unlike Display
        writeln!(out, "{:?},{:?},{:?}", row.r, row.theta, row.value)?;
    }
    Ok(())
}

/// Samples `quantity` and writes the CSV to `path`.
pub fn emit_heatmap(
    f: &PowerSeries,
    quantity: HeatmapQuantity,
    grid: &DiskGrid,
    path: &Path,
) -> Result<(), HeatmapError> {
    let rows = heatmap_rows(f, quantity, grid)?;
    let mut w = BufWriter::new(File::create(path)?);
    write_heatmap_csv(&rows, &mut w)?;
    w.flush()?;
    Ok(())
}
