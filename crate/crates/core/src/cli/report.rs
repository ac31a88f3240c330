use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use super::heatmap::HeatmapRow;
use crate::roots::{ImplicitConstant, RootConfig};
use crate::verify::{
    Constraint, DiskGrid, Lemma1Report, Quantity, ScanReport, Verdict, VerificationReport,
};

pub const TOOL: &str = "starlike";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Every JSON report is wrapped in this envelope. Floats are written in
/// shortest round-trip form, so parsing them back yields the exact `f64`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope<T> {
    pub tool: String,
    pub version: String,
    /// Arguments after the program name, as given.
    pub command: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<DiskGrid>,
    pub solver: RootConfig,
    pub result: T,
}

impl<T> ReportEnvelope<T> {
    pub fn new(
        command: Vec<String>,
        grid: Option<DiskGrid>,
        solver: RootConfig,
        result: T,
    ) -> Self {
        Self {
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            command,
            grid,
            solver,
            result,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantReport {
    pub name: String,
    pub root: f64,
    /// `root + (2/pi) atan(root)`
    pub bound: f64,
    pub residual: f64,
}

impl ConstantReport {
    pub fn new(name: &str, c: ImplicitConstant) -> Self {
        Self {
            name: name.to_string(),
            root: c.root,
            bound: c.bound,
            residual: c.residual,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaRow {
    pub k: usize,
    pub alpha: f64,
    pub residual: f64,
    /// `x_k` of the explicit majorant started at `x_0 = 2`.
    pub majorant: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaReport {
    pub alpha0: f64,
    pub count: usize,
    pub rows: Vec<AlphaRow>,
    /// First `sigma >= 1` with `alpha_sigma + alpha_{sigma-1} <= 1`, searched
    /// beyond `count` if needed.
    pub sigma: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeatmapReport {
    pub quantity: String,
    pub rows: Vec<HeatmapRow>,
}

pub fn write_json<T: Serialize, W: Write + ?Sized>(
    envelope: &ReportEnvelope<T>,
    out: &mut W,
) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, envelope)?;
    writeln!(out)
}

fn constraint_name(c: Constraint) -> &'static str {
    match c {
        Constraint::Below => "below",
        Constraint::Above => "above",
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::HypothesisNotSatisfied => "HYPOTHESIS_NOT_SATISFIED",
    }
}

/// Labels contain commas and spaces, so they are always quoted.
fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

pub fn constants_csv<W: Write + ?Sized>(reports: &[ConstantReport], out: &mut W) -> io::Result<()> {
    writeln!(out, "name,root,bound,residual")?;
    for c in reports {
        writeln!(
            out,
            "{},{:?},{:?},{:?}",
            c.name, c.root, c.bound, c.residual
        )?;
    }
    Ok(())
}

pub fn alpha_csv<W: Write + ?Sized>(report: &AlphaReport, out: &mut W) -> io::Result<()> {
    writeln!(out, "k,alpha,residual,majorant")?;
    for r in &report.rows {
        writeln!(
            out,
            "{},{:?},{:?},{:?}",
            r.k, r.alpha, r.residual, r.majorant
        )?;
    }
    Ok(())
}

fn quantity_line<W: Write + ?Sized>(role: &str, q: &Quantity, out: &mut W) -> io::Result<()> {
    writeln!(
        out,
        "{role},{},{:?},{:?},{},{:?},{:?},{:?}",
        quoted(&q.label),
        q.value,
        q.bound,
        constraint_name(q.constraint),
        q.margin,
        q.witness.re,
        q.witness.im
    )
}

pub fn verification_csv<W: Write + ?Sized>(
    report: &VerificationReport,
    out: &mut W,
) -> io::Result<()> {
    writeln!(
        out,
        "role,label,value,bound,constraint,margin,witness_re,witness_im"
    )?;
    quantity_line("hypothesis", &report.hypothesis, out)?;
    for q in &report.conclusions {
        quantity_line("conclusion", q, out)?;
    }
    Ok(())
}

pub fn lemma1_csv<W: Write + ?Sized>(r: &Lemma1Report, out: &mut W) -> io::Result<()> {
    writeln!(out, "field,value")?;
    let fields: [(&str, f64); 16] = [
        ("gamma", r.gamma),
        ("level", r.level),
        ("m", r.m as f64),
        ("r0", r.r0),
        ("theta0", r.theta0),
        ("z0_re", r.z0.re),
        ("z0_im", r.z0.im),
        ("q_z0_re", r.q_z0.re),
        ("q_z0_im", r.q_z0.im),
        ("arg_q_z0", r.arg_q_z0),
        ("ratio_re", r.ratio.re),
        ("ratio_im", r.ratio.im),
        ("k_est", r.k_est),
        ("a_est", r.a_est),
        ("k_lower_bound", r.k_lower_bound),
        ("imag_purity", r.imag_purity),
    ];
    for (name, v) in fields {
        writeln!(out, "{name},{v:?}")?;
    }
    Ok(())
}

pub fn scan_csv<W: Write + ?Sized>(report: &ScanReport, out: &mut W) -> io::Result<()> {
    writeln!(out, "trial,seed,verdict,min_margin")?;
    for v in &report.verdicts {
        let margin = v.min_margin.map(|m| format!("{m:?}")).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{margin}",
            v.trial,
            v.seed,
            verdict_name(v.verdict)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_round_trips_floats_exactly() {
        let c = ConstantReport {
            name: "x".into(),
            root: 0.383_448_602_770_689_9,
            bound: std::f64::consts::PI / 7.0,
            residual: 1e-17,
        };
        let env = ReportEnvelope::new(
            vec!["gamma0".into()],
            None,
            RootConfig::default(),
            c.clone(),
        );
        let mut buf = Vec::new();
        write_json(&env, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.ends_with("}\n"));
        assert!(!text.contains("grid"));
        let back: ReportEnvelope<ConstantReport> = serde_json::from_str(&text).unwrap();
        assert_eq!(back.result, c);
        assert_eq!(back.tool, TOOL);
    }

    #[test]
    fn csv_quotes_labels() {
        assert_eq!(quoted("a, \"b\""), "\"a, \"\"b\"\"\"");
    }

    #[test]
    fn alpha_table_layout() {
        let report = AlphaReport {
            alpha0: 1.0,
            count: 1,
            rows: vec![
                AlphaRow {
                    k: 0,
                    alpha: 1.0,
                    residual: 0.0,
                    majorant: 2.0,
                },
                AlphaRow {
                    k: 1,
                    alpha: 0.5,
                    residual: 1e-16,
                    majorant: 1.5,
                },
            ],
            sigma: Some(1),
        };
        let mut buf = Vec::new();
        alpha_csv(&report, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "k,alpha,residual,majorant\n0,1.0,0.0,2.0\n1,0.5,1e-16,1.5\n"
        );
    }
}
