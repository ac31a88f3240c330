use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::series::PowerSeries;

/// On-disk description of `f(z) = z^p + a_{p+1} z^{p+1} + ...`.
///
/// `coefficients[j]` holds `[re, im]` of `a_{p+1+j}`; the leading `a_p = 1`
/// is implied. `truncation` counts all stored terms including the leading
/// one and defaults to `coefficients.len() + 1`; shorter lists are padded
/// with zeros.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionSpecFile {
    pub p: usize,
    #[serde(default)]
    pub coefficients: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
    /// Forces `a_{s-1} = 0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap_index: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed function spec at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `{field}`{}: {message}", position.map(|i| format!("[{i}]")).unwrap_or_default())]
    Field {
        field: &'static str,
        position: Option<usize>,
        message: String,
    },
}

fn field_err(
    field: &'static str,
    position: Option<usize>,
    message: impl Into<String>,
) -> SpecError {
    SpecError::Field {
        field,
        position,
        message: message.into(),
    }
}

impl FunctionSpecFile {
    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        serde_json::from_str(text).map_err(|e| SpecError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Validates the fields and builds the series.
    pub fn to_series(&self) -> Result<PowerSeries, SpecError> {
        let n = self.truncation.unwrap_or(self.coefficients.len() + 1);
        if n < 1 {
            return Err(field_err("truncation", None, "must be at least 1"));
        }
        if self.coefficients.len() + 1 > n {
            return Err(field_err(
                "coefficients",
                Some(n - 1),
                format!(
                    "{} coefficients do not fit truncation {n}",
                    self.coefficients.len()
                ),
            ));
        }
        let mut tail = Vec::with_capacity(n - 1);
        for (i, &[re, im]) in self.coefficients.iter().enumerate() {
            if !(re.is_finite() && im.is_finite()) {
                return Err(field_err("coefficients", Some(i), "non-finite value"));
            }
            tail.push(Complex64::new(re, im));
        }
        tail.resize(n - 1, Complex64::new(0.0, 0.0));
        if let Some(s) = self.gap_index {
            if s < 2 {
                return Err(field_err(
                    "gap_index",
                    None,
                    format!("must be at least 2, got {s}"),
                ));
            }
            let zeroed = s - 1;
            if zeroed == self.p {
                return Err(field_err(
                    "gap_index",
                    None,
                    format!("would zero the leading coefficient a_{}", self.p),
                ));
            }
            if zeroed > self.p {
                let j = zeroed - self.p - 1;
                if j >= tail.len() {
                    return Err(field_err(
                        "gap_index",
                        None,
                        format!("a_{zeroed} lies beyond truncation {n}"),
                    ));
                }
                tail[j] = Complex64::new(0.0, 0.0);
            }
        }
        PowerSeries::with_unit_leading(self.p, &tail, n)
            .map_err(|e| field_err("coefficients", None, e.to_string()))
    }

    /// Inverse of [`to_series`](Self::to_series) for series with a unit
    /// leading coefficient. The result always carries an explicit truncation.
    pub fn from_series(f: &PowerSeries, gap_index: Option<usize>) -> Result<Self, SpecError> {
        if f.coeffs()[0] != Complex64::new(1.0, 0.0) {
            return Err(field_err("p", None, "leading coefficient must be 1"));
        }
        Ok(Self {
            p: f.order(),
            coefficients: f.coeffs()[1..].iter().map(|c| [c.re, c.im]).collect(),
            truncation: Some(f.truncation()),
            gap_index,
        })
    }
}

pub fn read_function_spec(path: &Path) -> Result<FunctionSpecFile, SpecError> {
    let text = fs::read_to_string(path).map_err(|e| SpecError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    FunctionSpecFile::from_json(&text)
}

/// Reads a function-spec JSON file into a series.
pub fn parse_function_file(path: &Path) -> Result<PowerSeries, SpecError> {
    read_function_spec(path)?.to_series()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn parse(text: &str) -> Result<PowerSeries, SpecError> {
        FunctionSpecFile::from_json(text)?.to_series()
    }

    #[test]
    fn bare_monomial() {
        let f = parse(r#"{"p": 2, "coefficients": [], "truncation": 1}"#).unwrap();
        assert_eq!(f, PowerSeries::monomial(2));
    }

    #[test]
    fn linear_plus_quadratic() {
        let f = parse(r#"{"p": 1, "coefficients": [[0.5, 0]], "truncation": 2}"#).unwrap();
        assert_eq!(f.order(), 1);
        assert_eq!(f.coeffs(), &[c(1.0, 0.0), c(0.5, 0.0)]);
    }

    #[test]
    fn gap_index_zeroes_the_gap() {
        let f = parse(r#"{"p": 2, "coefficients": [[0.4, 0]], "gap_index": 2}"#).unwrap();
        assert_eq!(f.coeffs(), &[c(1.0, 0.0), c(0.4, 0.0)]);
        assert_eq!(f.coefficient(1), c(0.0, 0.0));

        let f = parse(r#"{"p": 1, "coefficients": [[0.4, 0], [0.7, 0]], "gap_index": 3}"#).unwrap();
        assert_eq!(f.coefficient(2), c(0.0, 0.0));
        assert_eq!(f.coefficient(3), c(0.7, 0.0));
    }

    #[test]
    fn pads_to_truncation() {
        let f = parse(r#"{"p": 1, "coefficients": [[0.5, 0.25]], "truncation": 4}"#).unwrap();
        assert_eq!(f.truncation(), 4);
        assert_eq!(f.coefficient(3), c(0.0, 0.0));
    }

    #[test]
    fn q_functions_use_p_zero() {
        let f = parse(r#"{"p": 0, "coefficients": [[1, 0]]}"#).unwrap();
        assert_eq!(f.order(), 0);
        assert_eq!(f.coeffs(), &[c(1.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn errors_name_field_and_position() {
        match parse(r#"{"p": 1, "coefficients": [[0.5, 0], [1e999, 0]]}"#) {
            Err(SpecError::Syntax { line: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse(r#"{"p": 1, "coefficients": [[0.5, 0], [0.1, 0]], "truncation": 2}"#) {
            Err(SpecError::Field {
                field: "coefficients",
                position: Some(1),
                ..
            }) => {}
            other => panic!("{other:?}"),
        }
        match parse(r#"{"p": 2, "coefficients": [], "gap_index": 3}"#) {
            Err(SpecError::Field {
                field: "gap_index", ..
            }) => {}
            other => panic!("{other:?}"),
        }
        match parse("{\"p\": 1,\n \"coefficients\": [[0.5]]}") {
            Err(SpecError::Syntax { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse(r#"{"coefficients": []}"#) {
            Err(SpecError::Syntax { message, .. }) => assert!(message.contains("`p`")),
            other => panic!("{other:?}"),
        }
        assert!(parse(r#"{"p": 1, "truncation": 0}"#).is_err());
        assert!(parse(r#"{"p": 1, "coeffs": []}"#).is_err());
    }

    #[test]
    fn series_round_trip() {
        let spec = FunctionSpecFile {
            p: 3,
            coefficients: vec![[0.25, -0.5], [0.0, 0.0], [1e-17, 3.0]],
            truncation: Some(4),
            gap_index: None,
        };
        let back = FunctionSpecFile::from_series(&spec.to_series().unwrap(), None).unwrap();
        assert_eq!(back, spec);
        let json = serde_json::to_string(&back).unwrap();
        assert_eq!(FunctionSpecFile::from_json(&json).unwrap(), spec);
    }
}
