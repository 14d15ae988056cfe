//! File formats: JSON function specs and elements, weight vectors, the
//! rearrangement CSV export, and the `"inf"` encoding of extended reals.

use crate::algebra::{AlgebraElement, BlockAlgebra, Mat};
use crate::function::{FunctionSpec, OrliczFunction};
use crate::step::StepFunction;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::fmt;
use std::path::Path;

#[derive(Debug)]
pub enum IoError {
    /// JSON syntax or schema problem, with the 1-based line and column.
    Json {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    Read {
        path: String,
        source: std::io::Error,
    },
    Validation(String),
}

impl fmt::Display for IoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IoError::Json {
                path,
                line,
                column,
                message,
            } => {
                write!(f, "{path}:{line}:{column}: {message}")
            }
            IoError::Read { path, source } => write!(f, "cannot read {path}: {source}"),
            IoError::Validation(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for IoError {}

fn json_error(path: &str, e: &serde_json::Error) -> IoError {
    IoError::Json {
        path: path.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// Parses a function spec from JSON text and compiles it.
pub fn parse_function(json: &str, origin: &str) -> Result<OrliczFunction, IoError> {
    let spec: FunctionSpec = serde_json::from_str(json).map_err(|e| json_error(origin, &e))?;
    OrliczFunction::new(spec).map_err(|e| IoError::Validation(format!("{origin}: {e}")))
}

pub fn load_function(path: &Path) -> Result<OrliczFunction, IoError> {
    let text = std::fs::read_to_string(path).map_err(|e| IoError::Read {
        path: path.display().to_string(),
        source: e,
    })?;
    parse_function(&text, &path.display().to_string())
}

/// On-disk element: block layout plus one row-major matrix per block.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementFile {
    pub algebra: BlockAlgebra,
    pub mats: Vec<Vec<Vec<f64>>>,
}

pub fn parse_element(json: &str, origin: &str) -> Result<AlgebraElement, IoError> {
    let file: ElementFile = serde_json::from_str(json).map_err(|e| json_error(origin, &e))?;
    let mats: Result<Vec<Mat>, _> = file.mats.iter().map(|rows| Mat::from_rows(rows)).collect();
    let mats = mats.map_err(|e| IoError::Validation(format!("{origin}: {e}")))?;
    AlgebraElement::new(file.algebra, mats)
        .map_err(|e| IoError::Validation(format!("{origin}: {e}")))
}

pub fn load_element(path: &Path) -> Result<AlgebraElement, IoError> {
    let text = std::fs::read_to_string(path).map_err(|e| IoError::Read {
        path: path.display().to_string(),
        source: e,
    })?;
    parse_element(&text, &path.display().to_string())
}

pub fn element_to_file(x: &AlgebraElement) -> ElementFile {
    ElementFile {
        algebra: x.algebra().clone(),
        mats: (0..x.algebra().blocks().len())
            .map(|i| x.block(i).rows())
            .collect(),
    }
}

/// Plain JSON array of reals (weight vectors, sample vectors).
pub fn parse_vector(json: &str, origin: &str) -> Result<Vec<f64>, IoError> {
    serde_json::from_str(json).map_err(|e| json_error(origin, &e))
}

pub fn load_vector(path: &Path) -> Result<Vec<f64>, IoError> {
    let text = std::fs::read_to_string(path).map_err(|e| IoError::Read {
        path: path.display().to_string(),
        source: e,
    })?;
    parse_vector(&text, &path.display().to_string())
}

/// Extended nonnegative reals serialize as numbers, with `+inf` as the
/// string `"inf"`.
pub fn ext_real_to_json(v: f64) -> Value {
    if v.is_infinite() {
        Value::String("inf".into())
    } else {
        serde_json::Number::from_f64(v)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }
}

/// Renders an extended real for plain-text output.
pub fn ext_real_to_string(v: f64) -> String {
    if v.is_infinite() {
        "inf".into()
    } else {
        format!("{v}")
    }
}

/// Rearrangement export: header plus one `t_start,t_end,value` row per
/// step.
pub fn rearrangement_csv(steps: &StepFunction) -> String {
    let mut out = String::from("t_start,t_end,value\n");
    let mut cum = 0.0;
    for s in steps.steps() {
        let start = cum;
        cum += s.length;
        out.push_str(&format!("{start},{cum},{}\n", s.value));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BlockAlgebra, BlockSpec};

    #[test]
    fn function_spec_examples_parse() {
        for json in [
            r#"{"kind":"power","p":2}"#,
            r#"{"kind":"power_scaled","c":3,"p":2}"#,
            r#"{"kind":"exp_minus_one"}"#,
            r#"{"kind":"t_log1p"}"#,
            r#"{"kind":"piecewise_linear","knots":[[0,0],[1,1]],"final_slope":2}"#,
            r#"{"kind":"piecewise_linear","knots":[[0,0],[1,0]],"finite_cutoff":1}"#,
            r#"{"kind":"compose","outer":{"kind":"power","p":2},"inner":{"kind":"power","p":3}}"#,
            r#"{"kind":"conjugate","of":{"kind":"power","p":2}}"#,
            r#"{"kind":"hscale","a":2,"of":{"kind":"t_log1p"}}"#,
        ] {
            parse_function(json, "inline").unwrap();
        }
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = parse_function("{\"kind\":\"power\",\n  \"p\": }", "bad.json").unwrap_err();
        match err {
            IoError::Json { line, .. } => assert_eq!(line, 2),
            other => panic!("expected a JSON error, got {other}"),
        }
    }

    #[test]
    fn element_round_trip() {
        let alg = BlockAlgebra::new(vec![
            BlockSpec {
                dim: 2,
                weight: 1.0,
            },
            BlockSpec {
                dim: 1,
                weight: 0.5,
            },
        ])
        .unwrap();
        let x = AlgebraElement::random(&alg, 3);
        let json = serde_json::to_string(&element_to_file(&x)).unwrap();
        let y = parse_element(&json, "inline").unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn element_shape_mismatch_is_a_validation_error() {
        let json = r#"{"algebra":{"blocks":[{"dim":2,"weight":1.0}]},"mats":[[[1,0]]]}"#;
        assert!(matches!(
            parse_element(json, "inline"),
            Err(IoError::Validation(_))
        ));
    }

    #[test]
    fn extended_reals_serialize_as_inf() {
        assert_eq!(ext_real_to_json(f64::INFINITY), Value::String("inf".into()));
        assert_eq!(ext_real_to_json(2.5), serde_json::json!(2.5));
        assert_eq!(ext_real_to_string(f64::INFINITY), "inf");
    }

    #[test]
    fn csv_rows_carry_interval_bounds() {
        let f = StepFunction::from_weighted_values(vec![(1.0, 3.0), (0.5, 2.0)]);
        let csv = rearrangement_csv(&f);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "t_start,t_end,value");
        assert_eq!(lines[1], "0,1,3");
        assert_eq!(lines[2], "1,1.5,2");
    }
}
