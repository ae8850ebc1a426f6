//! Matrix interchange format.
//!
//! A matrix is a JSON object `{"rows": r, "cols": c, "data": [[re, im], …]}` with
//! `data` holding the `r·c` entries row by row. On the command line the bare `data`
//! array is also accepted when the shape is given separately, and any argument
//! starting with `@` names a file holding the JSON text.

use std::path::Path;

use grassmann_core::numkernel::ComplexMatrix;
use grassmann_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.as_slice().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_matrix(&self) -> CliResult<ComplexMatrix> {
        let data = self.data.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        Ok(ComplexMatrix::new(self.rows, self.cols, data)?)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixInput {
    Full(MatrixJson),
    Data(Vec<[f64; 2]>),
}

/// Reads `@path` arguments from disk and returns everything else unchanged.
pub fn resolve_arg(arg: &str) -> CliResult<String> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.into(),
            source,
        }),
        None => Ok(arg.to_owned()),
    }
}

/// Parses a matrix argument. `shape` supplies `(rows, cols)` for bare data arrays
/// and, when present, must match the shape of a full object.
pub fn parse_matrix(arg: &str, shape: Option<(usize, usize)>) -> CliResult<ComplexMatrix> {
    let text = resolve_arg(arg)?;
    let input: MatrixInput = serde_json::from_str(text.trim())
        .map_err(|e| CliError::Input(format!("expected a matrix object or a [[re, im], …] array: {e}")))?;
    let json = match input {
        MatrixInput::Full(json) => {
            if let Some(expected) = shape.filter(|&s| s != (json.rows, json.cols)) {
                return Err(grassmann_core::Error::ShapeMismatch {
                    expected,
                    got: (json.rows, json.cols),
                }
                .into());
            }
            json
        }
        MatrixInput::Data(data) => {
            let (rows, cols) =
                shape.ok_or_else(|| CliError::Input("a bare data array needs the shape from --n and --m".into()))?;
            MatrixJson { rows, cols, data }
        }
    };
    json.to_matrix()
}

pub fn matrix_to_json(m: &ComplexMatrix) -> serde_json::Value {
    serde_json::to_value(MatrixJson::from_matrix(m)).expect("matrix serializes")
}

/// Writes pretty JSON followed by a newline to `path`, or to stdout when absent.
pub fn emit_json(value: &impl Serialize, path: Option<&Path>) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit_text(&text, path)
}

pub fn emit_text(text: &str, path: Option<&Path>) -> CliResult<()> {
    use std::io::Write;
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Serializes `f64` as a JSON number when finite and as `"inf"`, `"-inf"` or `"nan"`
/// otherwise, so reports with unbounded values still parse back.
pub mod extended_float {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        match *v {
            x if x.is_finite() => s.serialize_f64(x),
            x if x.is_nan() => s.serialize_str("nan"),
            x if x > 0.0 => s.serialize_str("inf"),
            _ => s.serialize_str("-inf"),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Number(f64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Number(x) => Ok(x),
            Repr::Text(t) => match t.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(serde::de::Error::custom(format!("not a number: {other}"))),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_array_needs_shape() {
        assert!(matches!(parse_matrix("[[0.5, 0]]", None), Err(CliError::Input(_))));
        let m = parse_matrix("[[0.75, 0]]", Some((1, 1))).unwrap();
        assert_eq!(m[(0, 0)], Complex64::new(0.75, 0.0));
    }

    #[test]
    fn full_object_round_trips() {
        let m = ComplexMatrix::from_fn(2, 3, |i, j| Complex64::new(i as f64 - 0.25, j as f64 * 1e-17));
        let text = serde_json::to_string(&MatrixJson::from_matrix(&m)).unwrap();
        assert_eq!(parse_matrix(&text, None).unwrap(), m);
        assert_eq!(parse_matrix(&text, Some((2, 3))).unwrap(), m);
        let err = parse_matrix(&text, Some((3, 2))).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn wrong_length_and_garbage_are_bad_input() {
        assert_eq!(
            parse_matrix("[[1, 0], [2, 0]]", Some((1, 1))).unwrap_err().exit_code(),
            2
        );
        assert_eq!(parse_matrix("{\"rows\": 1}", None).unwrap_err().exit_code(), 2);
        assert_eq!(
            parse_matrix("@/nonexistent/matrix.json", None).unwrap_err().exit_code(),
            2
        );
    }
}
