//! JSON state files.
//!
//! ```json
//! {
//!   "dims": [2, 2],
//!   "entries": [[0.25, 0.0], [0.0, 0.0], ...]
//! }
//! ```
//!
//! `entries` holds `(d_A d_B)^2` `[re, im]` pairs in row-major order, with the
//! composite index `a * d_B + b`.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Deserialize;
use thiserror::Error;

use crate::error::Error;
use crate::matcore::ComplexMatrix;
use crate::quantum::DensityMatrix;

#[derive(Debug, Error)]
pub enum StateFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("field `{field}`: {message}")]
    Field { field: &'static str, message: String },

    #[error("invalid state: {0}")]
    InvalidState(#[source] Error),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStateFile {
    dims: (usize, usize),
    entries: Vec<(f64, f64)>,
}

pub fn parse_state(text: &str) -> Result<DensityMatrix, StateFileError> {
    let raw: RawStateFile = serde_json::from_str(text).map_err(|e| StateFileError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let (d_a, d_b) = raw.dims;
    if d_a == 0 || d_b == 0 {
        return Err(StateFileError::Field {
            field: "dims",
            message: format!("dimensions must be positive, got [{d_a}, {d_b}]"),
        });
    }
    let side = d_a * d_b;
    if raw.entries.len() != side * side {
        return Err(StateFileError::Field {
            field: "entries",
            message: format!(
                "dims [{d_a}, {d_b}] require {} [re, im] pairs, found {}",
                side * side,
                raw.entries.len()
            ),
        });
    }
    let data = raw.entries.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
    let mat = ComplexMatrix::new(side, side, data).map_err(StateFileError::InvalidState)?;
    DensityMatrix::new(mat, (d_a, d_b)).map_err(StateFileError::InvalidState)
}

pub fn read_state(path: &Path) -> Result<DensityMatrix, StateFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| StateFileError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_state(&text)
}

/// Serializes with shortest round-trip floats, one matrix entry per line.
pub fn write_state(rho: &DensityMatrix) -> String {
    let num = |x: f64| serde_json::to_string(&x).expect("finite float");
    let (d_a, d_b) = rho.dims();
    let entries: Vec<String> = rho
        .matrix()
        .entries()
        .iter()
        .map(|z| format!("    [{}, {}]", num(z.re), num(z.im)))
        .collect();
    format!(
        "{{\n  \"dims\": [{d_a}, {d_b}],\n  \"entries\": [\n{}\n  ]\n}}\n",
        entries.join(",\n")
    )
}
