//! Matrix files.
//!
//! ```text
//! {"format_version":"qfdiv-matrix/1","dim":2,"entries":[[re,im],...],"metadata":{...}}
//! ```
//!
//! Entries are row-major and every number is written with 17 significant digits,
//! so write → read → write reproduces the file byte for byte.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use qfdiv::linalg::{validate_state, ComplexMatrix, DensityOperator, Tolerances};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CliError;

pub const FORMAT_VERSION: &str = "qfdiv-matrix/1";

/// A double that serializes with 17 significant digits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Exact(pub f64);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return Err(serde::ser::Error::custom("non-finite matrix entry"));
        }
        let n = serde_json::Number::from_str(&format!("{:.16e}", self.0)).map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        let x = f64::from_str(&n.to_string()).map_err(serde::de::Error::custom)?;
        Ok(Exact(x))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stream: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case_id: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub format_version: String,
    pub dim: usize,
    pub entries: Vec<[Exact; 2]>,
    #[serde(default, skip_serializing_if = "is_empty_metadata")]
    pub metadata: Metadata,
}

fn is_empty_metadata(m: &Metadata) -> bool {
    *m == Metadata::default()
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix, metadata: Metadata) -> Self {
        Self {
            format_version: FORMAT_VERSION.to_string(),
            dim: m.dim(),
            entries: m.to_row_major().iter().map(|z| [Exact(z.re), Exact(z.im)]).collect(),
            metadata,
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, String> {
        if self.format_version != FORMAT_VERSION {
            return Err(format!("unsupported format_version {:?}", self.format_version));
        }
        let entries: Vec<Complex64> = self.entries.iter().map(|[re, im]| Complex64::new(re.0, im.0)).collect();
        ComplexMatrix::from_row_major(self.dim, &entries).map_err(|e| e.to_string())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("matrix file serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }
}

pub fn write_matrix(path: &Path, m: &ComplexMatrix, metadata: Metadata) -> Result<(), CliError> {
    let text = MatrixFile::from_matrix(m, metadata).to_json();
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn read_matrix_file(path: &Path) -> Result<MatrixFile, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    MatrixFile::from_json(&text).map_err(|e| CliError::invalid_state(path, e))
}

/// Reads and validates a state; parse and validation failures are both invalid-state errors.
pub fn read_state(path: &Path, tol: &Tolerances) -> Result<DensityOperator, CliError> {
    let file = read_matrix_file(path)?;
    let m = file.to_matrix().map_err(|e| CliError::invalid_state(path, e))?;
    validate_state(m, tol).map_err(|e| CliError::invalid_state(path, e.to_string()))
}
