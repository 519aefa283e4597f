//! Raw-sample CSV files and JSON summary documents.
//!
//! CSV files are UTF-8 with LF line endings, a header row, and `.` as the
//! decimal separator. Floats print in Rust's shortest round-trip form, so
//! re-parsing a raw file recovers the exact sample values behind a summary.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use hpek::pow::NonceSample;
use hpek::stats::QuartileSummary;
use hpek::timing::TimingSample;

use crate::host::HostInfo;
use crate::{CliError, Result};

/// One per-algorithm summary line, the row shape shared by every experiment.
#[derive(Debug, Clone, Serialize)]
pub struct SummaryRow {
    pub algorithm: String,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub n: usize,
}

impl SummaryRow {
    pub fn new(algorithm: &str, summary: &QuartileSummary) -> Self {
        SummaryRow {
            algorithm: algorithm.to_string(),
            q1: summary.q1,
            median: summary.median,
            q3: summary.q3,
            n: summary.n,
        }
    }
}

/// Experiment-relevant configuration echoed into the summary document.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ConfigEcho {
    pub algorithms: Vec<String>,
    pub seed: String,
    /// Unit of the q1/median/q3 columns.
    pub unit: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message_bytes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<usize>,
}

/// The JSON summary document. Key order is fixed by declaration so equal
/// runs serialize to equal bytes.
#[derive(Debug, Serialize)]
pub struct SummaryDoc<'a> {
    pub experiment: &'a str,
    pub config: &'a ConfigEcho,
    pub host: &'a HostInfo,
    pub rows: &'a [SummaryRow],
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_summary_json(path: &Path, doc: &SummaryDoc<'_>) -> Result<()> {
    let mut json = serde_json::to_vec_pretty(doc).expect("summary serialization");
    json.push(b'\n');
    write_file(path, &json)
}

pub fn write_entropy_csv(path: &Path, values: &[f64]) -> Result<()> {
    let mut out = String::with_capacity(values.len() * 20 + 16);
    out.push_str("index,entropy\n");
    for (i, v) in values.iter().enumerate() {
        writeln!(out, "{i},{v}").unwrap();
    }
    write_file(path, out.as_bytes())
}

pub fn write_pow_csv(path: &Path, samples: &[NonceSample]) -> Result<()> {
    let mut out = String::with_capacity(samples.len() * 12 + 16);
    out.push_str("trial,nonce\n");
    for s in samples {
        writeln!(out, "{},{}", s.trial_index, s.nonce).unwrap();
    }
    write_file(path, out.as_bytes())
}

pub fn write_timing_csv(path: &Path, samples: &[TimingSample]) -> Result<()> {
    let mut out = String::with_capacity(samples.len() * 12 + 16);
    out.push_str("rep,nanos\n");
    for (i, s) in samples.iter().enumerate() {
        writeln!(out, "{i},{}", s.nanos).unwrap();
    }
    write_file(path, out.as_bytes())
}

/// Parses one of the raw CSV formats back into its value column.
pub fn read_csv_values(path: &Path) -> Result<Vec<f64>> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut values = Vec::new();
    for line in text.lines().skip(1) {
        let (_, value) = line.split_once(',').ok_or_else(|| {
            CliError::Io {
                path: path.to_path_buf(),
                source: std::io::Error::new(
                    std::io::ErrorKind::InvalidData,
                    format!("malformed CSV line: {line}"),
                ),
            }
        })?;
        values.push(value.parse::<f64>().map_err(|e| CliError::Io {
            path: path.to_path_buf(),
            source: std::io::Error::new(std::io::ErrorKind::InvalidData, e),
        })?);
    }
    Ok(values)
}

/// `dir/NAME.ext` using the algorithm's canonical name.
pub fn algorithm_file(dir: &Path, name: &str, ext: &str) -> PathBuf {
    dir.join(format!("{name}.{ext}"))
}
