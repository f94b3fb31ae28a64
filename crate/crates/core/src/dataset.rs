//! IMU dataset CSV and atomic file output.
//!
//! ```text
//! t,ax,ay,az,wx,wy,wz,bx,by,bz
//! 0.0,0,0,9.81,0,0,0,20,0,-40
//! ```
//!
//! Seconds, m/s², rad/s and µT. Lines starting with `#` and blank lines are
//! ignored; the first remaining line must be the header.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;

use thiserror::Error;

use crate::core4d::Vector3;
use crate::strapdown::ImuSample;

pub const DATASET_HEADER: &str = "t,ax,ay,az,wx,wy,wz,bx,by,bz";
const DATASET_COLUMNS: usize = 10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DatasetError {
    #[error("ParseError at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("NonMonotonicTime at line {line}: t = {t} does not follow t = {previous}")]
    NonMonotonicTime { line: usize, previous: f64, t: f64 },
    #[error("ColumnCountMismatch at line {line}: expected 10 columns, found {found}")]
    ColumnCountMismatch { line: usize, found: usize },
}

fn parse_field(field: &str, line: usize, column: usize) -> Result<f64, DatasetError> {
    let name = DATASET_HEADER.split(',').nth(column).unwrap_or("?");
    match field.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        Ok(v) => Err(DatasetError::Parse {
            line,
            message: format!("column {name} is not finite ({v})"),
        }),
        Err(_) => Err(DatasetError::Parse {
            line,
            message: format!("column {name}: cannot parse {field:?} as a number"),
        }),
    }
}

/// One sample per data row, in file order.
pub fn parse_dataset(bytes: &[u8]) -> Result<Vec<ImuSample>, DatasetError> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let line = bytes[..e.valid_up_to()].iter().filter(|b| **b == b'\n').count() + 1;
        DatasetError::Parse {
            line,
            message: "invalid UTF-8".into(),
        }
    })?;
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut samples: Vec<ImuSample> = Vec::new();
    let mut header_seen = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        if !header_seen {
            let normalized: Vec<&str> = l.split(',').map(str::trim).collect();
            if normalized.join(",") != DATASET_HEADER {
                return Err(DatasetError::Parse {
                    line,
                    message: format!("expected header {DATASET_HEADER:?}"),
                });
            }
            header_seen = true;
            continue;
        }
        let fields: Vec<&str> = l.split(',').collect();
        if fields.len() != DATASET_COLUMNS {
            return Err(DatasetError::ColumnCountMismatch {
                line,
                found: fields.len(),
            });
        }
        let mut v = [0.0; DATASET_COLUMNS];
        for (column, (slot, f)) in v.iter_mut().zip(&fields).enumerate() {
            *slot = parse_field(f, line, column)?;
        }
        if let Some(prev) = samples.last() {
            if v[0] <= prev.t {
                return Err(DatasetError::NonMonotonicTime {
                    line,
                    previous: prev.t,
                    t: v[0],
                });
            }
        }
        samples.push(ImuSample::new(
            v[0],
            Vector3::new(v[1], v[2], v[3]),
            Vector3::new(v[4], v[5], v[6]),
            Vector3::new(v[7], v[8], v[9]),
        ));
    }
    if !header_seen {
        return Err(DatasetError::Parse {
            line: 1,
            message: "missing header".into(),
        });
    }
    Ok(samples)
}

/// Writes samples with shortest round-trip number formatting.
pub fn serialize_dataset(samples: &[ImuSample]) -> String {
    let mut out = String::with_capacity(samples.len() * 80 + 32);
    out.push_str(DATASET_HEADER);
    out.push('\n');
    for s in samples {
        let _ = write!(out, "{}", s.t);
        for v in s.accel.iter().chain(s.gyro.iter()).chain(s.mag.iter()) {
            let _ = write!(out, ",{v}");
        }
        out.push('\n');
    }
    out
}

/// Writes `bytes` to `path` through a temporary file in the same directory,
/// so readers never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
