//! File loaders and the CSV formats.
//!
//! CSV files carry a header row, use '.' as the decimal separator, and
//! print floats in scientific notation with 17 significant digits, which
//! round-trips every f64 bit-faithfully.

use std::fs;
use std::path::Path;

use crate::algebra::LatticeElement;
use crate::crossed::CrossedParts;
use crate::error::{Error, Result};
use crate::norm::NormSweepRow;
use crate::suites::SemiclassicalPoint;
use crate::theta::ThetaMatrix;

/// 17 significant digits in scientific notation.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_f64(field: &str) -> Result<f64> {
    field
        .trim()
        .parse::<f64>()
        .map_err(|e| Error::InvalidInput(format!("bad float '{field}': {e}")))
}

fn parse_i64(field: &str) -> Result<i64> {
    field
        .trim()
        .parse::<i64>()
        .map_err(|e| Error::InvalidInput(format!("bad integer '{field}': {e}")))
}

fn parse_usize(field: &str) -> Result<usize> {
    field
        .trim()
        .parse::<usize>()
        .map_err(|e| Error::InvalidInput(format!("bad integer '{field}': {e}")))
}

pub fn load_theta(path: impl AsRef<Path>) -> Result<ThetaMatrix> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

pub fn load_element(path: impl AsRef<Path>) -> Result<LatticeElement> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

pub fn load_crossed_parts(path: impl AsRef<Path>) -> Result<CrossedParts> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: serde::Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Write through a sibling temp file and rename, so readers never see a
/// half-written file.
pub fn atomic_write(path: impl AsRef<Path>, contents: &str) -> Result<()> {
    let path = path.as_ref();
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

pub const SEMICLASSICAL_CSV_HEADER: &str = "hbar,residual";
pub const NORM_SWEEP_CSV_HEADER: &str = "hbar,radius,norm_lower,norm_upper,iterations";

pub fn semiclassical_csv(points: &[SemiclassicalPoint]) -> String {
    let mut out = String::from(SEMICLASSICAL_CSV_HEADER);
    out.push('\n');
    for p in points {
        out.push_str(&format!(
            "{},{}\n",
            format_f64(p.hbar),
            format_f64(p.residual)
        ));
    }
    out
}

pub fn parse_semiclassical_csv(contents: &str) -> Result<Vec<(f64, f64)>> {
    let mut lines = contents.lines();
    match lines.next() {
        Some(h) if h.trim() == SEMICLASSICAL_CSV_HEADER => {}
        other => {
            return Err(Error::InvalidInput(format!(
                "expected header '{SEMICLASSICAL_CSV_HEADER}', got {other:?}"
            )))
        }
    }
    let mut rows = Vec::new();
    for line in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 2 {
            return Err(Error::InvalidInput(format!("expected 2 fields, got '{line}'")));
        }
        rows.push((parse_f64(fields[0])?, parse_f64(fields[1])?));
    }
    Ok(rows)
}

pub fn norm_sweep_csv(rows: &[NormSweepRow]) -> String {
    let mut out = String::from(NORM_SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            format_f64(r.hbar),
            r.radius,
            format_f64(r.norm_lower),
            format_f64(r.norm_upper),
            r.iterations
        ));
    }
    out
}

pub fn parse_norm_sweep_csv(contents: &str) -> Result<Vec<NormSweepRow>> {
    let mut lines = contents.lines();
    match lines.next() {
        Some(h) if h.trim() == NORM_SWEEP_CSV_HEADER => {}
        other => {
            return Err(Error::InvalidInput(format!(
                "expected header '{NORM_SWEEP_CSV_HEADER}', got {other:?}"
            )))
        }
    }
    let mut rows = Vec::new();
    for line in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(Error::InvalidInput(format!("expected 5 fields, got '{line}'")));
        }
        rows.push(NormSweepRow {
            hbar: parse_f64(fields[0])?,
            radius: parse_i64(fields[1])?,
            norm_lower: parse_f64(fields[2])?,
            norm_upper: parse_f64(fields[3])?,
            iterations: parse_usize(fields[4])?,
        });
    }
    Ok(rows)
}
