//! Parsers for the grid and range flags.

use nctorus_core::{Error, Result};

/// "A:B:logsteps=N" — N points log-spaced from A to B inclusive. The
/// endpoints must be finite, nonzero, and of the same sign.
pub fn parse_hbar_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::InvalidInput(format!(
            "grid spec must look like 'A:B:logsteps=N', got '{spec}'"
        )));
    }
    let a: f64 = parts[0]
        .parse()
        .map_err(|e| Error::InvalidInput(format!("bad grid endpoint '{}': {e}", parts[0])))?;
    let b: f64 = parts[1]
        .parse()
        .map_err(|e| Error::InvalidInput(format!("bad grid endpoint '{}': {e}", parts[1])))?;
    let steps_part = parts[2]
        .strip_prefix("logsteps=")
        .ok_or_else(|| Error::InvalidInput(format!("expected 'logsteps=N', got '{}'", parts[2])))?;
    let steps: usize = steps_part
        .parse()
        .map_err(|e| Error::InvalidInput(format!("bad step count '{steps_part}': {e}")))?;
    if steps == 0 {
        return Err(Error::InvalidInput("logsteps must be at least 1".into()));
    }
    if a == 0.0 || b == 0.0 || !a.is_finite() || !b.is_finite() || (a < 0.0) != (b < 0.0) {
        return Err(Error::InvalidInput(format!(
            "grid endpoints must be nonzero, finite, and of one sign, got {a} and {b}"
        )));
    }
    if steps == 1 {
        return Ok(vec![a]);
    }
    let sign = a.signum();
    let (la, lb) = (a.abs().ln(), b.abs().ln());
    Ok((0..steps)
        .map(|i| {
            let t = i as f64 / (steps - 1) as f64;
            sign * (la + t * (lb - la)).exp()
        })
        .collect())
}

/// "A..B" — inclusive integer radius range with 1 ≤ A ≤ B.
pub fn parse_radius_range(spec: &str) -> Result<Vec<i64>> {
    let (a, b) = spec
        .split_once("..")
        .ok_or_else(|| Error::InvalidInput(format!("radius range must look like 'A..B', got '{spec}'")))?;
    let a: i64 = a
        .trim()
        .parse()
        .map_err(|e| Error::InvalidInput(format!("bad radius '{a}': {e}")))?;
    let b: i64 = b
        .trim()
        .parse()
        .map_err(|e| Error::InvalidInput(format!("bad radius '{b}': {e}")))?;
    if a < 1 || a > b {
        return Err(Error::InvalidInput(format!(
            "need 1 <= A <= B in radius range, got {a}..{b}"
        )));
    }
    Ok((a..=b).collect())
}
