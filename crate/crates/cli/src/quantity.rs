//! Unit-suffixed flag values: `160bar`, `60C`, `2e20cm-3`, `3.5cm`.
//!
//! Every dimensioned flag must carry a unit suffix; a bare number is a usage
//! error rather than a silently assumed unit.

use hyload_core::error::{Error, Result};
use hyload_core::units::{parse_unit, to_si, Dimension};

/// Parse `<number><unit>` into an SI value of the expected dimension.
pub fn parse_quantity(raw: &str, expected: Dimension, flag: &str) -> Result<f64> {
    let raw = raw.trim();
    // longest numeric prefix, so exponents survive ("2e20cm-3" -> "2e20")
    let mut split = None;
    for i in (1..=raw.len()).rev() {
        if raw.is_char_boundary(i) && raw[..i].parse::<f64>().is_ok() {
            split = Some(i);
            break;
        }
    }
    let Some(i) = split else {
        return Err(Error::Usage(format!(
            "--{flag}: expected <number><unit>, got '{raw}'"
        )));
    };
    let value: f64 = raw[..i].parse().expect("checked above");
    let suffix = &raw[i..];
    if suffix.is_empty() {
        return Err(Error::Usage(format!(
            "--{flag}: missing unit suffix on '{raw}' (write e.g. 20C, 100bar, 115um)"
        )));
    }
    let unit = parse_unit(suffix).map_err(|e| Error::Usage(format!("--{flag}: {e}")))?;
    if unit.dimension() != expected {
        return Err(Error::Usage(format!(
            "--{flag}: unit '{}' has dimension {:?}, expected {:?}",
            unit.symbol(),
            unit.dimension(),
            expected
        )));
    }
    to_si(value, unit).map(|q| q.value)
}
