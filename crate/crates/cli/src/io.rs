//! CSV ingestion: power logs, temperature schedules, index tables.
//!
//! All inputs are comma-separated UTF-8 with a mandatory header; data errors
//! name the offending row (1-based, counting from the first row after the
//! header).

use hyload_core::diffusion::TemperatureSchedule;
use hyload_core::error::{Error, Result};
use hyload_core::guidance::IndexData;
use std::path::Path;

/// Read a two-column CSV with an exact expected header.
fn read_pairs(path: &Path, expected_header: &str) -> Result<Vec<(f64, f64)>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Data(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .map(|l| l.trim_end_matches('\r'))
        .ok_or_else(|| Error::Data(format!("{}: empty file", path.display())))?;
    if header != expected_header {
        return Err(Error::Data(format!(
            "{}: expected header '{expected_header}', found '{header}'",
            path.display()
        )));
    }
    let mut rows = Vec::new();
    for (i, raw) in lines.enumerate() {
        let line = raw.trim_end_matches('\r').trim();
        if line.is_empty() {
            continue;
        }
        let row = i + 1;
        let (a, b) = line.split_once(',').ok_or_else(|| {
            Error::Data(format!(
                "{} row {row}: expected two comma-separated fields",
                path.display()
            ))
        })?;
        let a: f64 = a.trim().parse().map_err(|_| {
            Error::Data(format!(
                "{} row {row}: '{}' is not a number",
                path.display(),
                a.trim()
            ))
        })?;
        let b: f64 = b.trim().parse().map_err(|_| {
            Error::Data(format!(
                "{} row {row}: '{}' is not a number",
                path.display(),
                b.trim()
            ))
        })?;
        rows.push((a, b));
    }
    Ok(rows)
}

/// `time_s,power_mW` → (seconds, watts) rows.
pub fn read_power_log(path: &Path) -> Result<Vec<(f64, f64)>> {
    Ok(read_pairs(path, "time_s,power_mW")?
        .into_iter()
        .map(|(t, p_mw)| (t, p_mw * 1e-3))
        .collect())
}

/// `duration_s,temperature_C` → a validated [`TemperatureSchedule`].
pub fn read_schedule(path: &Path) -> Result<TemperatureSchedule> {
    let segments: Vec<(f64, f64)> = read_pairs(path, "duration_s,temperature_C")?
        .into_iter()
        .map(|(d, c)| (d, c + 273.15))
        .collect();
    TemperatureSchedule::new(segments)
}

/// `wavelength_nm,effective_NA` → validated [`IndexData`].
pub fn read_index_table(path: &Path) -> Result<IndexData> {
    let rows: Vec<(f64, f64)> = read_pairs(path, "wavelength_nm,effective_NA")?
        .into_iter()
        .map(|(nm, na)| (nm * 1e-9, na))
        .collect();
    let data = IndexData::Table(rows);
    data.validate()?;
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn power_log_reads_and_converts() {
        let f = write_temp("time_s,power_mW\n0,20\n86400,20\n");
        let rows = read_power_log(f.path()).unwrap();
        assert_eq!(rows, vec![(0.0, 0.02), (86400.0, 0.02)]);
    }

    #[test]
    fn header_is_mandatory_and_exact() {
        let f = write_temp("t,p\n0,20\n");
        let err = read_power_log(f.path()).unwrap_err();
        assert!(matches!(err, Error::Data(_)));
    }

    #[test]
    fn bad_rows_are_named() {
        let f = write_temp("time_s,power_mW\n0,20\nten,20\n");
        let err = read_power_log(f.path()).unwrap_err();
        match err {
            Error::Data(msg) => assert!(msg.contains("row 2"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn schedule_converts_celsius() {
        let f = write_temp("duration_s,temperature_C\n2592000,-70\n");
        let sched = read_schedule(f.path()).unwrap();
        let (dur, temp) = sched.segments()[0];
        assert_eq!(dur, 2_592_000.0);
        assert!((temp - 203.15).abs() < 1e-12);
    }

    #[test]
    fn index_table_converts_nanometres() {
        let f = write_temp("wavelength_nm,effective_NA\n300,0.02\n600,0.08\n");
        let idx = read_index_table(f.path()).unwrap();
        assert!((idx.na_at(450e-9).unwrap() - 0.05).abs() < 1e-12);
    }
}
