//! Deterministic output formatting: 9 significant digits in machine mode,
//! 4 in human mode, plus humanized durations.

use std::io::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Csv,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "human" => Some(Format::Human),
            "csv" => Some(Format::Csv),
            _ => None,
        }
    }
}

/// 9 significant digits, scientific; the machine-mode number format.
pub fn sig9(x: f64) -> String {
    format!("{x:.8e}")
}

/// 4 significant digits; plain decimal in a friendly range, scientific
/// outside it.
pub fn sig4(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{x:.3e}").parse().expect("round-trip of {:.3e}");
    let a = rounded.abs();
    if (1e-3..1e6).contains(&a) {
        let magnitude = a.log10().floor() as i32;
        let decimals = (3 - magnitude).max(0) as usize;
        format!("{rounded:.decimals$}")
    } else {
        format!("{x:.3e}")
    }
}

/// "1.358e6 s (15.72 days)"-style rendering for humans.
pub fn human_duration(seconds: f64) -> String {
    let (value, unit) = if seconds < 120.0 {
        return format!("{} s", sig4(seconds));
    } else if seconds < 3600.0 {
        (seconds / 60.0, "minutes")
    } else if seconds < 48.0 * 3600.0 {
        (seconds / 3600.0, "hours")
    } else if seconds < 730.0 * 86400.0 {
        (seconds / 86400.0, "days")
    } else {
        (seconds / (365.25 * 86400.0), "years")
    };
    format!("{} s ({} {})", sig4(seconds), sig4(value), unit)
}

enum RowValue {
    Number(f64),
    Duration(f64),
    Text(String),
}

/// A keyed record report: `key,value` CSV rows in machine mode, aligned
/// labels in human mode.
pub struct Report {
    rows: Vec<(String, String, RowValue)>,
}

impl Report {
    pub fn new() -> Self {
        Report { rows: Vec::new() }
    }

    pub fn number(&mut self, key: &str, label: &str, value: f64) -> &mut Self {
        self.rows
            .push((key.into(), label.into(), RowValue::Number(value)));
        self
    }

    pub fn duration(&mut self, key: &str, label: &str, seconds: f64) -> &mut Self {
        self.rows
            .push((key.into(), label.into(), RowValue::Duration(seconds)));
        self
    }

    pub fn text(&mut self, key: &str, label: &str, value: &str) -> &mut Self {
        self.rows
            .push((key.into(), label.into(), RowValue::Text(value.into())));
        self
    }

    pub fn print(&self, format: Format, out: &mut impl Write) -> std::io::Result<()> {
        match format {
            Format::Csv => {
                writeln!(out, "key,value")?;
                for (key, _, value) in &self.rows {
                    let rendered = match value {
                        RowValue::Number(v) | RowValue::Duration(v) => sig9(*v),
                        RowValue::Text(s) => s.clone(),
                    };
                    writeln!(out, "{key},{rendered}")?;
                }
            }
            Format::Human => {
                let width = self.rows.iter().map(|(_, l, _)| l.len()).max().unwrap_or(0);
                for (_, label, value) in &self.rows {
                    let rendered = match value {
                        RowValue::Number(v) => sig4(*v),
                        RowValue::Duration(v) => human_duration(*v),
                        RowValue::Text(s) => s.clone(),
                    };
                    writeln!(out, "{label:<width$}  {rendered}")?;
                }
            }
        }
        Ok(())
    }
}
