//! Curing power logs and cumulative optical energy E_tot = ∫ P dt.

use hyload_core::error::{Error, Result};

/// A validated power-vs-time log: strictly increasing times, non-negative
/// power, at least two rows so the integral is defined.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerLog {
    rows: Vec<(f64, f64)>, // (s, W)
}

impl PowerLog {
    pub fn new(rows: Vec<(f64, f64)>) -> Result<Self> {
        if rows.len() < 2 {
            return Err(Error::Data(format!(
                "power log needs at least 2 rows for integration, got {}",
                rows.len()
            )));
        }
        for (i, &(t, p)) in rows.iter().enumerate() {
            let row = i + 1;
            if !t.is_finite() || !p.is_finite() {
                return Err(Error::Data(format!(
                    "power log row {row}: non-finite value"
                )));
            }
            if p < 0.0 {
                return Err(Error::Data(format!(
                    "power log row {row}: negative power {p} W"
                )));
            }
            if i > 0 && t <= rows[i - 1].0 {
                return Err(Error::Data(format!(
                    "power log row {row}: time {t} s does not increase over the previous row"
                )));
            }
        }
        Ok(PowerLog { rows })
    }

    pub fn rows(&self) -> &[(f64, f64)] {
        &self.rows
    }

    pub fn duration(&self) -> f64 {
        self.rows.last().unwrap().0 - self.rows.first().unwrap().0
    }
}

/// Trapezoidal cumulative energy [J].
pub fn integrate_energy(log: &PowerLog) -> f64 {
    log.rows
        .windows(2)
        .map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_curing_power_over_a_day() {
        // 20 mW for 24 h: 1728 J on the nose
        let log = PowerLog::new(vec![(0.0, 0.02), (86_400.0, 0.02)]).unwrap();
        assert_eq!(integrate_energy(&log), 1728.0);
    }

    #[test]
    fn triangle_ramp() {
        let log = PowerLog::new(vec![(0.0, 0.0), (100.0, 0.02)]).unwrap();
        assert_eq!(integrate_energy(&log), 1.0);
    }

    #[test]
    fn zero_power_interval() {
        let log = PowerLog::new(vec![(0.0, 0.0), (50.0, 0.0)]).unwrap();
        assert_eq!(integrate_energy(&log), 0.0);
    }

    #[test]
    fn validation_names_rows() {
        let err = PowerLog::new(vec![(0.0, 0.02), (10.0, -0.01)]).unwrap_err();
        match err {
            Error::Data(msg) => assert!(msg.contains("row 2"), "{msg}"),
            other => panic!("{other:?}"),
        }
        let err = PowerLog::new(vec![(0.0, 0.02), (0.0, 0.02)]).unwrap_err();
        match err {
            Error::Data(msg) => assert!(msg.contains("row 2"), "{msg}"),
            other => panic!("{other:?}"),
        }
        assert!(PowerLog::new(vec![(0.0, 0.02)]).is_err());
    }

    #[test]
    fn piecewise_log_accumulates() {
        let log = PowerLog::new(vec![(0.0, 0.01), (10.0, 0.03), (20.0, 0.03)]).unwrap();
        let e = integrate_energy(&log);
        assert!((e - (0.2 + 0.3)).abs() < 1e-12);
    }
}
