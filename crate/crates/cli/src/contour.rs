//! Concentration-change contour grid over temperature × time, the plot-ready
//! companion to the loading planner.
//!
//! Cell values are the relative concentration *change* from the initial
//! state, so one grid reads both ways: for an empty fiber a value of 0.2 is
//! the time to reach 20% full, for a saturated fiber it is 20% lost.

use hyload_core::diffusion::{c_in, theta, FiberSpec, GeometryCase};
use hyload_core::error::{Error, Result};
use hyload_core::material::{diffusivity, MaterialParams};
use std::io::Write;

/// Prefix an error's message, preserving its class (and exit code).
fn with_context(e: Error, ctx: &str) -> Error {
    match e {
        Error::Usage(m) => Error::Usage(format!("{ctx}: {m}")),
        Error::Domain(m) => Error::Domain(format!("{ctx}: {m}")),
        Error::Data(m) => Error::Data(format!("{ctx}: {m}")),
        Error::Config(m) => Error::Config(format!("{ctx}: {m}")),
        Error::Convergence(m) => Error::Convergence(format!("{ctx}: {m}")),
        Error::Infeasible(m) => Error::Infeasible(format!("{ctx}: {m}")),
    }
}

/// Write the grid as CSV (header `temperature_K,time_s,concentration`),
/// row-major with temperature outer and time inner, 9 significant digits.
/// A failing cell aborts with its (row, column) index in the message.
pub fn emit_contour(
    out: &mut impl Write,
    temperatures_k: &[f64],
    times_s: &[f64],
    fiber: &FiberSpec,
    case: GeometryCase,
    material: &MaterialParams,
    r_frac: f64,
) -> Result<()> {
    if temperatures_k.is_empty() || times_s.is_empty() {
        return Err(Error::Usage("contour ranges must not be empty".into()));
    }
    fiber.validate()?;
    let r_eff = case.effective_radius(fiber);
    let io_err = |e: std::io::Error| Error::Data(format!("write failed: {e}"));
    writeln!(out, "temperature_K,time_s,concentration").map_err(io_err)?;
    for (i, &t_k) in temperatures_k.iter().enumerate() {
        let d = diffusivity(t_k, &material.diffusivity)
            .map_err(|e| with_context(e, &format!("contour cell ({i}, 0)")))?;
        for (j, &t_s) in times_s.iter().enumerate() {
            let cell = || format!("contour cell ({i}, {j}) at T = {t_k} K, t = {t_s} s");
            let th = theta(d, t_s, r_eff).map_err(|e| with_context(e, &cell()))?;
            let c = c_in(r_frac, th).map_err(|e| with_context(e, &cell()))?;
            writeln!(out, "{:.8e},{:.8e},{:.8e}", t_k, t_s, c).map_err(io_err)?;
        }
    }
    Ok(())
}

/// Inclusive linear range with `points` entries (a single point collapses to
/// `start`).
pub fn linspace(start: f64, end: f64, points: usize) -> Result<Vec<f64>> {
    if points == 0 {
        return Err(Error::Usage("point count must be >= 1".into()));
    }
    if points == 1 {
        return Ok(vec![start]);
    }
    if end < start {
        return Err(Error::Usage(format!("range end {end} below start {start}")));
    }
    Ok((0..points)
        .map(|i| start + (end - start) * i as f64 / (points - 1) as f64)
        .collect())
}
