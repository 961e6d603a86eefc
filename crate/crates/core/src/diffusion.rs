//! Radial diffusion in a cylinder: the Fourier–Bessel series solution, its
//! time inversion, radius scaling between fibers, geometry cases, the
//! four-step loading planner, temperature schedules and condition
//! optimization.
//!
//! Everything is phrased in the similarity variable θ = D·t/R², so a single
//! dimensionless solution serves every fiber, temperature and pressure. The
//! out-diffusion solution with uniform initial concentration and an absorbing
//! boundary is
//!
//!   C_out(r/R, θ) = 2 Σ_n J0(μ_n r/R) / (μ_n J1(μ_n)) · exp(-μ_n² θ),
//!
//! with μ_n the positive zeros of J0; in-diffusion is its complement
//! C_in = 1 - C_out. The derivation eliminates the second-kind Bessel
//! solution through finiteness on the axis; its internals (separation
//! constants, projection coefficients) have no runtime representation here.

use crate::bessel::{self, j0_raw, j1_raw};
use crate::error::{Error, Result};
use crate::guidance::IndexData;
use crate::material::{diffusivity, solubility, MaterialParams};

/// Truncation target for the series tail.
const TAIL_TOL: f64 = 1e-12;

/// Hard cap on the number of series terms.
pub const MAX_SERIES_TERMS: usize = 1_000_000;

/// Reference cladding radius [m] used by the planner's step-3 readout
/// (a 230 μm diameter fiber); step 4 rescales exactly, so the reference is
/// presentational only.
pub const REFERENCE_RADIUS: f64 = 115e-6;

/// Loading pressure and temperature, SI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasConditions {
    /// [Pa]
    pub pressure: f64,
    /// [K]
    pub temperature: f64,
}

impl GasConditions {
    pub fn validate(&self) -> Result<()> {
        if !(self.pressure >= 0.0 && self.pressure.is_finite()) {
            return Err(Error::Domain(format!(
                "pressure must be >= 0 Pa, got {}",
                self.pressure
            )));
        }
        if !(self.temperature > 0.0 && self.temperature.is_finite()) {
            return Err(Error::Domain(format!(
                "temperature must be > 0 K, got {}",
                self.temperature
            )));
        }
        Ok(())
    }
}

/// Geometric and optical description of a fiber. All lengths SI metres.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberSpec {
    pub name: String,
    /// Cladding (outer glass) radius R0.
    pub cladding_radius: f64,
    /// Hole-lattice pitch Λ.
    pub pitch: f64,
    /// Hole diameter d.
    pub hole_diameter: f64,
    /// Mode field diameter.
    pub mode_field_diameter: f64,
    /// Endcap thickness range; the minimum is the conservative out-diffusion
    /// length scale.
    pub endcap_thickness_min: f64,
    pub endcap_thickness_max: f64,
    /// Radius of the first cladding hole ring: the effective radius once the
    /// open hole structure vents hydrogen. Declared per fiber, not derived
    /// from the pitch.
    pub open_hole_radius: f64,
    /// Effective-index data for the single-mode criterion, when known. The
    /// effective NA of a hole-lattice cladding is strongly
    /// wavelength-dependent, so most presets leave this unset and supply a
    /// table at the command line instead.
    pub index_data: Option<IndexData>,
}

impl FiberSpec {
    /// The LMA-PM-10 large-mode-area PM fiber this planner ships with:
    /// R0 = 115 μm, Λ = 6 μm, d = 3 μm, MFD = 10 μm, endcaps 50–100 μm,
    /// first cladding ring diameter 10 μm.
    pub fn lma_pm_10() -> Self {
        FiberSpec {
            name: "LMA-PM-10".into(),
            cladding_radius: 115e-6,
            pitch: 6e-6,
            hole_diameter: 3e-6,
            mode_field_diameter: 10e-6,
            endcap_thickness_min: 50e-6,
            endcap_thickness_max: 100e-6,
            open_hole_radius: 5e-6,
            index_data: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let pos = [
            ("cladding_radius", self.cladding_radius),
            ("pitch", self.pitch),
            ("hole_diameter", self.hole_diameter),
            ("mode_field_diameter", self.mode_field_diameter),
            ("endcap_thickness_min", self.endcap_thickness_min),
            ("endcap_thickness_max", self.endcap_thickness_max),
            ("open_hole_radius", self.open_hole_radius),
        ];
        for (name, v) in pos {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!(
                    "fiber '{}': {name} must be > 0, got {v}",
                    self.name
                )));
            }
        }
        if !(self.hole_diameter < self.pitch && self.pitch < self.cladding_radius) {
            return Err(Error::Config(format!(
                "fiber '{}': expected hole diameter < pitch < cladding radius",
                self.name
            )));
        }
        if self.endcap_thickness_min > self.endcap_thickness_max {
            return Err(Error::Config(format!(
                "fiber '{}': endcap thickness range inverted",
                self.name
            )));
        }
        if let Some(index) = &self.index_data {
            index.validate()?;
        }
        Ok(())
    }
}

/// The three diffusion geometries bracketing a real patch cord.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeometryCase {
    /// Open hole structure vents H₂; the effective radius collapses to the
    /// first cladding ring.
    OpenHoles,
    /// Holes ignored, solid cylinder at full cladding radius. Conservative
    /// (over-estimating) for in-diffusion.
    Solid,
    /// Sealed fiber treated as a cylinder with radius equal to the minimum
    /// endcap thickness. Conservative (under-estimating) for storage: the
    /// real barrier is an axial plug, modeled here by radius substitution.
    EndcapLimited,
}

impl GeometryCase {
    pub const ALL: [GeometryCase; 3] = [
        GeometryCase::OpenHoles,
        GeometryCase::Solid,
        GeometryCase::EndcapLimited,
    ];

    pub fn effective_radius(&self, fiber: &FiberSpec) -> f64 {
        match self {
            GeometryCase::OpenHoles => fiber.open_hole_radius,
            GeometryCase::Solid => fiber.cladding_radius,
            GeometryCase::EndcapLimited => fiber.endcap_thickness_min,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            GeometryCase::OpenHoles => "open-holes",
            GeometryCase::Solid => "solid",
            GeometryCase::EndcapLimited => "endcap-limited",
        }
    }
}

/// Which boundary problem is being solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Empty fiber filling up from the boundary.
    InDiffusion,
    /// Saturated fiber venting into a well-ventilated area.
    OutDiffusion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialState {
    Empty,
    Saturated,
}

/// A fiber, a geometry case and gas conditions: the unit of planning.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffusionScenario {
    pub fiber: FiberSpec,
    pub case: GeometryCase,
    pub conditions: GasConditions,
    pub direction: Direction,
    pub initial_state: InitialState,
}

impl DiffusionScenario {
    /// In-diffusion pairs with an empty fiber, out-diffusion with a saturated
    /// one; any other combination is rejected.
    pub fn new(
        fiber: FiberSpec,
        case: GeometryCase,
        conditions: GasConditions,
        direction: Direction,
        initial_state: InitialState,
    ) -> Result<Self> {
        fiber.validate()?;
        conditions.validate()?;
        let ok = matches!(
            (direction, initial_state),
            (Direction::InDiffusion, InitialState::Empty)
                | (Direction::OutDiffusion, InitialState::Saturated)
        );
        if !ok {
            return Err(Error::Domain(
                "in-diffusion starts empty and out-diffusion starts saturated".into(),
            ));
        }
        Ok(DiffusionScenario {
            fiber,
            case,
            conditions,
            direction,
            initial_state,
        })
    }

    pub fn effective_radius(&self) -> f64 {
        self.case.effective_radius(&self.fiber)
    }

    /// Relative concentration at radial fraction `r_frac` after `time`
    /// seconds under this scenario's conditions.
    pub fn relative_concentration(
        &self,
        r_frac: f64,
        time: f64,
        material: &MaterialParams,
    ) -> Result<f64> {
        let d = diffusivity(self.conditions.temperature, &material.diffusivity)?;
        let th = theta(d, time, self.effective_radius())?;
        match self.direction {
            Direction::InDiffusion => c_in(r_frac, th),
            Direction::OutDiffusion => c_out(r_frac, th),
        }
    }
}

/// Piecewise-constant temperature history.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TemperatureSchedule {
    /// (duration [s], temperature [K]) segments in order.
    segments: Vec<(f64, f64)>,
}

impl TemperatureSchedule {
    pub fn new(segments: Vec<(f64, f64)>) -> Result<Self> {
        for (i, &(dur, temp)) in segments.iter().enumerate() {
            if !(dur > 0.0 && dur.is_finite()) {
                return Err(Error::Domain(format!(
                    "schedule segment {}: duration must be > 0 s, got {dur}",
                    i + 1
                )));
            }
            if !(temp > 0.0 && temp.is_finite()) {
                return Err(Error::Domain(format!(
                    "schedule segment {}: temperature must be > 0 K, got {temp}",
                    i + 1
                )));
            }
        }
        Ok(TemperatureSchedule { segments })
    }

    pub fn segments(&self) -> &[(f64, f64)] {
        &self.segments
    }

    pub fn total_duration(&self) -> f64 {
        self.segments.iter().map(|(d, _)| d).sum()
    }
}

/// Relative concentration sampled on radial fractions × times.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationField {
    pub r_fractions: Vec<f64>,
    pub times: Vec<f64>,
    values: Vec<Vec<f64>>, // [time][r]
}

impl ConcentrationField {
    /// Build a field, absorbing floating-point overshoots of the [0, 1] range
    /// up to 1e-9; anything larger signals a broken producer.
    pub fn new(r_fractions: Vec<f64>, times: Vec<f64>, mut values: Vec<Vec<f64>>) -> Result<Self> {
        if values.len() != times.len() {
            return Err(Error::Data("field rows must match times".into()));
        }
        for row in &mut values {
            if row.len() != r_fractions.len() {
                return Err(Error::Data(
                    "field columns must match radial samples".into(),
                ));
            }
            for v in row.iter_mut() {
                if !v.is_finite() || *v < -1e-9 || *v > 1.0 + 1e-9 {
                    return Err(Error::Convergence(format!(
                        "concentration {v} outside [0, 1] beyond round-off"
                    )));
                }
                *v = v.clamp(0.0, 1.0);
            }
        }
        Ok(ConcentrationField {
            r_fractions,
            times,
            values,
        })
    }

    pub fn value(&self, time_index: usize, r_index: usize) -> f64 {
        self.values[time_index][r_index]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.values
    }
}

/// A single concentration sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcentrationSample {
    pub r_frac: f64,
    pub time: f64,
    pub concentration: f64,
}

/// Dimensionless diffusion time θ = D·t/R².
pub fn theta(diffusivity_si: f64, time: f64, effective_radius: f64) -> Result<f64> {
    if !(diffusivity_si > 0.0 && diffusivity_si.is_finite()) {
        return Err(Error::Domain(format!(
            "diffusivity must be > 0, got {diffusivity_si}"
        )));
    }
    if !(effective_radius > 0.0 && effective_radius.is_finite()) {
        return Err(Error::Domain(format!(
            "effective radius must be > 0, got {effective_radius}"
        )));
    }
    if !(time >= 0.0 && time.is_finite()) {
        return Err(Error::Domain(format!("time must be >= 0, got {time}")));
    }
    Ok(diffusivity_si * time / (effective_radius * effective_radius))
}

/// Equal-θ rescaling of a diffusion time between radii: t · (R_to/R_from)².
pub fn scale_time(time: f64, r_from: f64, r_to: f64) -> Result<f64> {
    if !(r_from > 0.0 && r_from.is_finite() && r_to > 0.0 && r_to.is_finite()) {
        return Err(Error::Domain("radii must be > 0".into()));
    }
    if !(time >= 0.0 && time.is_finite()) {
        return Err(Error::Domain(format!("time must be >= 0, got {time}")));
    }
    let ratio = r_to / r_from;
    Ok(time * ratio * ratio)
}

/// Diagnostics of one series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEval {
    /// Clamped value in [0, 1].
    pub value: f64,
    pub terms_used: usize,
    /// Analytic bound on the omitted tail.
    pub tail_bound: f64,
    /// How much clamping moved the raw sum; stays < 1e-6 for θ >= 1e-5.
    pub clamp_adjustment: f64,
}

/// Bound on the absolute value of the series tail over zeros >= mu.
///
/// Uses |J0| <= 1, |J1(μ_n)|·√μ_n >= 0.79 and the gap lower bound
/// μ_{n+j} >= μ_n + 3j, so
/// |tail| <= (2/0.79)·μ^(-1/2)·exp(-μ²θ) / (1 - exp(-6μθ)).
fn tail_bound(mu: f64, theta: f64) -> f64 {
    let denom = -f64::exp_m1(-6.0 * mu * theta);
    (2.0 / 0.79) / mu.sqrt() * (-mu * mu * theta).exp() / denom
}

/// Smallest table size guaranteed to push the tail bound under `TAIL_TOL`,
/// or a convergence error reporting the bound achievable at the term cap.
fn required_terms(theta: f64) -> Result<usize> {
    const MU1: f64 = 2.404_825_557_695_773;
    let mu_cap = (MAX_SERIES_TERMS as f64 - 0.25) * std::f64::consts::PI;
    if tail_bound(mu_cap, theta) >= TAIL_TOL {
        return Err(Error::Convergence(format!(
            "series needs more than {MAX_SERIES_TERMS} terms at theta = {theta:.3e}; \
             achievable tail bound {:.3e} > {TAIL_TOL:.0e}",
            tail_bound(mu_cap, theta)
        )));
    }
    // geometric bracket then bisection on the monotone bound
    let mut lo = MU1;
    let mut hi = MU1;
    while tail_bound(hi, theta) >= TAIL_TOL {
        lo = hi;
        hi = (hi * 1.5).min(mu_cap);
    }
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if tail_bound(mid, theta) < TAIL_TOL {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(((hi / std::f64::consts::PI).ceil() as usize + 2).min(MAX_SERIES_TERMS))
}

fn check_series_args(r_frac: f64, theta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&r_frac) || !r_frac.is_finite() {
        return Err(Error::Domain(format!(
            "radial fraction must be in [0, 1], got {r_frac}"
        )));
    }
    if !(theta >= 0.0 && theta.is_finite()) {
        return Err(Error::Domain(format!("theta must be >= 0, got {theta}")));
    }
    Ok(())
}

/// Out-diffusion series with evaluation diagnostics.
pub fn c_out_detailed(r_frac: f64, theta: f64) -> Result<SeriesEval> {
    check_series_args(r_frac, theta)?;
    // boundary and initial conditions hold exactly
    if r_frac == 1.0 {
        return Ok(SeriesEval {
            value: 0.0,
            terms_used: 0,
            tail_bound: 0.0,
            clamp_adjustment: 0.0,
        });
    }
    if theta == 0.0 {
        return Ok(SeriesEval {
            value: 1.0,
            terms_used: 0,
            tail_bound: 0.0,
            clamp_adjustment: 0.0,
        });
    }
    let n_req = required_terms(theta)?;
    let zeros = bessel::zeros_up_to(n_req)?;
    let mut sum = 0.0;
    let mut used = n_req;
    let mut bound = TAIL_TOL;
    for (i, &mu) in zeros.iter().take(n_req).enumerate() {
        sum += 2.0 * j0_raw(mu * r_frac) / (mu * j1_raw(mu)) * (-mu * mu * theta).exp();
        // the next zero is at least mu + 3
        let b = tail_bound(mu + 3.0, theta);
        if b < TAIL_TOL {
            used = i + 1;
            bound = b;
            break;
        }
    }
    let value = sum.clamp(0.0, 1.0);
    Ok(SeriesEval {
        value,
        terms_used: used,
        tail_bound: bound,
        clamp_adjustment: (sum - value).abs(),
    })
}

/// Relative concentration during out-diffusion, C_out(r/R, θ) ∈ [0, 1].
pub fn c_out(r_frac: f64, theta: f64) -> Result<f64> {
    Ok(c_out_detailed(r_frac, theta)?.value)
}

/// Relative concentration during in-diffusion: exactly 1 - C_out.
pub fn c_in(r_frac: f64, theta: f64) -> Result<f64> {
    Ok(1.0 - c_out(r_frac, theta)?)
}

/// Invert the series in θ: find θ with C_direction(r_frac, θ) = target.
///
/// The series is monotone in θ, so a bracketed secant/bisection hybrid on
/// θ ∈ [1e-9, 50] has a unique root. Radial fractions are limited to
/// [0, 0.9]; the truncated series loses accuracy against its clamp near the
/// boundary at small θ.
pub fn invert_time(target_fraction: f64, r_frac: f64, direction: Direction) -> Result<f64> {
    if !(target_fraction > 0.0 && target_fraction < 1.0) {
        return Err(Error::Domain(format!(
            "target fraction must lie strictly inside (0, 1), got {target_fraction} \
             (0 and 1 take zero or infinite time)"
        )));
    }
    if !(0.0..=0.9).contains(&r_frac) {
        return Err(Error::Domain(format!(
            "radial fraction for inversion must be in [0, 0.9], got {r_frac}"
        )));
    }
    // work on the decreasing branch g(θ) = c_out(r, θ) - y*
    let y_star = match direction {
        Direction::OutDiffusion => target_fraction,
        Direction::InDiffusion => 1.0 - target_fraction,
    };
    // endpoint values are analytic: at theta = 1e-9 the depletion at
    // r <= 0.9 is exp(-(1-r)^2 / 4e-9)-small, i.e. zero at f64 resolution,
    // and at theta = 50 the slowest mode carries exp(-mu_1^2 * 50) ~ 1e-126.
    // Starting from g = 1 - y* and g = -y* saves a ~5e4-term series
    // evaluation per inversion without changing the bracket.
    let mut lo = 1e-9;
    let mut hi = 50.0;
    let mut g_lo = 1.0 - y_star;
    let mut g_hi = -y_star;
    // the residual target scales down with y* so near-saturation requests
    // cannot stop anywhere in the flat depleted tail
    let tol = 1e-12_f64.min((y_star * 1e-3).max(1e-15));
    // secant steps polish the root; whenever one fails to halve the bracket
    // (false-position creep on the flat part of the curve), the next step is
    // a bisection, so the bracket provably collapses
    let mut force_bisect = false;
    for _ in 0..300 {
        let width = hi - lo;
        let secant = lo - g_lo * width / (g_hi - g_lo);
        let mid = if !force_bisect && secant.is_finite() && secant > lo && secant < hi {
            secant
        } else {
            0.5 * (lo + hi)
        };
        let g_mid = c_out(r_frac, mid)? - y_star;
        if g_mid.abs() < tol {
            return Ok(mid);
        }
        if g_mid > 0.0 {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
            g_hi = g_mid;
        }
        if hi - lo < f64::EPSILON * hi {
            return Ok(0.5 * (lo + hi));
        }
        force_bisect = hi - lo > 0.5 * width;
    }
    Err(Error::Convergence(
        "time inversion did not converge in 300 iterations".into(),
    ))
}

/// Time for the center of an initially empty cylinder to fill to `x` of
/// saturation at the given temperature and effective radius.
pub fn loading_time(
    fill_fraction: f64,
    temperature: f64,
    effective_radius: f64,
    material: &MaterialParams,
) -> Result<f64> {
    let th = invert_time(fill_fraction, 0.0, Direction::InDiffusion)?;
    let d = diffusivity(temperature, &material.diffusivity)?;
    Ok(th * effective_radius * effective_radius / d)
}

/// Loading time for one geometry case of a plan.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseTime {
    pub case: GeometryCase,
    pub effective_radius: f64,
    pub time: f64,
}

/// The four-step loading plan report.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadingPlan {
    /// Step 1: requested absolute concentration [1/m³].
    pub target_concentration: f64,
    pub conditions: GasConditions,
    /// Saturation S(p, T) [1/m³].
    pub saturation: f64,
    /// Step 2: fill fraction x = n_target / S(p, T).
    pub fill_fraction: f64,
    /// Step 3: dimensionless time for the center to reach x.
    pub theta: f64,
    /// Step 3: wall-clock time at the reference radius.
    pub reference_radius: f64,
    pub reference_time: f64,
    /// Step 4: times rescaled to each geometry case of this fiber.
    pub case_times: Vec<CaseTime>,
    /// Absolute center concentration at completion [1/m³].
    pub center_concentration: f64,
}

/// The four-step loading procedure: target concentration → solubility
/// fraction → center fill time → per-geometry rescaling.
pub fn loading_plan(
    target_concentration: f64,
    conditions: GasConditions,
    fiber: &FiberSpec,
    material: &MaterialParams,
) -> Result<LoadingPlan> {
    fiber.validate()?;
    conditions.validate()?;
    if !(target_concentration > 0.0 && target_concentration.is_finite()) {
        return Err(Error::Domain(format!(
            "target concentration must be > 0, got {target_concentration}"
        )));
    }
    let saturation = solubility(
        conditions.pressure,
        conditions.temperature,
        &material.solubility,
    )?;
    let fill_fraction = target_concentration / saturation;
    if fill_fraction >= 1.0 {
        return Err(Error::Infeasible(format!(
            "target {target_concentration:.6e} m^-3 exceeds the saturation concentration \
             {saturation:.6e} m^-3 at these conditions; raise pressure or lower the target"
        )));
    }
    let th = invert_time(fill_fraction, 0.0, Direction::InDiffusion)?;
    let d = diffusivity(conditions.temperature, &material.diffusivity)?;
    let reference_time = th * REFERENCE_RADIUS * REFERENCE_RADIUS / d;
    let case_times = GeometryCase::ALL
        .iter()
        .map(|case| {
            let r_eff = case.effective_radius(fiber);
            Ok(CaseTime {
                case: *case,
                effective_radius: r_eff,
                time: scale_time(reference_time, REFERENCE_RADIUS, r_eff)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LoadingPlan {
        target_concentration,
        conditions,
        saturation,
        fill_fraction,
        theta: th,
        reference_radius: REFERENCE_RADIUS,
        reference_time,
        case_times,
        center_concentration: fill_fraction * saturation,
    })
}

/// Time until the center of a saturated fiber decays to `remaining_fraction`
/// at the given storage temperature.
pub fn storage_time(
    remaining_fraction: f64,
    temperature: f64,
    fiber: &FiberSpec,
    case: GeometryCase,
    material: &MaterialParams,
) -> Result<f64> {
    fiber.validate()?;
    let th = invert_time(remaining_fraction, 0.0, Direction::OutDiffusion)?;
    let d = diffusivity(temperature, &material.diffusivity)?;
    let r_eff = case.effective_radius(fiber);
    Ok(th * r_eff * r_eff / d)
}

/// Concentration at each boundary of a piecewise-constant temperature
/// schedule.
///
/// The temperature enters the solution only through the accumulated
/// θ(t) = Σ D(T_i)·Δt_i / R², so a schedule is evaluated exactly, not by
/// time stepping. A single-segment schedule reproduces the direct
/// evaluation bit for bit.
pub fn schedule_concentration(
    schedule: &TemperatureSchedule,
    fiber: &FiberSpec,
    case: GeometryCase,
    r_frac: f64,
    direction: Direction,
    material: &MaterialParams,
) -> Result<ConcentrationField> {
    fiber.validate()?;
    let r_eff = case.effective_radius(fiber);
    let r_sq = r_eff * r_eff;
    let eval = |th: f64| match direction {
        Direction::InDiffusion => c_in(r_frac, th),
        Direction::OutDiffusion => c_out(r_frac, th),
    };
    let mut times = vec![0.0];
    let mut values = vec![vec![eval(0.0)?]];
    let mut elapsed = 0.0;
    let mut accumulated_dt = 0.0; // Σ D(T_i)·Δt_i
    for &(duration, temperature) in schedule.segments() {
        let d = diffusivity(temperature, &material.diffusivity)?;
        elapsed += duration;
        accumulated_dt += d * duration;
        times.push(elapsed);
        values.push(vec![eval(accumulated_dt / r_sq)?]);
    }
    ConcentrationField::new(vec![r_frac], times, values)
}

/// Search grid for [`optimize_conditions`].
///
/// Pressures sweep p_max/points … p_max; temperatures sweep
/// min_temperature … T_max. After the scan the winning cell is refined by
/// re-gridding between its neighbours, `refinement_passes` times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerGrid {
    pub pressure_points: usize,
    pub temperature_points: usize,
    pub refinement_passes: usize,
    pub min_temperature: f64,
}

impl Default for OptimizerGrid {
    fn default() -> Self {
        OptimizerGrid {
            pressure_points: 25,
            temperature_points: 25,
            refinement_passes: 2,
            min_temperature: 273.15,
        }
    }
}

/// Optimal loading conditions found by the grid search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimumConditions {
    pub pressure: f64,
    pub temperature: f64,
    pub time: f64,
    pub fill_fraction: f64,
}

/// Minimize the loading time over (p, T) subject to feasibility x < 1 and the
/// jacket-safe temperature cap `t_max` (default 333.15 K when the caller
/// passes None). Deterministic for fixed grid parameters.
pub fn optimize_conditions(
    target_concentration: f64,
    p_max: f64,
    t_max: Option<f64>,
    fiber: &FiberSpec,
    case: GeometryCase,
    material: &MaterialParams,
    grid: &OptimizerGrid,
) -> Result<OptimumConditions> {
    fiber.validate()?;
    if !(target_concentration > 0.0 && target_concentration.is_finite()) {
        return Err(Error::Domain(format!(
            "target concentration must be > 0, got {target_concentration}"
        )));
    }
    if !(p_max > 0.0 && p_max.is_finite()) {
        return Err(Error::Domain(format!("p_max must be > 0, got {p_max}")));
    }
    let t_max = t_max.unwrap_or(333.15);
    if t_max <= grid.min_temperature || !t_max.is_finite() {
        return Err(Error::Domain(format!(
            "T_max = {t_max} K must exceed the grid floor {} K",
            grid.min_temperature
        )));
    }
    if grid.pressure_points < 2 || grid.temperature_points < 2 {
        return Err(Error::Domain("grid needs at least 2x2 points".into()));
    }
    let r_eff = case.effective_radius(fiber);

    let evaluate = |p: f64, t: f64| -> Result<Option<(f64, f64)>> {
        let s = solubility(p, t, &material.solubility)?;
        let x = target_concentration / s;
        if x >= 1.0 {
            return Ok(None);
        }
        let time = loading_time(x, t, r_eff, material)?;
        Ok(Some((time, x)))
    };

    let mut p_lo = p_max / grid.pressure_points as f64;
    let mut p_hi = p_max;
    let mut t_lo = grid.min_temperature;
    let mut t_hi = t_max;
    let mut best: Option<OptimumConditions> = None;

    for _pass in 0..=grid.refinement_passes {
        let np = grid.pressure_points;
        let nt = grid.temperature_points;
        let mut best_ij = None;
        for i in 0..np {
            let p = p_lo + (p_hi - p_lo) * i as f64 / (np - 1) as f64;
            for j in 0..nt {
                let t = t_lo + (t_hi - t_lo) * j as f64 / (nt - 1) as f64;
                if let Some((time, x)) = evaluate(p, t)? {
                    let better = match &best {
                        None => true,
                        Some(b) => time < b.time,
                    };
                    if better {
                        best = Some(OptimumConditions {
                            pressure: p,
                            temperature: t,
                            time,
                            fill_fraction: x,
                        });
                        best_ij = Some((i, j));
                    }
                }
            }
        }
        match best_ij {
            Some((i, j)) => {
                // refine between the winning cell's neighbours
                let dp = (p_hi - p_lo) / (np - 1) as f64;
                let dt = (t_hi - t_lo) / (nt - 1) as f64;
                let pc = p_lo + dp * i as f64;
                let tc = t_lo + dt * j as f64;
                p_lo = (pc - dp).max(p_max / grid.pressure_points as f64);
                p_hi = (pc + dp).min(p_max);
                t_lo = (tc - dt).max(grid.min_temperature);
                t_hi = (tc + dt).min(t_max);
            }
            None if best.is_none() => {
                let s_best = solubility(p_max, grid.min_temperature, &material.solubility)?;
                return Err(Error::Infeasible(format!(
                    "target {target_concentration:.6e} m^-3 is unreachable on the grid; \
                     best saturation available is {s_best:.6e} m^-3 at p_max and {} K",
                    grid.min_temperature
                )));
            }
            None => break, // refinement window became fully infeasible; keep the incumbent
        }
    }
    Ok(best.expect("feasibility checked above"))
}
