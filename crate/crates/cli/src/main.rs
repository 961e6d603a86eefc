//! hyload: planning calculator for hydrogen loading, storage and UV curing
//! of solarization-resistant fiber patch cords.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain/data error, 3 convergence
//! error, 4 infeasible request. Diagnostics go to stderr; stdout carries only
//! results and is byte-deterministic for fixed inputs.

mod contour;
mod fmt;
mod io;
mod power;
mod preset;
mod quantity;

use clap::{Args, Parser, Subcommand};
use fmt::{human_duration, sig4, sig9, Format, Report};
use hyload_core::diffusion::{
    invert_time, loading_plan, optimize_conditions, schedule_concentration, storage_time,
    Direction, GasConditions, GeometryCase, OptimizerGrid,
};
use hyload_core::error::{Error, Result};
use hyload_core::fd::{compare_with_series, FdConfig};
use hyload_core::guidance::{
    bend_loss_curve, critical_bend_radius, v_number, v_pcf, BendModelParams, IndexData,
};
use hyload_core::material::{absolute_concentration, diffusivity, solubility};
use hyload_core::units::{constants, Dimension};
use quantity::parse_quantity;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "hyload",
    version,
    about = "Hydrogen loading, storage and curing planner for UV fiber patch cords",
    after_help = "Dimensioned values carry unit suffixes: 100bar, 60C, 115um, 313nm, 24h, \
                  2e20cm-3. Run a subcommand with --help for its flags."
)]
struct Cli {
    /// Output format: human or csv
    #[arg(long, global = true, default_value = "human")]
    format: String,

    /// Preset file extending the built-in fiber/material presets
    /// (falls back to the HYLOAD_PRESETS environment variable)
    #[arg(long, global = true)]
    presets: Option<PathBuf>,

    /// Material preset name
    #[arg(long, global = true, default_value = preset::DEFAULT_MATERIAL)]
    material: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FiberArgs {
    /// Fiber preset name
    #[arg(long, default_value = "LMA-PM-10")]
    fiber: String,

    /// Diffusion geometry: solid, open-holes or endcap-limited
    #[arg(long, default_value = "solid")]
    case: String,
}

#[derive(Subcommand)]
enum Command {
    /// Print the physical constants used by every model
    Constants,
    /// Arrhenius diffusivity D(T) of H2 in silica
    Diffusivity {
        /// Temperature (e.g. 20C, -70C or 293.15K)
        #[arg(long, allow_hyphen_values = true)]
        temp: String,
    },
    /// Saturation concentration S(p, T)
    Solubility {
        /// Loading pressure (e.g. 100bar)
        #[arg(long)]
        pressure: String,
        #[arg(long, allow_hyphen_values = true)]
        temp: String,
    },
    /// Absolute concentration from a relative one
    Concentration {
        /// Relative concentration in [0, 1]
        #[arg(long, allow_negative_numbers = true)]
        c_rel: f64,
        #[arg(long)]
        pressure: String,
        #[arg(long, allow_hyphen_values = true)]
        temp: String,
    },
    /// Time to load the fiber to a fraction of saturation
    LoadTime {
        /// Target fill fraction in (0, 1)
        #[arg(long, allow_negative_numbers = true)]
        fill: f64,
        #[arg(long, allow_hyphen_values = true)]
        temp: String,
        /// Radial position as a fraction of the effective radius
        #[arg(long, default_value_t = 0.0)]
        r_frac: f64,
        #[command(flatten)]
        fiber: FiberArgs,
    },
    /// Storage time until the center decays to a remaining fraction
    StorageTime {
        /// Remaining center fraction in (0, 1)
        #[arg(long, allow_negative_numbers = true)]
        remaining: f64,
        #[arg(long, allow_hyphen_values = true)]
        temp: String,
        #[command(flatten)]
        fiber: FiberArgs,
    },
    /// Four-step loading plan for a target concentration; the report covers
    /// all three geometry cases
    Plan {
        /// Target H2 concentration (e.g. 2e20cm-3)
        #[arg(long)]
        target: String,
        #[arg(long)]
        pressure: String,
        #[arg(long, allow_hyphen_values = true)]
        temp: String,
        /// Fiber preset name
        #[arg(long, default_value = "LMA-PM-10")]
        fiber: String,
    },
    /// Minimize loading time over pressure and temperature
    Optimize {
        #[arg(long)]
        target: String,
        /// Highest admissible pressure
        #[arg(long)]
        p_max: String,
        /// Highest admissible temperature (default 60C, the jacket limit)
        #[arg(long, allow_hyphen_values = true)]
        t_max: Option<String>,
        #[command(flatten)]
        fiber: FiberArgs,
    },
    /// Concentration along a temperature schedule (CSV: duration_s,temperature_C)
    Schedule {
        #[arg(long)]
        file: PathBuf,
        /// Diffusion direction: in or out
        #[arg(long, default_value = "out")]
        direction: String,
        #[arg(long, default_value_t = 0.0)]
        r_frac: f64,
        #[command(flatten)]
        fiber: FiberArgs,
    },
    /// Concentration-change grid over temperature x time (CSV output)
    Contour {
        #[arg(long, allow_hyphen_values = true)]
        temp_min: String,
        #[arg(long, allow_hyphen_values = true)]
        temp_max: String,
        #[arg(long, default_value_t = 13)]
        temp_points: usize,
        #[arg(long)]
        time_min: String,
        #[arg(long)]
        time_max: String,
        #[arg(long, default_value_t = 25)]
        time_points: usize,
        #[arg(long, default_value_t = 0.0)]
        r_frac: f64,
        #[command(flatten)]
        fiber: FiberArgs,
    },
    /// Single-mode criterion for step-index or hole-lattice fibers
    SingleMode {
        #[arg(long)]
        wavelength: String,
        /// Step-index core radius (e.g. 2um)
        #[arg(long)]
        core_radius: Option<String>,
        /// Hole-lattice pitch (e.g. 6um)
        #[arg(long)]
        pitch: Option<String>,
        /// Constant numerical aperture
        #[arg(long)]
        na: Option<f64>,
        /// NA(wavelength) table (CSV: wavelength_nm,effective_NA)
        #[arg(long)]
        index_file: Option<PathBuf>,
        /// Fiber preset supplying the pitch (and NA, if declared)
        #[arg(long)]
        fiber: Option<String>,
    },
    /// Critical bend radius and macrobending loss curve
    Bend {
        #[arg(long)]
        wavelength: String,
        /// Pitch of the fiber under study (default: the calibrated fiber)
        #[arg(long)]
        pitch: Option<String>,
        #[arg(long, default_value = "5mm")]
        r_min: String,
        #[arg(long, default_value = "10cm")]
        r_max: String,
        #[arg(long, default_value_t = 40)]
        points: usize,
    },
    /// Cumulative optical energy of a curing power log (CSV: time_s,power_mW)
    Energy {
        #[arg(long)]
        file: PathBuf,
    },
    /// Validate the analytic series against the finite-difference oracle
    Verify {
        #[arg(long, default_value_t = 512)]
        radial_points: usize,
        #[arg(long, default_value_t = 2048)]
        time_steps: usize,
        #[arg(long, default_value_t = 1.0)]
        theta_end: f64,
    },
    /// List the available fiber and material presets
    Presets,
}

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            eprint!("{e}");
            return 1;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) => 1,
        Error::Domain(_) | Error::Data(_) | Error::Config(_) => 2,
        Error::Convergence(_) => 3,
        Error::Infeasible(_) => 4,
    }
}

fn parse_case(s: &str) -> Result<GeometryCase> {
    match s {
        "solid" => Ok(GeometryCase::Solid),
        "open-holes" => Ok(GeometryCase::OpenHoles),
        "endcap-limited" | "endcap" => Ok(GeometryCase::EndcapLimited),
        other => Err(Error::Usage(format!(
            "--case: unknown geometry '{other}' (solid, open-holes, endcap-limited)"
        ))),
    }
}

fn parse_direction(s: &str) -> Result<Direction> {
    match s {
        "in" => Ok(Direction::InDiffusion),
        "out" => Ok(Direction::OutDiffusion),
        other => Err(Error::Usage(format!(
            "--direction: expected 'in' or 'out', got '{other}'"
        ))),
    }
}

fn run(cli: Cli) -> Result<()> {
    let format = Format::parse(&cli.format).ok_or_else(|| {
        Error::Usage(format!(
            "--format: expected 'human' or 'csv', got '{}'",
            cli.format
        ))
    })?;
    let preset_path = cli
        .presets
        .clone()
        .or_else(|| std::env::var_os("HYLOAD_PRESETS").map(PathBuf::from));
    let db = match &preset_path {
        Some(p) => preset::PresetDb::with_file(p)?,
        None => preset::PresetDb::builtin(),
    };
    let material = *db.material(&cli.material)?;

    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let io_err = |e: std::io::Error| Error::Data(format!("write failed: {e}"));

    match cli.command {
        Command::Constants => {
            let c = constants();
            let mut r = Report::new();
            r.number(
                "boltzmann_j_per_k",
                "Boltzmann constant k [J/K]",
                c.boltzmann,
            )
            .number("planck_j_s", "Planck constant h [J s]", c.planck)
            .number(
                "avogadro_per_mol",
                "Avogadro constant N_A [1/mol]",
                c.avogadro,
            )
            .number(
                "h2_molecular_mass_kg",
                "H2 molecular mass [kg]",
                c.h2_molecular_mass,
            )
            .number(
                "gas_constant_j_per_mol_k",
                "gas constant R = N_A k [J/(mol K)]",
                c.gas_constant(),
            );
            r.print(format, &mut out).map_err(io_err)?;
        }

        Command::Diffusivity { temp } => {
            let t = parse_quantity(&temp, Dimension::Temperature, "temp")?;
            let d = diffusivity(t, &material.diffusivity)?;
            let mut r = Report::new();
            r.number("temperature_k", "temperature [K]", t)
                .number("diffusivity_m2_s", "diffusivity [m2/s]", d)
                .number("diffusivity_cm2_s", "diffusivity [cm2/s]", d * 1e4);
            r.print(format, &mut out).map_err(io_err)?;
        }

        Command::Solubility { pressure, temp } => {
            let p = parse_quantity(&pressure, Dimension::Pressure, "pressure")?;
            let t = parse_quantity(&temp, Dimension::Temperature, "temp")?;
            let s = solubility(p, t, &material.solubility)?;
            let mut r = Report::new();
            r.number("pressure_pa", "pressure [Pa]", p)
                .number("temperature_k", "temperature [K]", t)
                .number("solubility_m-3", "solubility [1/m3]", s)
                .number("solubility_cm-3", "solubility [1/cm3]", s / 1e6);
            r.print(format, &mut out).map_err(io_err)?;
        }

        Command::Concentration {
            c_rel,
            pressure,
            temp,
        } => {
            let p = parse_quantity(&pressure, Dimension::Pressure, "pressure")?;
            let t = parse_quantity(&temp, Dimension::Temperature, "temp")?;
            let n = absolute_concentration(c_rel, p, t, &material.solubility)?;
            let mut r = Report::new();
            r.number("relative_concentration", "relative concentration", c_rel)
                .number("concentration_m-3", "absolute concentration [1/m3]", n)
                .number(
                    "concentration_cm-3",
                    "absolute concentration [1/cm3]",
                    n / 1e6,
                );
            r.print(format, &mut out).map_err(io_err)?;
        }

        Command::LoadTime {
            fill,
            temp,
            r_frac,
            fiber,
        } => {
            let t = parse_quantity(&temp, Dimension::Temperature, "temp")?;
            let case = parse_case(&fiber.case)?;
            let spec = db.fiber(&fiber.fiber)?;
            let th = invert_time(fill, r_frac, Direction::InDiffusion)?;
            let d = diffusivity(t, &material.diffusivity)?;
            let r_eff = case.effective_radius(spec);
            let time = th * r_eff * r_eff / d;
            let mut r = Report::new();
            r.text("fiber", "fiber", &spec.name)
                .text("case", "geometry case", case.label())
                .number("effective_radius_m", "effective radius [m]", r_eff)
                .number("fill_fraction", "target fill fraction", fill)
                .number("r_frac", "radial position r/R", r_frac)
                .number("theta", "dimensionless time", th)
                .duration("time_s", "loading time", time);
            r.print(format, &mut out).map_err(io_err)?;
        }

        Command::StorageTime {
            remaining,
            temp,
            fiber,
        } => {
            let t = parse_quantity(&temp, Dimension::Temperature, "temp")?;
            let case = parse_case(&fiber.case)?;
            let spec = db.fiber(&fiber.fiber)?;
            let time = storage_time(remaining, t, spec, case, &material)?;
            let mut r = Report::new();
            r.text("fiber", "fiber", &spec.name)
                .text("case", "geometry case", case.label())
                .number(
                    "effective_radius_m",
                    "effective radius [m]",
                    case.effective_radius(spec),
                )
                .number("remaining_fraction", "remaining center fraction", remaining)
                .duration("time_s", "storage time", time);
            r.print(format, &mut out).map_err(io_err)?;
        }

        Command::Plan {
            target,
            pressure,
            temp,
            fiber,
        } => {
            let n = parse_quantity(&target, Dimension::Concentration, "target")?;
            let p = parse_quantity(&pressure, Dimension::Pressure, "pressure")?;
            let t = parse_quantity(&temp, Dimension::Temperature, "temp")?;
            let spec = db.fiber(&fiber)?;
            let plan = loading_plan(
                n,
                GasConditions {
                    pressure: p,
                    temperature: t,
                },
                spec,
                &material,
            )?;
            let mut r = Report::new();
            r.text("fiber", "fiber", &spec.name)
                .number(
                    "target_m-3",
                    "step 1: target concentration [1/m3]",
                    plan.target_concentration,
                )
                .number(
                    "target_cm-3",
                    "        target concentration [1/cm3]",
                    plan.target_concentration / 1e6,
                )
                .number("pressure_pa", "conditions: pressure [Pa]", p)
                .number("temperature_k", "conditions: temperature [K]", t)
                .number(
                    "saturation_m-3",
                    "step 2: saturation S(p,T) [1/m3]",
                    plan.saturation,
                )
                .number(
                    "fill_fraction",
                    "step 2: fill fraction x",
                    plan.fill_fraction,
                )
                .number("theta", "step 3: dimensionless time", plan.theta)
                .number(
                    "reference_radius_m",
                    "step 3: reference radius [m]",
                    plan.reference_radius,
                )
                .duration(
                    "reference_time_s",
                    "step 3: time at reference radius",
                    plan.reference_time,
                );
            for ct in &plan.case_times {
                r.number(
                    &format!("radius_{}_m", ct.case.label()),
                    &format!("step 4: {} radius [m]", ct.case.label()),
                    ct.effective_radius,
                );
                r.duration(
                    &format!("time_{}_s", ct.case.label()),
                    &format!("step 4: {} loading time", ct.case.label()),
                    ct.time,
                );
            }
            r.number(
                "center_concentration_m-3",
                "center concentration at completion [1/m3]",
                plan.center_concentration,
            );
            r.print(format, &mut out).map_err(io_err)?;
        }

        Command::Optimize {
            target,
            p_max,
            t_max,
            fiber,
        } => {
            let n = parse_quantity(&target, Dimension::Concentration, "target")?;
            let p = parse_quantity(&p_max, Dimension::Pressure, "p-max")?;
            let t = t_max
                .map(|s| parse_quantity(&s, Dimension::Temperature, "t-max"))
                .transpose()?;
            let case = parse_case(&fiber.case)?;
            let spec = db.fiber(&fiber.fiber)?;
            let best =
                optimize_conditions(n, p, t, spec, case, &material, &OptimizerGrid::default())?;
            let mut r = Report::new();
            r.text("fiber", "fiber", &spec.name)
                .text("case", "geometry case", case.label())
                .number("pressure_pa", "optimal pressure [Pa]", best.pressure)
                .number(
                    "pressure_bar",
                    "optimal pressure [bar]",
                    best.pressure / 1e5,
                )
                .number("temperature_k", "optimal temperature [K]", best.temperature)
                .number(
                    "temperature_c",
                    "optimal temperature [C]",
                    best.temperature - 273.15,
                )
                .number(
                    "fill_fraction",
                    "fill fraction at optimum",
                    best.fill_fraction,
                )
                .duration("time_s", "loading time at optimum", best.time);
            r.print(format, &mut out).map_err(io_err)?;
        }

        Command::Schedule {
            file,
            direction,
            r_frac,
            fiber,
        } => {
            let case = parse_case(&fiber.case)?;
            let dir = parse_direction(&direction)?;
            let spec = db.fiber(&fiber.fiber)?;
            let sched = io::read_schedule(&file)?;
            let field = schedule_concentration(&sched, spec, case, r_frac, dir, &material)?;
            writeln!(out, "time_s,concentration").map_err(io_err)?;
            for (k, &t) in field.times.iter().enumerate() {
                let v = field.value(k, 0);
                match format {
                    Format::Csv => writeln!(out, "{},{}", sig9(t), sig9(v)),
                    Format::Human => writeln!(out, "{},{}", sig4(t), sig4(v)),
                }
                .map_err(io_err)?;
            }
            if format == Format::Human {
                let last = field.value(field.times.len() - 1, 0);
                writeln!(
                    out,
                    "final concentration {} after {}",
                    sig4(last),
                    human_duration(sched.total_duration())
                )
                .map_err(io_err)?;
            }
        }

        Command::Contour {
            temp_min,
            temp_max,
            temp_points,
            time_min,
            time_max,
            time_points,
            r_frac,
            fiber,
        } => {
            let t_lo = parse_quantity(&temp_min, Dimension::Temperature, "temp-min")?;
            let t_hi = parse_quantity(&temp_max, Dimension::Temperature, "temp-max")?;
            let s_lo = parse_quantity(&time_min, Dimension::Time, "time-min")?;
            let s_hi = parse_quantity(&time_max, Dimension::Time, "time-max")?;
            let case = parse_case(&fiber.case)?;
            let spec = db.fiber(&fiber.fiber)?;
            let temps = contour::linspace(t_lo, t_hi, temp_points)?;
            let times = contour::linspace(s_lo, s_hi, time_points)?;
            contour::emit_contour(&mut out, &temps, &times, spec, case, &material, r_frac)?;
        }

        Command::SingleMode {
            wavelength,
            core_radius,
            pitch,
            na,
            index_file,
            fiber,
        } => {
            let lambda = parse_quantity(&wavelength, Dimension::Length, "wavelength")?;
            let spec = fiber.as_deref().map(|name| db.fiber(name)).transpose()?;
            let mut r = Report::new();
            r.number("wavelength_m", "wavelength [m]", lambda);
            let v = match (core_radius, pitch, spec) {
                (Some(rho), None, None) => {
                    let rho = parse_quantity(&rho, Dimension::Length, "core-radius")?;
                    let na = na.ok_or_else(|| {
                        Error::Usage("--na is required with --core-radius".into())
                    })?;
                    r.text("criterion", "criterion", "step-index (V <= 2.405)");
                    r.number("core_radius_m", "core radius [m]", rho);
                    r.number("na", "numerical aperture", na);
                    v_number(rho, na, lambda)?
                }
                (None, pitch, spec) if pitch.is_some() || spec.is_some() => {
                    let pitch = match pitch {
                        Some(s) => parse_quantity(&s, Dimension::Length, "pitch")?,
                        None => spec.expect("guard").pitch,
                    };
                    let index = match (na, &index_file) {
                        (Some(na), None) => IndexData::Constant(na),
                        (None, Some(path)) => io::read_index_table(path)?,
                        (None, None) => {
                            spec.and_then(|s| s.index_data.clone()).ok_or_else(|| {
                                Error::Usage(
                                    "no NA source: give --na or --index-file (the fiber preset \
                                     declares no effective_na)"
                                        .into(),
                                )
                            })?
                        }
                        _ => {
                            return Err(Error::Usage(
                                "give only one of --na or --index-file".into(),
                            ))
                        }
                    };
                    let na_used = index.na_at(lambda)?;
                    r.text("criterion", "criterion", "hole-lattice (V_PCF <= pi)");
                    r.number("pitch_m", "pitch [m]", pitch);
                    r.number("na", "effective NA at wavelength", na_used);
                    v_pcf(pitch, &index, lambda)?
                }
                _ => {
                    return Err(Error::Usage(
                        "give --core-radius (step-index) or --pitch/--fiber (hole lattice)".into(),
                    ))
                }
            };
            r.number("v", "waveguide parameter V", v.v);
            r.number("v_limit", "single-mode limit", v.limit);
            r.text(
                "single_mode",
                "single-mode",
                if v.single_mode { "yes" } else { "no" },
            );
            r.print(format, &mut out).map_err(io_err)?;
        }

        Command::Bend {
            wavelength,
            pitch,
            r_min,
            r_max,
            points,
        } => {
            let lambda = parse_quantity(&wavelength, Dimension::Length, "wavelength")?;
            let params = BendModelParams::lma_pm_10();
            let pitch = pitch
                .map(|s| parse_quantity(&s, Dimension::Length, "pitch"))
                .transpose()?
                .unwrap_or(params.pitch_ref);
            let lo = parse_quantity(&r_min, Dimension::Length, "r-min")?;
            let hi = parse_quantity(&r_max, Dimension::Length, "r-max")?;
            let r_c = critical_bend_radius(pitch, lambda, &params)?;
            let radii = contour::linspace(lo, hi, points)?;
            let curve = bend_loss_curve(&radii, lambda, &params)?;
            let mut r = Report::new();
            r.number("wavelength_m", "wavelength [m]", lambda)
                .number("pitch_m", "pitch [m]", pitch)
                .number("critical_bend_radius_m", "critical bend radius [m]", r_c);
            r.print(format, &mut out).map_err(io_err)?;
            writeln!(out, "radius_m,attenuation_dB_per_m").map_err(io_err)?;
            for (radius, att) in curve {
                match format {
                    Format::Csv => writeln!(out, "{},{}", sig9(radius), sig9(att)),
                    Format::Human => writeln!(out, "{},{}", sig4(radius), sig4(att)),
                }
                .map_err(io_err)?;
            }
        }

        Command::Energy { file } => {
            let log = power::PowerLog::new(io::read_power_log(&file)?)?;
            let total = power::integrate_energy(&log);
            let mut r = Report::new();
            r.text("rows", "log rows", &log.rows().len().to_string())
                .duration("duration_s", "log duration", log.duration())
                .number("energy_j", "cumulative energy [J]", total)
                .number("energy_kj", "cumulative energy [kJ]", total / 1e3);
            r.print(format, &mut out).map_err(io_err)?;
        }

        Command::Verify {
            radial_points,
            time_steps,
            theta_end,
        } => {
            const THRESHOLD: f64 = 5e-4;
            let cfg = FdConfig {
                radial_points,
                time_steps,
                theta_end,
            };
            let cmp = compare_with_series(&cfg)?;
            let pass = cmp.max_abs_error <= THRESHOLD;
            let mut r = Report::new();
            r.text(
                "radial_points",
                "radial grid points",
                &radial_points.to_string(),
            )
            .text("time_steps", "time steps", &time_steps.to_string())
            .number("theta_end", "final dimensionless time", theta_end)
            .text(
                "points_compared",
                "points compared",
                &cmp.points_compared.to_string(),
            )
            .number("max_abs_error", "max |series - FD|", cmp.max_abs_error)
            .number("at_r_frac", "worst point r/R", cmp.at_r_frac)
            .number("at_theta", "worst point theta", cmp.at_theta)
            .number("threshold", "acceptance threshold", THRESHOLD)
            .text("status", "status", if pass { "PASS" } else { "FAIL" });
            r.print(format, &mut out).map_err(io_err)?;
            if !pass {
                out.flush().map_err(io_err)?;
                return Err(Error::Convergence(format!(
                    "series vs finite-difference discrepancy {} exceeds {THRESHOLD}",
                    cmp.max_abs_error
                )));
            }
        }

        Command::Presets => {
            let mut r = Report::new();
            for (name, f) in &db.fibers {
                let key = |field: &str| format!("fiber.{name}.{field}");
                r.number(
                    &key("cladding_radius_um"),
                    &format!("fiber {name}: cladding radius [um]"),
                    f.cladding_radius / 1e-6,
                )
                .number(
                    &key("pitch_um"),
                    &format!("fiber {name}: pitch [um]"),
                    f.pitch / 1e-6,
                )
                .number(
                    &key("hole_diameter_um"),
                    &format!("fiber {name}: hole diameter [um]"),
                    f.hole_diameter / 1e-6,
                )
                .number(
                    &key("mode_field_diameter_um"),
                    &format!("fiber {name}: mode field diameter [um]"),
                    f.mode_field_diameter / 1e-6,
                )
                .number(
                    &key("endcap_thickness_min_um"),
                    &format!("fiber {name}: endcap thickness min [um]"),
                    f.endcap_thickness_min / 1e-6,
                )
                .number(
                    &key("endcap_thickness_max_um"),
                    &format!("fiber {name}: endcap thickness max [um]"),
                    f.endcap_thickness_max / 1e-6,
                )
                .number(
                    &key("open_hole_radius_um"),
                    &format!("fiber {name}: open-hole radius [um]"),
                    f.open_hole_radius / 1e-6,
                );
            }
            for (name, m) in &db.materials {
                let key = |field: &str| format!("material.{name}.{field}");
                r.number(
                    &key("diffusivity_prefactor_cm2_s"),
                    &format!("material {name}: D0 [cm2/s]"),
                    m.diffusivity.prefactor * 1e4,
                )
                .number(
                    &key("activation_energy_kj_mol"),
                    &format!("material {name}: Ea [kJ/mol]"),
                    m.diffusivity.activation_energy / 1e3,
                )
                .number(
                    &key("lattice_site_density_cm-3"),
                    &format!("material {name}: N_s [1/cm3]"),
                    m.solubility.lattice_site_density / 1e6,
                )
                .number(
                    &key("characteristic_temperature_k"),
                    &format!("material {name}: theta_v [K]"),
                    m.solubility.characteristic_temperature,
                )
                .number(
                    &key("binding_energy_kj_mol"),
                    &format!("material {name}: E0 [kJ/mol]"),
                    m.solubility.binding_energy / 1e3,
                );
            }
            r.print(format, &mut out).map_err(io_err)?;
        }
    }

    out.flush().map_err(io_err)?;
    Ok(())
}
