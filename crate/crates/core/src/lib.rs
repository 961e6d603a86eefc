//! Planning library for hydrogen loading, storage and UV curing of
//! solarization-resistant fiber patch cords.
//!
//! The physics kernel is the radial diffusion problem in a cylinder, solved
//! analytically as a Fourier–Bessel series over the zeros of J0 and validated
//! by an independent finite-difference solver. On top of it sit the material
//! models (Arrhenius diffusivity and lattice-site solubility of H₂ in
//! silica), the loading/storage planners, temperature-schedule evaluation,
//! condition optimization, and the waveguide-side checks (single-mode
//! criteria, bend sensitivity).
//!
//! Modules:
//! - [`units`]: physical constants and SI normalization of the unit tags the
//!   planner accepts at its boundaries.
//! - [`bessel`]: J0/J1 evaluation and the memoized table of J0 zeros.
//! - [`material`]: diffusivity D(T) and solubility S(p, T).
//! - [`diffusion`]: the series solution, time inversion, radius scaling,
//!   geometry cases, plans, schedules, optimizer.
//! - [`fd`]: the finite-difference oracle used by `verify`.
//! - [`guidance`]: V parameters and macrobending estimates.
//!
//! ```
//! use hyload_core::diffusion::{loading_plan, GasConditions, GeometryCase, FiberSpec};
//! use hyload_core::material::MaterialParams;
//!
//! // How long to half-saturate the stock fiber at 100 bar and 20 C?
//! let material = MaterialParams::defaults();
//! let conditions = GasConditions { pressure: 1.0e7, temperature: 293.15 };
//! let target = 1.457e26; // 1/m^3, about half the saturation here
//! let plan = loading_plan(target, conditions, &FiberSpec::lma_pm_10(), &material).unwrap();
//! let solid = plan.case_times.iter().find(|c| c.case == GeometryCase::Solid).unwrap();
//! assert!((solid.time / 86_400.0 - 15.7).abs() < 0.2); // about two weeks
//! ```

pub mod bessel;
pub mod diffusion;
pub mod error;
pub mod fd;
pub mod guidance;
pub mod material;
pub mod units;

pub use error::{Error, Result};
