//! Transport and solubility models for molecular hydrogen in fused silica.
//!
//! Diffusivity follows an Arrhenius law; the saturation concentration
//! (solubility) comes from a lattice-site statistical model: ideal-gas phase
//! density times the cubed thermal de Broglie wavelength gives the gas-phase
//! occupancy, a cubed vibrational partition factor and a binding Boltzmann
//! factor give the solid-phase weight. Default parameters are published
//! values for H₂ in silica; presets may override every constant.

use crate::error::{Error, Result};
use crate::units::constants;

/// Arrhenius diffusivity D(T) = D0 exp(-Ea / (R T)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffusivityModel {
    /// Pre-exponential factor D0 [m²/s].
    pub prefactor: f64,
    /// Activation energy Ea [J/mol].
    pub activation_energy: f64,
}

impl DiffusivityModel {
    /// Published H₂-in-silica parameters: D0 = 2.83e-4 cm²/s, Ea = 40.19 kJ/mol.
    pub fn defaults() -> Self {
        DiffusivityModel {
            prefactor: 2.83e-8,
            activation_energy: 40_190.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.prefactor > 0.0 && self.prefactor.is_finite()) {
            return Err(Error::Config(format!(
                "diffusivity prefactor must be > 0, got {}",
                self.prefactor
            )));
        }
        if !(self.activation_energy > 0.0 && self.activation_energy.is_finite()) {
            return Err(Error::Config(format!(
                "activation energy must be > 0, got {}",
                self.activation_energy
            )));
        }
        Ok(())
    }
}

/// Parameters of the solubility model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolubilityParams {
    /// Density of available lattice sites N_s [1/m³].
    pub lattice_site_density: f64,
    /// Characteristic vibrational temperature θ_ν [K].
    pub characteristic_temperature: f64,
    /// Binding energy E0 [J/mol]; negative for a bound state.
    pub binding_energy: f64,
}

impl SolubilityParams {
    /// Published H₂-in-silica parameters: N_s = 2.22e22 cm⁻³,
    /// θ_ν = 585.508 K, E0 = -12.727872 kJ/mol.
    pub fn defaults() -> Self {
        SolubilityParams {
            lattice_site_density: 2.22e28,
            characteristic_temperature: 585.508,
            binding_energy: -12_727.872,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lattice_site_density > 0.0 && self.lattice_site_density.is_finite()) {
            return Err(Error::Config(format!(
                "lattice site density must be > 0, got {}",
                self.lattice_site_density
            )));
        }
        if !(self.characteristic_temperature > 0.0 && self.characteristic_temperature.is_finite()) {
            return Err(Error::Config(format!(
                "characteristic temperature must be > 0, got {}",
                self.characteristic_temperature
            )));
        }
        if !self.binding_energy.is_finite() {
            return Err(Error::Config("binding energy must be finite".into()));
        }
        Ok(())
    }
}

/// The full material description the planner needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialParams {
    pub diffusivity: DiffusivityModel,
    pub solubility: SolubilityParams,
}

impl MaterialParams {
    pub fn defaults() -> Self {
        MaterialParams {
            diffusivity: DiffusivityModel::defaults(),
            solubility: SolubilityParams::defaults(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.diffusivity.validate()?;
        self.solubility.validate()
    }
}

/// Diffusivity D(T) [m²/s].
pub fn diffusivity(temperature: f64, model: &DiffusivityModel) -> Result<f64> {
    if !(temperature > 0.0 && temperature.is_finite()) {
        return Err(Error::Domain(format!(
            "temperature must be > 0 K, got {temperature}"
        )));
    }
    let r = constants().gas_constant();
    let d = model.prefactor * (-model.activation_energy / (r * temperature)).exp();
    if d <= 0.0 {
        // the Boltzmann factor underflows a few kelvin above absolute zero
        return Err(Error::Domain(format!(
            "diffusivity underflows at {temperature} K; outside the model's range"
        )));
    }
    Ok(d)
}

/// Saturation concentration S(p, T) [1/m³].
///
/// The vibrational factor exp(-θ/2T) / (1 - exp(-θ/T)) is evaluated through
/// `exp_m1` so it stays accurate when θ/T is tiny (the T → ∞ asymptote tests
/// drive T to 1e9 K).
pub fn solubility(pressure: f64, temperature: f64, params: &SolubilityParams) -> Result<f64> {
    if !(temperature > 0.0 && temperature.is_finite()) {
        return Err(Error::Domain(format!(
            "temperature must be > 0 K, got {temperature}"
        )));
    }
    if !(pressure >= 0.0 && pressure.is_finite()) {
        return Err(Error::Domain(format!(
            "pressure must be >= 0 Pa, got {pressure}"
        )));
    }
    let c = constants();
    let kt = c.boltzmann * temperature;
    // cubed thermal de Broglie wavelength
    let lambda_sq = c.planck * c.planck / (2.0 * std::f64::consts::PI * c.h2_molecular_mass * kt);
    let lambda_cubed = lambda_sq * lambda_sq.sqrt();
    // vibrational partition factor, cubed for the three modes
    let x = params.characteristic_temperature / temperature;
    let vib = (-0.5 * x).exp() / (-f64::exp_m1(-x));
    let binding = (-params.binding_energy / (c.gas_constant() * temperature)).exp();
    let s = pressure * lambda_cubed * (params.lattice_site_density / kt) * vib * vib * vib * binding;
    if !s.is_finite() || (s <= 0.0 && pressure > 0.0) {
        // deep cryogenic temperatures drive the vibrational factor into
        // underflow and the binding factor into overflow
        return Err(Error::Domain(format!(
            "solubility is not representable at {temperature} K; outside the model's range"
        )));
    }
    Ok(s)
}

/// Absolute concentration from a relative one: C_rel · S(p, T).
pub fn absolute_concentration(
    c_rel: f64,
    pressure: f64,
    temperature: f64,
    params: &SolubilityParams,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&c_rel) || !c_rel.is_finite() {
        return Err(Error::Domain(format!(
            "relative concentration must be in [0, 1], got {c_rel}"
        )));
    }
    Ok(c_rel * solubility(pressure, temperature, params)?)
}
