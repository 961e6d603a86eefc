//! Physical constants, unit tags and SI normalization.
//!
//! Everything downstream works in SI; the units here exist only at the I/O
//! boundary (command-line flags, preset files, report output). The unit set
//! is deliberately closed: exactly the tags a loading-schedule calculation
//! needs, nothing else.

use crate::error::{Error, Result};

/// CODATA/SI defining constants, given to at least 9 significant digits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Boltzmann constant k [J/K] (exact, 2019 SI).
    pub boltzmann: f64,
    /// Planck constant h [J·s] (exact, 2019 SI).
    pub planck: f64,
    /// Avogadro constant N_A [1/mol] (exact, 2019 SI).
    pub avogadro: f64,
    /// Mass of one H₂ molecule [kg]: twice the standard atomic weight of
    /// hydrogen (1.00794 u) times the atomic mass constant.
    pub h2_molecular_mass: f64,
}

impl PhysicalConstants {
    /// Molar gas constant R = N_A · k [J/(mol·K)].
    pub fn gas_constant(&self) -> f64 {
        self.avogadro * self.boltzmann
    }
}

/// The constants used by every model in this workspace.
pub const fn constants() -> PhysicalConstants {
    PhysicalConstants {
        boltzmann: 1.380_649e-23,
        planck: 6.626_070_15e-34,
        avogadro: 6.022_140_76e23,
        h2_molecular_mass: 3.347_447_493_58e-27,
    }
}

/// Conventional room temperature [K] (20 °C). Loading-time comparisons in the
/// literature reproduce exactly with this choice.
pub const ROOM_TEMPERATURE_K: f64 = 293.15;

/// Dimension of a [`Quantity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dimension {
    /// Pa
    Pressure,
    /// K
    Temperature,
    /// m
    Length,
    /// s
    Time,
    /// m²/s
    Diffusivity,
    /// 1/m³
    Concentration,
    /// J
    Energy,
    /// W
    Power,
    /// J/mol
    MolarEnergy,
}

impl Dimension {
    /// SI unit symbol, for report output.
    pub fn si_symbol(&self) -> &'static str {
        match self {
            Dimension::Pressure => "Pa",
            Dimension::Temperature => "K",
            Dimension::Length => "m",
            Dimension::Time => "s",
            Dimension::Diffusivity => "m2/s",
            Dimension::Concentration => "m-3",
            Dimension::Energy => "J",
            Dimension::Power => "W",
            Dimension::MolarEnergy => "J/mol",
        }
    }
}

/// An SI-normalized value with its dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    pub value: f64,
    pub dimension: Dimension,
}

/// Supported input unit tags. The set is total: `parse_unit` accepts exactly
/// these spellings and rejects everything else.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    Bar,
    Pascal,
    Celsius,
    Kelvin,
    Nanometre,
    Micrometre,
    Millimetre,
    Centimetre,
    Metre,
    Second,
    Hour,
    Day,
    Milliwatt,
    Watt,
    Cm2PerS,
    KjPerMol,
    PerCm3,
    PerM3,
}

impl Unit {
    pub fn dimension(&self) -> Dimension {
        match self {
            Unit::Bar | Unit::Pascal => Dimension::Pressure,
            Unit::Celsius | Unit::Kelvin => Dimension::Temperature,
            Unit::Nanometre
            | Unit::Micrometre
            | Unit::Millimetre
            | Unit::Centimetre
            | Unit::Metre => Dimension::Length,
            Unit::Second | Unit::Hour | Unit::Day => Dimension::Time,
            Unit::Milliwatt | Unit::Watt => Dimension::Power,
            Unit::Cm2PerS => Dimension::Diffusivity,
            Unit::KjPerMol => Dimension::MolarEnergy,
            Unit::PerCm3 | Unit::PerM3 => Dimension::Concentration,
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Unit::Bar => "bar",
            Unit::Pascal => "Pa",
            Unit::Celsius => "C",
            Unit::Kelvin => "K",
            Unit::Nanometre => "nm",
            Unit::Micrometre => "um",
            Unit::Millimetre => "mm",
            Unit::Centimetre => "cm",
            Unit::Metre => "m",
            Unit::Second => "s",
            Unit::Hour => "h",
            Unit::Day => "d",
            Unit::Milliwatt => "mW",
            Unit::Watt => "W",
            Unit::Cm2PerS => "cm2/s",
            Unit::KjPerMol => "kJ/mol",
            Unit::PerCm3 => "cm-3",
            Unit::PerM3 => "m-3",
        }
    }
}

/// Parse a unit tag. Unknown tags are a usage error.
pub fn parse_unit(tag: &str) -> Result<Unit> {
    let unit = match tag {
        "bar" => Unit::Bar,
        "Pa" => Unit::Pascal,
        "C" | "°C" | "degC" => Unit::Celsius,
        "K" => Unit::Kelvin,
        "nm" => Unit::Nanometre,
        "um" | "µm" | "μm" => Unit::Micrometre,
        "mm" => Unit::Millimetre,
        "cm" => Unit::Centimetre,
        "m" => Unit::Metre,
        "s" => Unit::Second,
        "h" => Unit::Hour,
        "d" => Unit::Day,
        "mW" => Unit::Milliwatt,
        "W" => Unit::Watt,
        "cm2/s" | "cm²/s" => Unit::Cm2PerS,
        "kJ/mol" => Unit::KjPerMol,
        "cm-3" | "cm^-3" => Unit::PerCm3,
        "m-3" | "m^-3" => Unit::PerM3,
        other => {
            return Err(Error::Usage(format!(
                "unknown unit tag '{other}' (supported: bar, Pa, C, K, nm, um, mm, cm, m, s, \
                 h, d, mW, W, cm2/s, kJ/mol, cm-3, m-3)"
            )))
        }
    };
    Ok(unit)
}

/// Convert a value in the given unit to an SI [`Quantity`].
///
/// Conversions are exact per definition (1 bar = 1e5 Pa, T[K] = T[°C] + 273.15).
/// Physically impossible values (temperature ≤ 0 K, negative pressure or
/// duration, non-positive length) are rejected as domain errors.
pub fn to_si(value: f64, unit: Unit) -> Result<Quantity> {
    if !value.is_finite() {
        return Err(Error::Domain(format!(
            "non-finite value for unit '{}'",
            unit.symbol()
        )));
    }
    let si = match unit {
        Unit::Bar => value * 1e5,
        Unit::Pascal => value,
        Unit::Celsius => value + 273.15,
        Unit::Kelvin => value,
        Unit::Nanometre => value * 1e-9,
        Unit::Micrometre => value * 1e-6,
        Unit::Millimetre => value * 1e-3,
        Unit::Centimetre => value * 1e-2,
        Unit::Metre => value,
        Unit::Second => value,
        Unit::Hour => value * 3600.0,
        Unit::Day => value * 86400.0,
        Unit::Milliwatt => value * 1e-3,
        Unit::Watt => value,
        Unit::Cm2PerS => value * 1e-4,
        Unit::KjPerMol => value * 1e3,
        Unit::PerCm3 => value * 1e6,
        Unit::PerM3 => value,
    };
    let dimension = unit.dimension();
    match dimension {
        Dimension::Temperature if si <= 0.0 => {
            return Err(Error::Domain(format!(
                "temperature must be above absolute zero, got {si} K"
            )))
        }
        Dimension::Pressure if si < 0.0 => {
            return Err(Error::Domain(format!("pressure must be >= 0, got {si} Pa")))
        }
        Dimension::Length if si <= 0.0 => {
            return Err(Error::Domain(format!("length must be > 0, got {si} m")))
        }
        Dimension::Time if si < 0.0 => {
            return Err(Error::Domain(format!("time must be >= 0, got {si} s")))
        }
        Dimension::Concentration if si < 0.0 => {
            return Err(Error::Domain(format!(
                "concentration must be >= 0, got {si} m^-3"
            )))
        }
        _ => {}
    }
    Ok(Quantity {
        value: si,
        dimension,
    })
}

/// Express an SI value in the given unit (inverse of [`to_si`]).
pub fn from_si(si_value: f64, unit: Unit) -> f64 {
    match unit {
        Unit::Bar => si_value / 1e5,
        Unit::Pascal => si_value,
        Unit::Celsius => si_value - 273.15,
        Unit::Kelvin => si_value,
        Unit::Nanometre => si_value / 1e-9,
        Unit::Micrometre => si_value / 1e-6,
        Unit::Millimetre => si_value / 1e-3,
        Unit::Centimetre => si_value / 1e-2,
        Unit::Metre => si_value,
        Unit::Second => si_value,
        Unit::Hour => si_value / 3600.0,
        Unit::Day => si_value / 86400.0,
        Unit::Milliwatt => si_value / 1e-3,
        Unit::Watt => si_value,
        Unit::Cm2PerS => si_value / 1e-4,
        Unit::KjPerMol => si_value / 1e3,
        Unit::PerCm3 => si_value / 1e6,
        Unit::PerM3 => si_value,
    }
}
