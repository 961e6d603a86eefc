//! Fiber and material presets: a sectioned key=value text format, trivially
//! parseable and diff-friendly, because presets are the project's scientific
//! record.
//!
//! ```text
//! [fiber LMA-PM-10]
//! cladding_radius_um = 115
//! ...
//!
//! [material default]
//! activation_energy_kj_mol = 40.19
//! ...
//! ```
//!
//! Every quantity key carries its unit suffix. Unknown sections or keys are
//! rejected. A loaded file extends the built-in presets; same-name entries
//! replace them.

use hyload_core::diffusion::FiberSpec;
use hyload_core::error::{Error, Result};
use hyload_core::guidance::IndexData;
use hyload_core::material::MaterialParams;
use std::path::Path;

/// Name of the built-in material preset.
pub const DEFAULT_MATERIAL: &str = "default";

#[derive(Debug, Clone)]
pub struct PresetDb {
    pub fibers: Vec<(String, FiberSpec)>,
    pub materials: Vec<(String, MaterialParams)>,
}

impl PresetDb {
    /// The compiled-in presets: the LMA-PM-10 fiber and the default material.
    pub fn builtin() -> Self {
        PresetDb {
            fibers: vec![("LMA-PM-10".into(), FiberSpec::lma_pm_10())],
            materials: vec![(DEFAULT_MATERIAL.into(), MaterialParams::defaults())],
        }
    }

    /// Built-ins extended by a preset file.
    pub fn with_file(path: &Path) -> Result<Self> {
        let mut db = PresetDb::builtin();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Data(format!("cannot read preset file {}: {e}", path.display())))?;
        db.merge_text(&text)?;
        Ok(db)
    }

    pub fn fiber(&self, name: &str) -> Result<&FiberSpec> {
        self.fibers
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, f)| f)
            .ok_or_else(|| {
                let known: Vec<&str> = self.fibers.iter().map(|(n, _)| n.as_str()).collect();
                Error::Usage(format!(
                    "unknown fiber preset '{name}' (available: {})",
                    known.join(", ")
                ))
            })
    }

    pub fn material(&self, name: &str) -> Result<&MaterialParams> {
        self.materials
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| {
                let known: Vec<&str> = self.materials.iter().map(|(n, _)| n.as_str()).collect();
                Error::Usage(format!(
                    "unknown material preset '{name}' (available: {})",
                    known.join(", ")
                ))
            })
    }

    fn upsert_fiber(&mut self, name: String, fiber: FiberSpec) {
        match self.fibers.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = fiber,
            None => self.fibers.push((name, fiber)),
        }
    }

    fn upsert_material(&mut self, name: String, material: MaterialParams) {
        match self.materials.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = material,
            None => self.materials.push((name, material)),
        }
    }

    fn merge_text(&mut self, text: &str) -> Result<()> {
        let mut section: Option<Section> = None;
        let mut seen: Vec<String> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = lineno + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(header) = line.strip_prefix('[') {
                let header = header.strip_suffix(']').ok_or_else(|| {
                    Error::Data(format!("preset line {lineno}: unterminated section header"))
                })?;
                self.finish_section(section.take(), &mut seen)?;
                section = Some(Section::open(header, lineno)?);
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Data(format!("preset line {lineno}: expected key = value"))
            })?;
            let key = key.trim();
            let value: f64 = value.trim().parse().map_err(|_| {
                Error::Data(format!(
                    "preset line {lineno}: value for '{key}' is not a number"
                ))
            })?;
            match section.as_mut() {
                Some(s) => s.set(key, value, lineno)?,
                None => {
                    return Err(Error::Data(format!(
                        "preset line {lineno}: key outside any [section]"
                    )))
                }
            }
        }
        self.finish_section(section.take(), &mut seen)
    }

    fn finish_section(&mut self, section: Option<Section>, seen: &mut Vec<String>) -> Result<()> {
        let Some(s) = section else { return Ok(()) };
        let tag = format!("{}/{}", s.kind_label(), s.name);
        if seen.contains(&tag) {
            return Err(Error::Data(format!("duplicate preset section [{tag}]")));
        }
        seen.push(tag);
        match s.close()? {
            Closed::Fiber(name, fiber) => self.upsert_fiber(name, fiber),
            Closed::Material(name, material) => self.upsert_material(name, material),
        }
        Ok(())
    }
}

enum Closed {
    Fiber(String, FiberSpec),
    Material(String, MaterialParams),
}

struct Section {
    kind: SectionKind,
    name: String,
    opened_at: usize,
    // fiber fields, SI (all required)
    fiber_fields: [Option<f64>; 7],
    // optional constant effective NA for the single-mode check
    fiber_na: Option<f64>,
    // material overrides on top of the defaults
    material: MaterialParams,
}

#[derive(PartialEq)]
enum SectionKind {
    Fiber,
    Material,
}

const FIBER_KEYS: [&str; 7] = [
    "cladding_radius_um",
    "pitch_um",
    "hole_diameter_um",
    "mode_field_diameter_um",
    "endcap_thickness_min_um",
    "endcap_thickness_max_um",
    "open_hole_radius_um",
];

impl Section {
    fn open(header: &str, lineno: usize) -> Result<Section> {
        let (kind_str, name) = header.trim().split_once(' ').ok_or_else(|| {
            Error::Data(format!(
                "preset line {lineno}: section must be [fiber <name>] or [material <name>]"
            ))
        })?;
        let kind = match kind_str {
            "fiber" => SectionKind::Fiber,
            "material" => SectionKind::Material,
            other => {
                return Err(Error::Data(format!(
                    "preset line {lineno}: unknown section kind '{other}'"
                )))
            }
        };
        let name = name.trim();
        if name.is_empty() {
            return Err(Error::Data(format!(
                "preset line {lineno}: empty section name"
            )));
        }
        Ok(Section {
            kind,
            name: name.to_string(),
            opened_at: lineno,
            fiber_fields: [None; 7],
            fiber_na: None,
            material: MaterialParams::defaults(),
        })
    }

    fn kind_label(&self) -> &'static str {
        match self.kind {
            SectionKind::Fiber => "fiber",
            SectionKind::Material => "material",
        }
    }

    fn set(&mut self, key: &str, value: f64, lineno: usize) -> Result<()> {
        match self.kind {
            SectionKind::Fiber => {
                if key == "effective_na" {
                    if self.fiber_na.is_some() {
                        return Err(Error::Data(format!(
                            "preset line {lineno}: duplicate key '{key}'"
                        )));
                    }
                    self.fiber_na = Some(value);
                    return Ok(());
                }
                let idx = FIBER_KEYS.iter().position(|k| *k == key).ok_or_else(|| {
                    Error::Data(format!(
                        "preset line {lineno}: unknown fiber key '{key}' \
                         (expected effective_na or one of: {})",
                        FIBER_KEYS.join(", ")
                    ))
                })?;
                if self.fiber_fields[idx].is_some() {
                    return Err(Error::Data(format!(
                        "preset line {lineno}: duplicate key '{key}'"
                    )));
                }
                self.fiber_fields[idx] = Some(value * 1e-6); // all other fiber keys are um
            }
            SectionKind::Material => match key {
                "diffusivity_prefactor_cm2_s" => {
                    self.material.diffusivity.prefactor = value * 1e-4;
                }
                "activation_energy_kj_mol" => {
                    self.material.diffusivity.activation_energy = value * 1e3;
                }
                "lattice_site_density_cm-3" => {
                    self.material.solubility.lattice_site_density = value * 1e6;
                }
                "characteristic_temperature_k" => {
                    self.material.solubility.characteristic_temperature = value;
                }
                "binding_energy_kj_mol" => {
                    self.material.solubility.binding_energy = value * 1e3;
                }
                other => {
                    return Err(Error::Data(format!(
                        "preset line {lineno}: unknown material key '{other}'"
                    )))
                }
            },
        }
        Ok(())
    }

    fn close(self) -> Result<Closed> {
        match self.kind {
            SectionKind::Fiber => {
                let mut values = [0.0; 7];
                for (i, slot) in self.fiber_fields.iter().enumerate() {
                    values[i] = slot.ok_or_else(|| {
                        Error::Data(format!(
                            "fiber section '{}' (line {}): missing key '{}'",
                            self.name, self.opened_at, FIBER_KEYS[i]
                        ))
                    })?;
                }
                let fiber = FiberSpec {
                    name: self.name.clone(),
                    cladding_radius: values[0],
                    pitch: values[1],
                    hole_diameter: values[2],
                    mode_field_diameter: values[3],
                    endcap_thickness_min: values[4],
                    endcap_thickness_max: values[5],
                    open_hole_radius: values[6],
                    index_data: self.fiber_na.map(IndexData::Constant),
                };
                fiber.validate()?;
                Ok(Closed::Fiber(self.name, fiber))
            }
            SectionKind::Material => {
                self.material.validate()?;
                Ok(Closed::Material(self.name, self.material))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_presets_present() {
        let db = PresetDb::builtin();
        assert!(db.fiber("LMA-PM-10").is_ok());
        assert!(db.material("default").is_ok());
        assert!(db.fiber("nope").is_err());
    }

    #[test]
    fn parses_fiber_and_material_sections() {
        let mut db = PresetDb::builtin();
        db.merge_text(
            "# comment\n\
             [fiber test-20]\n\
             cladding_radius_um = 230\n\
             pitch_um = 12\n\
             hole_diameter_um = 6\n\
             mode_field_diameter_um = 20\n\
             endcap_thickness_min_um = 50\n\
             endcap_thickness_max_um = 100\n\
             open_hole_radius_um = 10\n\
             \n\
             [material hot]\n\
             activation_energy_kj_mol = 42.0\n",
        )
        .unwrap();
        let f = db.fiber("test-20").unwrap();
        assert!((f.cladding_radius - 230e-6).abs() < 1e-18);
        let m = db.material("hot").unwrap();
        assert_eq!(m.diffusivity.activation_energy, 42_000.0);
        // untouched override keys keep their defaults
        assert_eq!(
            m.solubility.characteristic_temperature,
            MaterialParams::defaults()
                .solubility
                .characteristic_temperature
        );
    }

    #[test]
    fn same_name_section_replaces_builtin() {
        let mut db = PresetDb::builtin();
        db.merge_text(
            "[fiber LMA-PM-10]\n\
             cladding_radius_um = 100\n\
             pitch_um = 6\n\
             hole_diameter_um = 3\n\
             mode_field_diameter_um = 10\n\
             endcap_thickness_min_um = 50\n\
             endcap_thickness_max_um = 100\n\
             open_hole_radius_um = 5\n",
        )
        .unwrap();
        assert_eq!(db.fibers.len(), 1);
        assert!((db.fiber("LMA-PM-10").unwrap().cladding_radius - 100e-6).abs() < 1e-18);
    }

    #[test]
    fn rejects_unknown_keys_and_sections() {
        let mut db = PresetDb::builtin();
        let err = db.merge_text("[fiber x]\ncore_size_um = 1\n").unwrap_err();
        assert!(matches!(err, Error::Data(_)), "{err}");
        let err = db
            .merge_text("[coating x]\nthickness_um = 1\n")
            .unwrap_err();
        assert!(matches!(err, Error::Data(_)));
        let err = db.merge_text("stray = 1\n").unwrap_err();
        assert!(matches!(err, Error::Data(_)));
    }

    #[test]
    fn rejects_incomplete_fiber() {
        let mut db = PresetDb::builtin();
        let err = db
            .merge_text("[fiber x]\ncladding_radius_um = 115\n")
            .unwrap_err();
        match err {
            Error::Data(msg) => assert!(msg.contains("missing key"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }
}
