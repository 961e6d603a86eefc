//! End-to-end checks of the command surface: value correctness through the
//! binary, preset files, CSV ingestion and the verify gate.

use std::io::Write;
use std::process::{Command, Output};

fn hyload(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyload"))
        .args(args)
        .env_remove("HYLOAD_PRESETS")
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn csv_value(text: &str, key: &str) -> f64 {
    for line in text.lines() {
        if let Some((k, v)) = line.split_once(',') {
            if k == key {
                return v
                    .parse()
                    .unwrap_or_else(|_| panic!("bad value for {key}: {v}"));
            }
        }
    }
    panic!("key {key} not found in:\n{text}");
}

#[test]
fn diffusivity_matches_model() {
    let out = hyload(&["diffusivity", "--temp", "20C", "--format", "csv"]);
    assert!(out.status.success());
    let d = csv_value(&stdout_of(&out), "diffusivity_cm2_s");
    assert!((d - 1.953e-11).abs() / 1.953e-11 < 1e-3, "D = {d}");
}

#[test]
fn plan_reproduces_two_week_loading() {
    let out = hyload(&[
        "plan",
        "--target",
        "1.457e20cm-3", // half the saturation at 100 bar, 20 C
        "--pressure",
        "100bar",
        "--temp",
        "20C",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let x = csv_value(&text, "fill_fraction");
    assert!((x - 0.5).abs() < 2e-3, "x = {x}");
    let t_solid = csv_value(&text, "time_solid_s");
    assert!((t_solid - 1.358e6).abs() / 1.358e6 < 0.01, "t = {t_solid}");
    let t_open = csv_value(&text, "time_open-holes_s");
    assert!((t_solid / t_open - 529.0).abs() < 0.1);
}

#[test]
fn storage_time_through_binary() {
    let out = hyload(&[
        "storage-time",
        "--remaining",
        "0.8",
        "--temp",
        "20C",
        "--case",
        "endcap",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let t = csv_value(&stdout_of(&out), "time_s");
    assert!((t - 1.44e5).abs() / 1.44e5 < 0.01, "t = {t}");
}

#[test]
fn single_mode_checks() {
    let out = hyload(&[
        "single-mode",
        "--pitch",
        "6um",
        "--na",
        "0.026",
        "--wavelength",
        "313nm",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let v = csv_value(&text, "v");
    assert!((v - 3.13).abs() < 0.01);
    assert!(text.contains("single_mode,yes"));

    let out = hyload(&[
        "single-mode",
        "--core-radius",
        "2um",
        "--na",
        "0.12",
        "--wavelength",
        "313nm",
        "--format",
        "csv",
    ]);
    let text = stdout_of(&out);
    assert!((csv_value(&text, "v") - 4.82).abs() < 0.01);
    assert!(text.contains("single_mode,no"));

    // both geometries at once is a usage error
    let out = hyload(&[
        "single-mode",
        "--core-radius",
        "2um",
        "--pitch",
        "6um",
        "--na",
        "0.1",
        "--wavelength",
        "313nm",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn single_mode_with_index_table() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "wavelength_nm,effective_NA\n300,0.024\n350,0.030\n").unwrap();
    let out = hyload(&[
        "single-mode",
        "--pitch",
        "6um",
        "--index-file",
        f.path().to_str().unwrap(),
        "--wavelength",
        "313nm",
        "--format",
        "csv",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let na = csv_value(&stdout_of(&out), "na");
    assert!((na - 0.02556).abs() < 1e-5, "interpolated NA = {na}");

    // wavelength outside the table is a domain/range error
    let out = hyload(&[
        "single-mode",
        "--pitch",
        "6um",
        "--index-file",
        f.path().to_str().unwrap(),
        "--wavelength",
        "626nm",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn single_mode_from_fiber_preset() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        "[fiber uv-lattice]\n\
         cladding_radius_um = 115\n\
         pitch_um = 6\n\
         hole_diameter_um = 3\n\
         mode_field_diameter_um = 10\n\
         endcap_thickness_min_um = 50\n\
         endcap_thickness_max_um = 100\n\
         open_hole_radius_um = 5\n\
         effective_na = 0.026\n"
    )
    .unwrap();
    let out = hyload(&[
        "single-mode",
        "--fiber",
        "uv-lattice",
        "--wavelength",
        "313nm",
        "--presets",
        f.path().to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout_of(&out);
    assert!((csv_value(&text, "v") - 3.13).abs() < 0.01);
    assert!(text.contains("single_mode,yes"));

    // the stock preset declares no NA, so it must ask for one
    let out = hyload(&[
        "single-mode",
        "--fiber",
        "LMA-PM-10",
        "--wavelength",
        "313nm",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bend_curve_has_critical_radius_and_rows() {
    let out = hyload(&["bend", "--wavelength", "313nm", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!((csv_value(&text, "critical_bend_radius_m") - 3.5e-2).abs() < 1e-9);
    let rows: Vec<&str> = text
        .lines()
        .skip_while(|l| *l != "radius_m,attenuation_dB_per_m")
        .skip(1)
        .collect();
    assert_eq!(rows.len(), 40);
}

#[test]
fn schedule_through_binary() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    // a month cold, then three days at room temperature
    write!(f, "duration_s,temperature_C\n2592000,-70\n259200,20\n").unwrap();
    let out = hyload(&[
        "schedule",
        "--file",
        f.path().to_str().unwrap(),
        "--direction",
        "out",
        "--format",
        "csv",
        "--case",
        "endcap",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "time_s,concentration");
    assert_eq!(lines.len(), 4); // t = 0 plus two boundaries
                                // cold storage barely moves the center concentration
    let after_cold: f64 = lines[2].split(',').nth(1).unwrap().parse().unwrap();
    assert!(after_cold > 0.999, "after cold month: {after_cold}");

    // identical argv and input file give byte-identical output
    let rerun = hyload(&[
        "schedule",
        "--file",
        f.path().to_str().unwrap(),
        "--direction",
        "out",
        "--format",
        "csv",
        "--case",
        "endcap",
    ]);
    assert_eq!(out.stdout, rerun.stdout);
}

#[test]
fn preset_file_via_environment_variable() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        "[material slow]\n\
         diffusivity_prefactor_cm2_s = 1.4e-4\n"
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_hyload"))
        .args([
            "diffusivity",
            "--temp",
            "20C",
            "--material",
            "slow",
            "--format",
            "csv",
        ])
        .env("HYLOAD_PRESETS", f.path())
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let d = csv_value(&stdout_of(&out), "diffusivity_cm2_s");
    // prefactor scaled by 1.4/2.83, same activation energy
    let expected = 1.953e-11 * 1.4 / 2.83;
    assert!((d - expected).abs() / expected < 1e-3, "D = {d}");

    // the --presets flag takes precedence over the environment variable
    let mut override_file = tempfile::NamedTempFile::new().unwrap();
    write!(
        override_file,
        "[material slow]\n\
         diffusivity_prefactor_cm2_s = 2.83e-4\n"
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_hyload"))
        .args([
            "diffusivity",
            "--temp",
            "20C",
            "--material",
            "slow",
            "--format",
            "csv",
        ])
        .env("HYLOAD_PRESETS", f.path())
        .args(["--presets", override_file.path().to_str().unwrap()])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let d = csv_value(&stdout_of(&out), "diffusivity_cm2_s");
    assert!((d - 1.953e-11).abs() / d < 1e-3, "D = {d}");
}

#[test]
fn preset_file_extends_and_overrides() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        "[fiber big-core]\n\
         cladding_radius_um = 230\n\
         pitch_um = 12\n\
         hole_diameter_um = 6\n\
         mode_field_diameter_um = 20\n\
         endcap_thickness_min_um = 60\n\
         endcap_thickness_max_um = 120\n\
         open_hole_radius_um = 10\n"
    )
    .unwrap();
    let path = f.path().to_str().unwrap();
    let out = hyload(&["presets", "--presets", path, "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("fiber.LMA-PM-10.cladding_radius_um,1.15000000e2"));
    assert!(text.contains("fiber.big-core.cladding_radius_um,2.30000000e2"));

    // the new fiber is directly usable
    let out = hyload(&[
        "load-time",
        "--fill",
        "0.5",
        "--temp",
        "20C",
        "--fiber",
        "big-core",
        "--presets",
        path,
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let t = csv_value(&stdout_of(&out), "time_s");
    // twice the radius of the stock fiber: four times the loading time
    assert!(
        (t - 4.0 * 1.358e6).abs() / (4.0 * 1.358e6) < 0.01,
        "t = {t}"
    );

    // malformed preset files are data errors
    let mut bad = tempfile::NamedTempFile::new().unwrap();
    write!(bad, "[fiber broken]\nunknown_key_um = 1\n").unwrap();
    let out = hyload(&["presets", "--presets", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn energy_rejects_bad_rows_with_location() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "time_s,power_mW\n0,20\n100,-5\n").unwrap();
    let out = hyload(&["energy", "--file", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("row 2"), "stderr: {msg}");
}

#[test]
fn verify_passes_at_default_config() {
    let out = hyload(&["verify", "--format", "csv"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout_of(&out);
    assert!(text.contains("status,PASS"), "{text}");
    let err = csv_value(&text, "max_abs_error");
    assert!(err <= 5e-4, "max error {err}");
}

#[test]
fn contour_grid_shape_and_determinism() {
    let args = [
        "contour",
        "--temp-min",
        "0C",
        "--temp-max",
        "60C",
        "--temp-points",
        "3",
        "--time-min",
        "0h",
        "--time-max",
        "14d",
        "--time-points",
        "4",
    ];
    let out = hyload(&args);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "temperature_K,time_s,concentration");
    assert_eq!(lines.len(), 1 + 3 * 4);
    // t = 0 column is exactly zero for the in-diffusion reading
    for chunk in lines[1..].chunks(4) {
        assert!(chunk[0].ends_with(",0.00000000e0"));
    }
}

#[test]
fn help_exits_zero() {
    let out = hyload(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("Hydrogen loading"));
}

#[test]
fn unknown_subcommand_is_usage_error() {
    let out = hyload(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}
