use std::path::{Path, PathBuf};
use std::process::Command as Process;

use korteweg::commands::run;
use korteweg::config::{Command, RunConfig};
use korteweg::output::{curve_filename, read_amplitude_csv, write_amplitude_csv};
use korteweg::CliError;

fn preset(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("presets").join(name)
}

fn binary() -> Process {
    Process::new(env!("CARGO_BIN_EXE_korteweg"))
}

const MINIMAL: &str = r#"
command = "reflect"
omega = 2.0

[material]
c0 = 1.0
rho0 = 1.0
u1 = 1e-3
u2 = 5e-4
"#;

#[test]
fn overrides_replace_values() {
    let cfg = RunConfig::from_toml(MINIMAL, &["omega=3".into(), "material.u2=0".into(), "bc.kind=\"sound-hard\"".into()]).unwrap();
    assert_eq!(cfg.omega, 3.0);
    assert_eq!(cfg.material.u2, 0.0);
    assert_eq!(cfg.command, Command::Reflect);
    let bare = RunConfig::from_toml(MINIMAL, &["bc.kind=impedance".into()]).unwrap();
    assert!(bare.bc.kind().is_ok());
}

#[test]
fn configuration_errors() {
    let unknown = RunConfig::from_toml(MINIMAL, &["material.u3=1".into()]).unwrap_err();
    assert!(matches!(unknown, CliError::Config(_)));
    assert_eq!(unknown.exit_code(), 1);
    let negative = RunConfig::from_toml(MINIMAL, &["material.c0=-1".into()]).unwrap_err();
    assert_eq!(negative.exit_code(), 1);
    assert!(RunConfig::from_toml(MINIMAL, &["omega".into()]).is_err());
    assert!(RunConfig::from_toml("command = \"teleport\"", &[]).is_err());
}

#[test]
fn amplitude_csv_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested").join("curve.csv");
    let curve = vec![(1.0, 0.25), (1.5, -1.0 / 3.0), (2.0, 1e-300)];
    write_amplitude_csv(&curve, &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert_eq!(text.lines().next(), Some("y,F"));
    assert_eq!(read_amplitude_csv(&path).unwrap(), curve);
    assert!(write_amplitude_csv(&[(1.0, 0.0), (3.0, 0.0), (2.0, 0.0)], &path).is_err());
}

#[test]
fn amplitude_file_names() {
    assert_eq!(curve_filename(1e-3, 5e-4, 0.0), "pml_0.001_0.0005_n1_0.0_n2_0.0.csv");
    assert_eq!(curve_filename(1e-3, 5e-4, std::f64::consts::FRAC_PI_2), "pml_0.001_0.0005_n1_1.57_n2_1.57.csv");
}

#[test]
fn runs_are_deterministic() {
    let cfg = RunConfig::from_path(&preset("dispersion.toml"), &[]).unwrap();
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let sa = run(&cfg, a.path()).unwrap();
    let sb = run(&cfg, b.path()).unwrap();
    assert_eq!(sa.entries, sb.entries);
    let fa = std::fs::read(a.path().join("dispersion.csv")).unwrap();
    let fb = std::fs::read(b.path().join("dispersion.csv")).unwrap();
    assert_eq!(fa, fb);
    // header plus one row per sample
    assert_eq!(String::from_utf8(fa).unwrap().lines().count(), 20);
}

#[test]
fn every_preset_loads() {
    for entry in std::fs::read_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("presets")).unwrap() {
        let path = entry.unwrap().path();
        RunConfig::from_path(&path, &[]).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
}

#[test]
fn quick_commands_report() {
    let dir = tempfile::tempdir().unwrap();
    let reflect = run(&RunConfig::from_path(&preset("reflect_impedance.toml"), &[]).unwrap(), dir.path()).unwrap();
    let residual: f64 = reflect.get("boundary_residual").unwrap().parse().unwrap();
    assert!(residual < 1e-10);
    let tir = run(&RunConfig::from_path(&preset("transmit_tir.toml"), &[]).unwrap(), dir.path()).unwrap();
    assert_eq!(tir.get("propagating"), Some("false"));
    assert!(tir.get("decay_length").is_some());
    let spec = run(&RunConfig::from_path(&preset("specfun_check.toml"), &[]).unwrap(), dir.path()).unwrap();
    let w: f64 = spec.get("wronskian_max").unwrap().parse().unwrap();
    assert!(w < 1e-9);
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ok = binary()
        .args(["--config", preset("dispersion.toml").to_str().unwrap(), "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(ok.status.success());
    assert!(String::from_utf8_lossy(&ok.stdout).contains("degenerate"));
    assert!(dir.path().join("dispersion.csv").is_file());

    let bad_key = binary()
        .args(["--config", preset("dispersion.toml").to_str().unwrap(), "--override", "material.nope=1", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(bad_key.status.code(), Some(1));

    let under_resolved = binary()
        .args([
            "--config",
            preset("solve_box.toml").to_str().unwrap(),
            "--override",
            "geometry.cells=4",
            "--override",
            "omega=40",
            "--quiet",
            "--out",
        ])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(under_resolved.status.code(), Some(2));
    assert!(under_resolved.stdout.is_empty());
}
