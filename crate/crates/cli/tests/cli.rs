use std::path::Path;
use std::process::{Command, Output};

use weno_cli::output::{read_table, FieldMeta};

fn weno(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weno"))
        .args(args)
        .env("WENO_OUT_DIR", out)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn meta(path: &Path) -> FieldMeta {
    let text = std::fs::read_to_string(path).unwrap();
    serde_json::from_str(&text).unwrap()
}

const SMALL_SIN: [&str; 8] = ["run", "--problem", "sin", "--n", "20", "--t-final", "0.1", "--scheme"];

#[test]
fn list_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let o = weno(&["list"], dir.path());
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("sod") && text.contains("theta6"));
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 5] = [
        &["run", "--problem", "nope"],
        &["run", "--problem", "sod", "--scheme", "nope"],
        &["run", "--problem", "sod", "--ny", "10"],
        &["run", "--problem", "sod", "--cfl", "-1"],
        &["frobnicate"],
    ];
    for args in cases {
        let o = weno(args, dir.path());
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn unknown_config_key_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "problem = sod\nresolution = 10\n").unwrap();
    let o = weno(&["run", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("resolution"));
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# small run\nproblem = sin\nscheme = js\nn = 16\nt-final = 0.05\n").unwrap();
    let o = weno(&["run", "--config", cfg.to_str().unwrap(), "--n", "24"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let m = meta(&dir.path().join("sin_js_24.csv.meta.json"));
    assert_eq!((m.n, m.scheme.as_str(), m.t), (24, "js", 0.05));
    assert!(!dir.path().join("sin_js_16.csv").exists());
}

#[test]
fn field_file_round_trips_with_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let mut args = SMALL_SIN.to_vec();
    args.push("theta6");
    let o = weno(&args, dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = dir.path().join("sin_theta6_20.csv");
    let (header, rows) = read_table(&csv).unwrap();
    let m = meta(&weno_cli::output::sidecar_path(&csv));
    assert_eq!(m.schema_version, weno_cli::output::SCHEMA_VERSION);
    assert_eq!(header[0], "x");
    assert_eq!(header[1..], m.columns[..]);
    assert_eq!(rows.len() + 1, std::fs::read_to_string(&csv).unwrap().lines().count());
    assert!(rows.iter().flatten().all(|v| v.is_finite()));
    let first = std::fs::read_to_string(&csv).unwrap();
    let value = first.lines().nth(1).unwrap().split(',').next().unwrap();
    assert!(value.contains('e'), "scientific notation expected: {value}");
}

#[test]
fn runs_are_bit_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let mut args = SMALL_SIN.to_vec();
    args.push("z");
    assert_eq!(code(&weno(&args, a.path())), 0);
    assert_eq!(code(&weno(&args, b.path())), 0);
    for name in ["sin_z_20.csv", "sin_z_20.csv.meta.json", "sin_z_20.report.json"] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        assert_eq!(x, y, "{name} differs");
    }
}

#[test]
fn config_hash_tracks_settings() {
    let dir = tempfile::tempdir().unwrap();
    let mut args = SMALL_SIN.to_vec();
    args.push("cu6");
    assert_eq!(code(&weno(&args, dir.path())), 0);
    let h1 = meta(&dir.path().join("sin_cu6_20.csv.meta.json")).config_hash;
    args.extend(["--cfl", "0.3"]);
    assert_eq!(code(&weno(&args, dir.path())), 0);
    let h2 = meta(&dir.path().join("sin_cu6_20.csv.meta.json")).config_hash;
    assert_ne!(h1, h2);
    assert_eq!(h1.len(), 64);
}

#[test]
fn converge_writes_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = weno(
        &["converge", "--problem", "sin", "--scheme", "theta6", "--n", "10,20", "--t-final", "0.1"],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let files: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert!(files.iter().any(|f| f.ends_with(".txt")), "{files:?}");
    assert!(String::from_utf8(o.stdout).unwrap().contains("20"));
}
