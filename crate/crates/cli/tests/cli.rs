//! End-to-end tests of the `ptsim` binary: output format, determinism,
//! and the exit-code contract.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ptsim"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).expect("config written");
    path
}

fn abstract_coupler_config() -> &'static str {
    r#"{
        "system": {
            "n_modes": 2,
            "coupling": [[0.0, 1.0], [1.0, 0.0]],
            "loss_profile": [0.0, 1.0]
        },
        "layout": {
            "rotation_mode": "abstract",
            "sections": [{"length": 0.7853981633974483, "loss_on": true}]
        },
        "sweep": {"gamma_min": 0.0, "gamma_max": 4.0, "steps": 401},
        "methods": ["scattering"],
        "output_path": "curve.csv"
    }"#
}

fn uniform_loss_config() -> &'static str {
    r#"{
        "system": {
            "n_modes": 2,
            "coupling": [[0.0, 1.0], [1.0, 0.0]],
            "loss_profile": [1.0, 1.0]
        },
        "layout": {
            "rotation_mode": "abstract",
            "sections": [{"length": 0.7853981633974483, "loss_on": true}]
        },
        "sweep": {"gamma_min": 0.0, "gamma_max": 4.0, "steps": 11},
        "methods": ["scattering"],
        "output_path": "curve.csv"
    }"#
}

fn shipped_config() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/pt_coupler.json")
}

#[test]
fn single_point_sweep_has_exact_shape() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "run.json", abstract_coupler_config());
    let out_path = dir.path().join("point.csv");
    let out = run(&[
        "sweep",
        "--config",
        config.to_str().unwrap(),
        "--gamma-min",
        "2",
        "--gamma-max",
        "2",
        "--steps",
        "1",
        "--method",
        "closed_form",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));

    let text = std::fs::read_to_string(&out_path).unwrap();
    let lines: Vec<&str> = text.split('\n').collect();
    // Header, one data row, and the final newline's empty remainder.
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], "gamma,p_boson,p_fermion,method");
    assert_eq!(lines[2], "");
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(fields.len(), 4);
    assert_eq!(fields[0], "2.0000000000000000e0");
    assert_eq!(fields[3], "closed_form");
    // At the threshold the two probabilities coincide.
    assert_eq!(fields[1], fields[2]);
    assert!(!text.contains('\r'));
    assert!(!text.ends_with("\n\n"));
}

#[test]
fn numeric_fields_carry_17_significant_digits() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "run.json", abstract_coupler_config());
    let out_path = dir.path().join("digits.csv");
    let out = run(&[
        "sweep",
        "--config",
        config.to_str().unwrap(),
        "--steps",
        "7",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = std::fs::read_to_string(&out_path).unwrap();
    for row in text.lines().skip(1) {
        for field in row.split(',').take(3) {
            // d.dddddddddddddddde[-]d+
            let (mantissa, exponent) = field.split_once('e').expect("scientific notation");
            let mantissa = mantissa.strip_prefix('-').unwrap_or(mantissa);
            let (lead, frac) = mantissa.split_once('.').expect("decimal point");
            assert_eq!(lead.len(), 1, "field {}", field);
            assert_eq!(frac.len(), 16, "field {}", field);
            assert!(exponent.strip_prefix('-').unwrap_or(exponent).parse::<u32>().is_ok());
        }
    }
}

#[test]
fn full_sweep_has_401_rows_with_pinned_endpoints() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "run.json", abstract_coupler_config());
    let out_path = dir.path().join("full.csv");
    let out = run(&[
        "sweep",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 401);
    assert!(rows[0].starts_with("0.0000000000000000e0,"));
    assert!(rows[400].starts_with("4.0000000000000000e0,"));

    // Lossless limit: fermions always coincide, bosons never do.
    let fields: Vec<&str> = rows[0].split(',').collect();
    let p_boson: f64 = fields[1].parse().unwrap();
    let p_fermion: f64 = fields[2].parse().unwrap();
    assert!(p_boson.abs() <= 1e-9);
    assert!((p_fermion - 1.0).abs() <= 1e-9);
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "run.json", abstract_coupler_config());
    let a_path = dir.path().join("a.csv");
    let b_path = dir.path().join("b.csv");
    for (path, _) in [(&a_path, 0), (&b_path, 1)] {
        let out = run(&[
            "sweep",
            "--config",
            config.to_str().unwrap(),
            "--method",
            "scattering",
            "--method",
            "lindblad",
            "--steps",
            "9",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "stderr: {}", stderr(&out));
    }
    let a = std::fs::read(&a_path).unwrap();
    let b = std::fs::read(&b_path).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn methods_are_grouped_in_canonical_order() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "run.json", abstract_coupler_config());
    let out_path = dir.path().join("methods.csv");
    let out = run(&[
        "sweep",
        "--config",
        config.to_str().unwrap(),
        "--method",
        "closed_form",
        "--method",
        "scattering",
        "--steps",
        "3",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let methods: Vec<&str> =
        text.lines().skip(1).map(|r| r.rsplit(',').next().unwrap()).collect();
    assert_eq!(
        methods,
        vec!["scattering", "scattering", "scattering", "closed_form", "closed_form", "closed_form"]
    );
}

#[test]
fn threshold_prints_the_location_to_stdout() {
    let out = run(&["threshold", "--config", shipped_config().to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let value: f64 = stdout(&out).trim().parse().expect("parsable threshold");
    assert!((value - 2.0).abs() <= 1e-6, "threshold {}", value);
    assert!(stderr(&out).contains("spectral gap"));
}

#[test]
fn crossing_prints_the_location_to_stdout() {
    let out = run(&["crossing", "--config", shipped_config().to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let value: f64 = stdout(&out).trim().parse().expect("parsable crossing");
    assert!((value - 2.0).abs() <= 1e-6, "crossing {}", value);
}

#[test]
fn schur_emits_the_factorization_table() {
    let out = run(&["schur", "--config", shipped_config().to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10);
    assert!(lines[0].starts_with("gamma_th,"));
    assert_eq!(lines[1], "matrix,row,col,re,im");
    // The strictly lower entry of the triangular factor is a hard zero.
    assert_eq!(lines[8], "triangular,1,0,0.0000000000000000e0,0.0000000000000000e0");
}

#[test]
fn missing_config_exits_1() {
    let out = run(&["sweep", "--config", "/nonexistent/run.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("error:"));
}

#[test]
fn malformed_json_exits_1_with_context() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "bad.json", "{ not json");
    let out = run(&["sweep", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("invalid configuration"), "stderr: {}", stderr(&out));
}

#[test]
fn unknown_method_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "run.json", abstract_coupler_config());
    let out = run(&["sweep", "--config", config.to_str().unwrap(), "--method", "psychic"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("psychic"));
}

#[test]
fn unknown_flag_exits_1() {
    let out = run(&["sweep", "--config", "x.json", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_exits_0() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("sweep"));
}

#[test]
fn bad_sweep_range_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "run.json", abstract_coupler_config());
    let out = run(&[
        "sweep",
        "--config",
        config.to_str().unwrap(),
        "--gamma-min",
        "3",
        "--gamma-max",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn degeneracy_free_network_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "uniform.json", uniform_loss_config());
    let out = run(&["threshold", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3), "stderr: {}", stderr(&out));
}

#[test]
fn crossing_free_range_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "run.json", abstract_coupler_config());
    let out = run(&[
        "crossing",
        "--config",
        config.to_str().unwrap(),
        "--gamma-min",
        "0.2",
        "--gamma-max",
        "1.5",
    ]);
    assert_eq!(out.status.code(), Some(3), "stderr: {}", stderr(&out));
}
