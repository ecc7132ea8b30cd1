//! End-to-end checks of the installed binary: exit codes, diagnostics,
//! determinism, and metadata round-trips.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_microdyn"))
}

fn write_cfg(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn homogeneous_sweep_writes_data_and_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(dir.path(), "h.cfg", "[sweep]\nvalues = 0.1, 0.2, 0.5\n");
    let out = bin()
        .args(["homogeneous", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr_of(&out));
    assert!(stdout_of(&out).contains("3 rows"));

    let csv = fs::read_to_string(dir.path().join("homogeneous.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "b_e,delta_phi_em_plus,delta_phi_k_plus,delta_rho,delta_u_plus,delta_u_minus,delta_phase_plus"
    );
    assert_eq!(lines.count(), 3);

    let meta = fs::read_to_string(dir.path().join("homogeneous.meta.txt")).unwrap();
    assert!(meta.contains("[provenance]"), "{meta}");
    assert!(meta.contains("resolution = 256"), "{meta}");
}

#[test]
fn nonpositive_tau_exits_two_and_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(dir.path(), "bad.cfg", "[field]\ntau = -2.0\n");
    let out = bin()
        .args(["homogeneous", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("tau"), "{}", stderr_of(&out));
}

#[test]
fn missing_config_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["homogeneous", "--config"])
        .arg(dir.path().join("nope.cfg"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("nope.cfg"), "{}", stderr_of(&out));
}

#[test]
fn unknown_key_exits_two_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(dir.path(), "bad.cfg", "[field]\nb_extt = 0.1\n");
    let out = bin()
        .args(["homogeneous", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_of(&out);
    assert!(err.contains("field.b_extt"), "{err}");
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn scenario_mismatch_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(dir.path(), "c.cfg", "[run]\nscenario = coupled\n");
    let out = bin()
        .args(["homogeneous", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr_of(&out).contains("run.scenario"),
        "{}",
        stderr_of(&out)
    );
}

#[test]
fn unstable_coupled_step_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        dir.path(),
        "c.cfg",
        "[grid]\nnx = 64\n[numerics]\nsteps = 3\ndt = 10.0\n",
    );
    let out = bin()
        .args(["coupled", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr_of(&out).contains("stability"),
        "{}",
        stderr_of(&out)
    );
}

#[test]
fn fully_escaping_beam_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    // gradient strong enough that every particle leaves the z-range inside
    // the magnet, so no deflection statistic exists
    let cfg = write_cfg(dir.path(), "c.cfg", "[magnet]\ngradient = 100.0\n");
    let out = bin()
        .args(["compare", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_of(&out).contains("escaped"), "{}", stderr_of(&out));
}

#[test]
fn seeded_beam_reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        dir.path(),
        "sg.cfg",
        "[run]\nseed = 42\n[beam]\nn_particles = 64\n",
    );
    let run = |out_name: &str| {
        let out_dir = dir.path().join(out_name);
        let out = bin()
            .args(["stern-gerlach", "--config"])
            .arg(&cfg)
            .arg("--out")
            .arg(&out_dir)
            .arg("--quiet")
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", stderr_of(&out));
        fs::read(out_dir.join("stern-gerlach.csv")).unwrap()
    };
    assert_eq!(run("a"), run("b"));
}

#[test]
fn seed_override_changes_the_sampled_beam() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(dir.path(), "sg.cfg", "[beam]\nn_particles = 64\n");
    let run = |seed: &str, out_name: &str| {
        let out_dir = dir.path().join(out_name);
        let out = bin()
            .args(["stern-gerlach", "--config"])
            .arg(&cfg)
            .arg("--out")
            .arg(&out_dir)
            .args(["--seed", seed, "--quiet"])
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", stderr_of(&out));
        fs::read(out_dir.join("stern-gerlach.csv")).unwrap()
    };
    assert_ne!(run("1", "a"), run("2", "b"));
}

#[test]
fn metadata_file_reproduces_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(
        dir.path(),
        "sg.cfg",
        "[run]\nseed = 7\n[magnet]\ngradient = 0.05\n[beam]\nn_particles = 32\n",
    );
    let first_dir = dir.path().join("first");
    let out = bin()
        .args(["stern-gerlach", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&first_dir)
        .arg("--quiet")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr_of(&out));

    let second_dir = dir.path().join("second");
    let out = bin()
        .args(["stern-gerlach", "--config"])
        .arg(first_dir.join("stern-gerlach.meta.txt"))
        .arg("--out")
        .arg(&second_dir)
        .arg("--quiet")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr_of(&out));

    assert_eq!(
        fs::read(first_dir.join("stern-gerlach.csv")).unwrap(),
        fs::read(second_dir.join("stern-gerlach.csv")).unwrap()
    );
}

#[test]
fn quiet_flag_silences_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(dir.path(), "h.cfg", "");
    let out = bin()
        .args(["homogeneous", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path())
        .arg("--quiet")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr_of(&out));
    assert!(stdout_of(&out).is_empty());
}

#[test]
fn emitted_numbers_round_trip_to_the_same_bits() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(dir.path(), "h.cfg", "[sweep]\nvalues = 0.1, 0.37, 0.5\n");
    let out = bin()
        .args(["homogeneous", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path())
        .arg("--quiet")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr_of(&out));
    let csv = fs::read_to_string(dir.path().join("homogeneous.csv")).unwrap();
    let mut cells = 0;
    for line in csv.lines().skip(1) {
        for cell in line.split(',') {
            let value = microdyn::numfmt::parse_full(cell).unwrap();
            assert_eq!(microdyn::numfmt::format_full(value), cell);
            cells += 1;
        }
    }
    assert_eq!(cells, 21);
}

#[test]
fn compare_reports_the_two_exponents() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_cfg(dir.path(), "c.cfg", "[magnet]\ngradient = 0.01\n");
    let out = bin()
        .args(["compare", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr_of(&out));
    let meta = fs::read_to_string(dir.path().join("compare.meta.txt")).unwrap();
    let grab = |key: &str| -> f64 {
        meta.lines()
            .find_map(|l| l.strip_prefix(&format!("{key} = ")))
            .unwrap_or_else(|| panic!("missing {key} in metadata"))
            .parse()
            .unwrap()
    };
    assert!((grab("exponent_md") - 2.0).abs() < 0.01);
    assert!((grab("exponent_qm") - 1.0).abs() < 0.01);
    assert!(grab("exponent_separation") >= 0.9);
}
