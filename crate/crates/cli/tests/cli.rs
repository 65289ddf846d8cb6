//! End-to-end tests of the `nctorus` binary: exit codes, output formats,
//! and byte-level reproducibility.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use nctorus_core::{io, LatticeElement, Report, ThetaMatrix};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nctorus"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn theta_json(t: f64) -> String {
    format!(r#"{{"n": 2, "entries": [[0.0, {t}], [{}, 0.0]]}}"#, -t)
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn gen_monomial_matches_schema_and_is_deterministic() {
    let out = run(&["gen", "--kind", "monomial", "--p", "1,0"]);
    assert_eq!(code(&out), 0);
    let text = stdout_str(&out);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(
        v,
        serde_json::json!({"n": 2, "terms": [{"p": [1, 0], "re": 1.0, "im": 0.0}]})
    );
    let again = run(&["gen", "--kind", "monomial", "--p", "1,0"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn gen_symmetrized_splits_the_coefficient() {
    let out = run(&["gen", "--kind", "symmetrized", "--p", "1,0"]);
    assert_eq!(code(&out), 0);
    let e: LatticeElement = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(e.num_terms(), 2);
    let c = e.coefficient(&nctorus_core::LatticePoint::new(vec![1, 0]));
    assert_eq!(c.re, 0.5);
    let c = e.coefficient(&nctorus_core::LatticePoint::new(vec![-1, 0]));
    assert_eq!(c.re, 0.5);
}

#[test]
fn gen_random_is_seeded() {
    let a = run(&["gen", "--kind", "random", "--n", "2", "--seed", "7"]);
    let b = run(&["gen", "--kind", "random", "--n", "2", "--seed", "7"]);
    let c = run(&["gen", "--kind", "random", "--n", "2", "--seed", "8"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let e: LatticeElement = serde_json::from_str(&stdout_str(&a)).unwrap();
    assert!(e.num_terms() <= 5);

    let even = run(&[
        "gen", "--kind", "random", "--n", "2", "--seed", "7", "--parity", "even",
    ]);
    let e: LatticeElement = serde_json::from_str(&stdout_str(&even)).unwrap();
    assert!(e.is_even(0.0));
}

#[test]
fn gen_rejects_inconsistent_dimension() {
    let out = run(&["gen", "--kind", "monomial", "--p", "1,0", "--n", "3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn axioms_pass_and_reproduce() {
    let dir = tempfile::tempdir().unwrap();
    let theta = write(dir.path(), "theta.json", &theta_json(0.5));

    let args = [
        "axioms",
        "--theta",
        theta.to_str().unwrap(),
        "--trials",
        "50",
        "--seed",
        "42",
    ];
    let out = run(&args);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report: Report = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert!(report.pass);
    assert_eq!(report.seed, 42);

    let again = run(&args);
    assert_eq!(out.stdout, again.stdout, "same seed must reproduce bytes");

    // Zero deformation also passes.
    let zero = write(dir.path(), "zero.json", &theta_json(0.0));
    let out = run(&["axioms", "--theta", zero.to_str().unwrap(), "--trials", "30"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn axioms_zero_tolerance_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let theta = write(dir.path(), "theta.json", &theta_json(0.5));
    let out = run(&[
        "axioms",
        "--theta",
        theta.to_str().unwrap(),
        "--trials",
        "30",
        "--tol",
        "0",
    ]);
    assert_eq!(code(&out), 1);
    let report: Report = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert!(!report.pass);
    assert!(report.laws.iter().any(|l| l.max_residual > 0.0));
}

#[test]
fn malformed_theta_exits_two_with_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let broken = write(dir.path(), "broken.json", r#"{"n": 2, "entries": [[0.0, 0.5"#);
    let out = run(&["axioms", "--theta", broken.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(!out.stderr.is_empty());
    assert!(out.stdout.is_empty(), "stdout must carry data only");

    let missing = dir.path().join("nope.json");
    let out = run(&["axioms", "--theta", missing.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn morita_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let eighth = write(dir.path(), "eighth.json", &theta_json(0.125));
    let out = run(&["morita", "--theta", eighth.to_str().unwrap(), "--j", "1", "--k", "2"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["pass"], serde_json::json!(true));
    assert_eq!(v["all_degenerate"], serde_json::json!(false));
    let cert = &v["certificates"][0];
    assert!((cert["coefficient_re"].as_f64().unwrap() - 2.0).abs() <= 1e-12);
    assert!(cert["coefficient_im"].as_f64().unwrap().abs() <= 1e-12);
    assert!(cert["residual"].as_f64().unwrap() <= 1e-10);

    let quarter = write(dir.path(), "quarter.json", &theta_json(0.25));
    let out = run(&["morita", "--theta", quarter.to_str().unwrap(), "--j", "1", "--k", "2"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["all_degenerate"], serde_json::json!(true));
    assert_eq!(v["certificates"][0]["degenerate"], serde_json::json!(true));
}

#[test]
fn morita_all_pairs_on_four_torus() {
    let dir = tempfile::tempdir().unwrap();
    let rows = [
        [0.0, 0.1, -0.2, 0.31],
        [-0.1, 0.0, 0.17, -0.05],
        [0.2, -0.17, 0.0, 0.4],
        [-0.31, 0.05, -0.4, 0.0],
    ];
    let theta = serde_json::json!({"n": 4, "entries": rows});
    let path = write(dir.path(), "theta4.json", &theta.to_string());
    let out = run(&["morita", "--theta", path.to_str().unwrap(), "--all-pairs"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["certificates"].as_array().unwrap().len(), 6);
}

#[test]
fn morita_equal_axes_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let theta = write(dir.path(), "theta.json", &theta_json(0.125));
    let out = run(&["morita", "--theta", theta.to_str().unwrap(), "--j", "1", "--k", "1"]);
    assert_eq!(code(&out), 2);
}

fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let cov: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let var: f64 = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    cov / var
}

#[test]
fn semiclassical_sweep_decays_quadratically() {
    let dir = tempfile::tempdir().unwrap();
    let theta = write(dir.path(), "theta.json", &theta_json(0.5));
    let f = write(
        dir.path(),
        "f.json",
        r#"{"n":2,"terms":[{"p":[1,0],"re":1,"im":0}]}"#,
    );
    let g = write(
        dir.path(),
        "g.json",
        r#"{"n":2,"terms":[{"p":[0,1],"re":1,"im":0}]}"#,
    );
    let out_csv = dir.path().join("sweep.csv");
    let out = run(&[
        "semiclassical",
        "--theta",
        theta.to_str().unwrap(),
        "--f",
        f.to_str().unwrap(),
        "--g",
        g.to_str().unwrap(),
        "--hbar-grid",
        "1e-1:1e-6:logsteps=11",
        "--out",
        out_csv.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let rows = io::parse_semiclassical_csv(&std::fs::read_to_string(&out_csv).unwrap()).unwrap();
    assert_eq!(rows.len(), 11);
    let tail: Vec<(f64, f64)> = rows[rows.len() - 5..].to_vec();
    let slope = log_log_slope(&tail);
    assert!((slope - 2.0).abs() <= 0.1, "slope {slope}");

    // Both scale modes run; rescaled decays the same way.
    let out = run(&[
        "semiclassical",
        "--theta",
        theta.to_str().unwrap(),
        "--f",
        f.to_str().unwrap(),
        "--g",
        g.to_str().unwrap(),
        "--hbar-grid",
        "1e-1:1e-6:logsteps=11",
        "--scale",
        "rescaled",
    ]);
    assert_eq!(code(&out), 0);
    let rows = io::parse_semiclassical_csv(&stdout_str(&out)).unwrap();
    let slope = log_log_slope(&rows[rows.len() - 5..]);
    assert!((slope - 2.0).abs() <= 0.1, "rescaled slope {slope}");
}

#[test]
fn semiclassical_equal_factors_give_zero_residuals() {
    let dir = tempfile::tempdir().unwrap();
    let theta = write(dir.path(), "theta.json", &theta_json(0.5));
    let f = write(
        dir.path(),
        "f.json",
        r#"{"n":2,"terms":[{"p":[1,0],"re":1,"im":0},{"p":[0,1],"re":0.5,"im":0.5}]}"#,
    );
    let out = run(&[
        "semiclassical",
        "--theta",
        theta.to_str().unwrap(),
        "--f",
        f.to_str().unwrap(),
        "--g",
        f.to_str().unwrap(),
        "--hbar-grid",
        "1e-1:1e-3:logsteps=5",
    ]);
    assert_eq!(code(&out), 0);
    let rows = io::parse_semiclassical_csv(&stdout_str(&out)).unwrap();
    assert!(rows.iter().all(|r| r.1 == 0.0));

    // Zero deformation likewise.
    let zero = write(dir.path(), "zero.json", &theta_json(0.0));
    let g = write(
        dir.path(),
        "g.json",
        r#"{"n":2,"terms":[{"p":[0,1],"re":1,"im":0}]}"#,
    );
    let out = run(&[
        "semiclassical",
        "--theta",
        zero.to_str().unwrap(),
        "--f",
        f.to_str().unwrap(),
        "--g",
        g.to_str().unwrap(),
        "--hbar-grid",
        "1e-1:1e-3:logsteps=5",
    ]);
    assert_eq!(code(&out), 0);
    let rows = io::parse_semiclassical_csv(&stdout_str(&out)).unwrap();
    assert!(rows.iter().all(|r| r.1 == 0.0));
}

#[test]
fn semiclassical_rejects_grids_touching_zero() {
    let dir = tempfile::tempdir().unwrap();
    let theta = write(dir.path(), "theta.json", &theta_json(0.5));
    let f = write(
        dir.path(),
        "f.json",
        r#"{"n":2,"terms":[{"p":[1,0],"re":1,"im":0}]}"#,
    );
    let out = run(&[
        "semiclassical",
        "--theta",
        theta.to_str().unwrap(),
        "--f",
        f.to_str().unwrap(),
        "--g",
        f.to_str().unwrap(),
        "--hbar-grid",
        "1e-1:0:logsteps=5",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn norm_sweep_of_a_monomial() {
    let dir = tempfile::tempdir().unwrap();
    let theta = write(dir.path(), "theta.json", &theta_json(0.5));
    let e = write(
        dir.path(),
        "e.json",
        r#"{"n":2,"terms":[{"p":[1,0],"re":1,"im":0}]}"#,
    );
    let out = run(&[
        "norm",
        "--theta",
        theta.to_str().unwrap(),
        "--element",
        e.to_str().unwrap(),
        "--radius-range",
        "1..6",
    ]);
    assert_eq!(code(&out), 0);
    let rows = io::parse_norm_sweep_csv(&stdout_str(&out)).unwrap();
    assert_eq!(rows.len(), 6);
    for row in &rows {
        assert!((row.norm_lower - 1.0).abs() <= 1e-8);
        assert_eq!(row.norm_upper, 1.0);
        assert_eq!(row.hbar, 1.0);
    }
}

#[test]
fn norm_sweep_shifted_identity_climbs_to_two() {
    let dir = tempfile::tempdir().unwrap();
    let theta = write(dir.path(), "theta.json", &theta_json(0.5));
    let e = write(
        dir.path(),
        "e.json",
        r#"{"n":2,"terms":[{"p":[0,0],"re":1,"im":0},{"p":[1,0],"re":1,"im":0}]}"#,
    );
    let out = run(&[
        "norm",
        "--theta",
        theta.to_str().unwrap(),
        "--element",
        e.to_str().unwrap(),
        "--radius-range",
        "1..8",
    ]);
    assert_eq!(code(&out), 0);
    let rows = io::parse_norm_sweep_csv(&stdout_str(&out)).unwrap();
    for pair in rows.windows(2) {
        assert!(pair[1].norm_lower + 1e-12 >= pair[0].norm_lower);
    }
    let last = rows.last().unwrap();
    assert!(last.norm_lower > 1.95 && last.norm_lower <= 2.0 + 1e-9);
    assert_eq!(last.norm_upper, 2.0);
}

#[test]
fn norm_of_zero_element_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let theta = write(dir.path(), "theta.json", &theta_json(0.5));
    let e = write(dir.path(), "zero.json", r#"{"n":2,"terms":[]}"#);
    let out = run(&[
        "norm",
        "--theta",
        theta.to_str().unwrap(),
        "--element",
        e.to_str().unwrap(),
        "--radius-range",
        "1..3",
    ]);
    assert_eq!(code(&out), 0);
    let rows = io::parse_norm_sweep_csv(&stdout_str(&out)).unwrap();
    assert!(rows.iter().all(|r| r.norm_lower == 0.0 && r.norm_upper == 0.0));
}

#[test]
fn window_cap_env_var_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let theta = write(dir.path(), "theta.json", &theta_json(0.5));
    let e = write(
        dir.path(),
        "e.json",
        r#"{"n":2,"terms":[{"p":[1,0],"re":1,"im":0}]}"#,
    );
    let out = bin()
        .args([
            "norm",
            "--theta",
            theta.to_str().unwrap(),
            "--element",
            e.to_str().unwrap(),
            "--radius-range",
            "1..6",
        ])
        .env("NCT_WINDOW_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn theta_output_round_trips_through_loader() {
    let dir = tempfile::tempdir().unwrap();
    let theta_path = write(dir.path(), "theta.json", &theta_json(0.5));
    let loaded: ThetaMatrix = io::load_theta(&theta_path).unwrap();
    assert_eq!(loaded.n(), 2);
    assert_eq!(loaded.entry(0, 1), 0.5);

    // An emitted report parses back through serde.
    let out = run(&[
        "axioms",
        "--theta",
        theta_path.to_str().unwrap(),
        "--trials",
        "20",
    ]);
    let report: Report = serde_json::from_str(&stdout_str(&out)).unwrap();
    let re_emitted = io::to_json_string(&report).unwrap();
    assert_eq!(re_emitted, stdout_str(&out));
}

#[test]
fn out_files_are_written_atomically_in_place() {
    let dir = tempfile::tempdir().unwrap();
    let theta = write(dir.path(), "theta.json", &theta_json(0.125));
    let target = dir.path().join("cert.json");
    let out = run(&[
        "morita",
        "--theta",
        theta.to_str().unwrap(),
        "--j",
        "1",
        "--k",
        "2",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(v["pass"], serde_json::json!(true));
    assert!(!dir.path().join("cert.json.tmp").exists());
}
