use std::fs;
use std::process::{Command, Output};

fn acalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_acalc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_adiff_prints_derivative() {
    let o = acalc(&["check-adiff", "--algebra", "hyperbolic", "--fn", "zeta3", "--point", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("derivative: (15, 12)"), "{}", stdout(&o));
}

#[test]
fn finite_difference_mode_agrees() {
    let o = acalc(&["check-adiff", "-a", "H", "-f", "zeta3", "-p", "1,2", "--fd", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let d = v["derivative"].as_array().unwrap();
    assert!((d[0].as_f64().unwrap() - 15.0).abs() < 1e-6 && (d[1].as_f64().unwrap() - 12.0).abs() < 1e-6);
}

#[test]
fn conjugate_is_rejected_with_exit_one() {
    let o = acalc(&["check-adiff", "-a", "complex", "-f", "zbar2", "-p", "0.5,-1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("differentiable: no"));
}

#[test]
fn trihyperbolic_laplace_equations() {
    let o = acalc(&["gen-laplace", "--algebra", "trihyperbolic"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for eq in ["Φ_xx - Φ_yz = 0", "Φ_xy - Φ_zz = 0", "Φ_xz - Φ_yy = 0"] {
        assert!(out.contains(eq), "{out}");
    }
}

#[test]
fn non_associative_file_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.alg");
    fs::write(
        &path,
        "name = \"broken\"\ndim = 3\nunity = [1, 0, 0]\ntable = [\n  [[1, 0, 0], [0, 1, 0], [0, 0, 1]],\n  [[0, 1, 0], [0, 0, 1], [0, 1, 0]],\n  [[0, 0, 1], [0, 1, 0], [0, 0, 0]],\n]\n",
    )
    .unwrap();
    let o = acalc(&["validate-algebra", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("associativ"), "{err}");
}

#[test]
fn parse_errors_report_position() {
    let o = acalc(&["check-adiff", "-a", "H", "-f", "x1; x1*(x2", "-p", "1,1"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("component 2") && err.contains("position 6"), "{err}");
}

#[test]
fn reports_are_deterministic() {
    let args = ["d2-probe", "-a", "C", "-f", "zeta2", "-p", "0.3,0.4", "-p", "-1,2", "--seed", "5", "--format", "json"];
    let a = acalc(&args);
    let mut with_jobs = args.to_vec();
    with_jobs.extend(["--jobs", "3"]);
    let b = acalc(&with_jobs);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn dalembert_demo_passes() {
    for c in ["1", "2"] {
        let o = acalc(&["demo-dalembert", "--c", c]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    }
}

#[test]
fn function_and_curve_files() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("sq.toml");
    fs::write(&f, "algebra = \"hyperbolic\"\npoly = [[0, 0], [0, 0], [3, 0]]\n").unwrap();
    let c = dir.path().join("arc.toml");
    fs::write(&c, "[parametric]\ncomponents = [\"cos(t)\", \"sin(t)\"]\nt = [0, \"pi/2\"]\n").unwrap();
    let o = acalc(&["integrate", "--fn", f.to_str().unwrap(), "--curve", c.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // (0 + j)^3 - 1 = j - 1 in the hyperbolic numbers
    let got: Vec<f64> = v["integral"]["value"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert!((got[0] + 1.0).abs() < 1e-9 && (got[1] - 1.0).abs() < 1e-9, "{got:?}");
}

#[test]
fn latex_only_for_equations() {
    let o = acalc(&["gen-cr", "-a", "dual", "--format", "latex"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("v_{y} - u_{x} = 0"));
    let o = acalc(&["classify", "-a", "dual", "-p", "1,0", "--format", "latex"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn isomorphism_commands() {
    let o = acalc(&["verify-iso", "rxr-hyperbolic", "--samples", "50"]);
    assert_eq!(o.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("bad.toml");
    fs::write(&m, "source = \"complex\"\ntarget = \"complex\"\nmatrix = [[1, 1], [0, 0]]\n").unwrap();
    let o = acalc(&["verify-iso", m.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = acalc(&["transfer", "wave2", "-f", "zeta2", "-p", "1,0"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn every_subcommand_has_help() {
    for cmd in [
        "validate-algebra",
        "classify",
        "invertible-basis",
        "check-adiff",
        "derivative",
        "wirtinger",
        "gen-cr",
        "gen-laplace",
        "taylor",
        "integrate",
        "d2-probe",
        "verify-iso",
        "transfer",
        "demo-dalembert",
    ] {
        let o = acalc(&[cmd, "--help"]);
        assert_eq!(o.status.code(), Some(0), "{cmd}");
        assert!(stdout(&o).contains("Usage"), "{cmd}");
    }
}

#[test]
fn bad_flags_are_input_errors() {
    assert_eq!(acalc(&["classify", "-a", "nonsense", "-p", "1"]).status.code(), Some(2));
    assert_eq!(acalc(&["check-adiff", "-a", "H", "-f", "zeta", "-p", "1,2", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(acalc(&["gen-laplace", "-a", "H", "--check", "zeta2", "--grid", "0:1:0"]).status.code(), Some(2));
}
