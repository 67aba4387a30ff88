use std::process::{Command, Output};

use tribody::scan;

fn tribody(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tribody")).args(args).output().unwrap()
}

fn rows(out: &Output) -> Vec<scan::ScanRow> {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    scan::parse_csv(out.stdout.as_slice()).unwrap()
}

#[test]
fn tensor_point_perpendicular_spin() {
    let out = tribody(&[
        "point", "--interaction", "tensor", "--theta2", "4pi/6", "--theta3", "5pi/6", "--spin-theta", "pi/2",
        "--spin-phi", "pi/2",
    ]);
    let rep = rows(&out)[0].report.unwrap();
    assert!((rep.f3 - 1.0).abs() < 1e-9);
    assert!(rep.c12 < 1e-9 && rep.c13 < 1e-9 && rep.c23 < 1e-9);
}

#[test]
fn scalar_point_is_biseparable() {
    let out = tribody(&[
        "point", "--interaction", "scalar", "--couplings", "0.3,-1.2,0.8,0.4", "--theta2", "2.1", "--theta3",
        "1.7", "--spin-theta", "0.4", "--spin-phi", "5.0",
    ]);
    let rep = rows(&out)[0].report.unwrap();
    assert!((rep.c23 - 1.0).abs() < 1e-9);
    assert!(rep.f3 < 1e-9 && rep.c1_23 < 1e-9);
}

#[test]
fn vector_diagonal_point_has_no_f3() {
    let out = tribody(&[
        "point", "--interaction", "vector", "--theta2", "3pi/4", "--theta3", "3pi/4", "--spin-theta", "pi/2",
        "--spin-phi", "pi/2",
    ]);
    assert!(rows(&out)[0].report.unwrap().f3 < 1e-9);
}

#[test]
fn json_output_parses() {
    let out = tribody(&["scan-plane", "--interaction", "tensor", "--grid", "5", "--format", "json"]);
    assert!(out.status.success());
    let back = scan::parse_json(out.stdout.as_slice()).unwrap();
    assert_eq!(back.len(), 25);
    assert_eq!(back.iter().filter(|r| r.physical).count(), 15);
}

#[test]
fn spin_scan_starts_at_z() {
    let spin = tribody(&[
        "scan-spin", "--interaction", "vector", "--theta2", "2", "--theta3", "2.5", "--spin-axis", "x", "--samples",
        "12",
    ]);
    let point = tribody(&[
        "point", "--interaction", "vector", "--theta2", "2", "--theta3", "2.5", "--spin-theta", "0", "--spin-phi",
        "0",
    ]);
    let spin = rows(&spin);
    assert_eq!(spin.len(), 12);
    assert_eq!(spin[0].report, rows(&point)[0].report);
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plane.csv");
    let args = ["scan-plane", "--interaction", "vector", "--grid", "9"];
    let to_stdout = tribody(&args);
    let mut with_file = args.to_vec();
    with_file.extend(["--output", path.to_str().unwrap()]);
    assert!(tribody(&with_file).status.success());
    assert_eq!(std::fs::read(&path).unwrap(), to_stdout.stdout);
}

#[test]
fn exit_codes() {
    let bad_angle = tribody(&[
        "point", "--interaction", "scalar", "--theta2", "4", "--theta3", "1", "--spin-theta", "0", "--spin-phi", "0",
    ]);
    assert_eq!(bad_angle.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad_angle.stderr).starts_with("error:"));

    let zero = tribody(&["scan-plane", "--interaction", "tensor", "--couplings", "0,0,1,0", "--grid", "3"]);
    assert_eq!(zero.status.code(), Some(1));

    let io = tribody(&["scan-plane", "--interaction", "tensor", "--grid", "3", "--output", "/nonexistent/dir/x.csv"]);
    assert_eq!(io.status.code(), Some(2));

    let usage = tribody(&["point", "--interaction", "gluon"]);
    assert!(!usage.status.success());
}
