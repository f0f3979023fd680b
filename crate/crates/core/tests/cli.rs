use std::process::{Command, Output};

use galmag::cli::{CSV_HEADER, FRENET_CSV_HEADER};
use galmag::{solve_magnetic, solve_n_magnetic, C3Curve, KillingField, MagneticIc, NMagneticIc};

fn galmag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galmag"))
        .args(args)
        .env_remove("GALMAG_TOL")
        .output()
        .expect("failed to launch galmag")
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8(bytes.to_vec()).unwrap()
}

fn parse_csv(out: &str) -> Vec<Vec<f64>> {
    out.lines().skip(1).map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect()
}

#[test]
fn solve_example_3_1_green_curve() {
    let out = galmag(&["solve", "--mode", "magnetic", "--v", "0,1,1", "--ic", "y0=1,Y0=5,z0=4,Z0=3", "--range", "0:3.14159:0.01"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = text(&out.stdout);
    assert_eq!(stdout.lines().next(), Some(CSV_HEADER));
    let rows = parse_csv(&stdout);
    assert_eq!(rows.len(), 316);
    let curve = solve_magnetic(&KillingField::new(0.0, 1.0, 1.0), &MagneticIc { y0: 1.0, dy0: 5.0, z0: 4.0, dz0: 3.0 });
    for r in &rows {
        let s = r[0];
        assert_eq!(r[1], s);
        // 17 significant digits reproduce the closed form bit for bit
        let p = curve.eval(s, 0);
        assert_eq!((r[2], r[3]), (p.x2, p.x3));
        assert!((r[2] - (0.5 * s * s + 5.0 * s + 1.0)).abs() < 1e-12);
    }
    let stderr = text(&out.stderr);
    assert!(stderr.contains("case: Magnetic-Isotropic"));
    assert!(stderr.contains("kappa: 1.4142135623730951e0"));
}

#[test]
fn solve_example_4_1_json() {
    let out = galmag(&[
        "solve", "--mode", "nmagnetic", "--v", "0,0,0", "--ic", "y0=4,Y0=3,T0=1,z0=1,Z0=2,U0=1", "--range", "0:5:0.01",
        "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["case"], "NMag-i");
    assert!((doc["kappa"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-15);
    assert_eq!(doc["tau"].as_f64(), Some(0.0));
    assert!(doc["helix"].is_null());
    let samples = doc["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 501);
    let last = samples.last().unwrap().as_array().unwrap();
    let v: Vec<f64> = last.iter().map(|x| x.as_f64().unwrap()).collect();
    assert_eq!(v[0], 5.0);
    assert!((v[2] - (12.5 + 15.0 + 4.0)).abs() < 1e-12);
    assert!((v[3] - (12.5 + 10.0 + 1.0)).abs() < 1e-12);
}

#[test]
fn helix_json_carries_axis() {
    let out = galmag(&["solve", "--mode", "magnetic", "--v", "1,0,0", "--ic", "Z0=1", "--range", "0:6.283185307179586", "--samples", "50", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["case"], "Magnetic-NonIsotropic");
    assert_eq!(doc["helix"]["r"].as_f64(), Some(1.0));
    assert_eq!(doc["helix"]["line"]["b"].as_f64(), Some(-1.0));
    assert_eq!(doc["tau"].as_f64(), Some(1.0));
    assert!(text(&out.stderr).contains("helix.r: 1.0000000000000000e0"));
}

#[test]
fn incompatible_ic_exits_2() {
    let out = galmag(&["solve", "--mode", "nmagnetic", "--v", "0,1,2", "--ic", "y0=0,Y0=0,z0=0,Z0=0,T0=1,U0=1", "--range", "0:1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let stderr = text(&out.stderr);
    assert_eq!(stderr.lines().count(), 1);
    assert!(stderr.starts_with("error: incompatible-ic:"));
}

#[test]
fn zero_curvature_ic_exits_2() {
    let out = galmag(&["solve", "--mode", "nmagnetic", "--v", "1,0,0", "--ic", "y0=1", "--range", "0:1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).starts_with("error: zero-curvature:"));
}

#[test]
fn bad_flags_exit_2() {
    for args in [
        vec!["solve", "--mode", "magnetic", "--range", "1:0"],
        vec!["solve", "--mode", "magnetic", "--range", "0:1", "--ic", "Y0=abc"],
        vec!["solve", "--range", "0:1"],
        vec!["launch"],
    ] {
        let out = galmag(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(text(&out.stderr).lines().last().unwrap().starts_with("error: "));
    }
}

#[test]
fn verify_example_3_1_passes() {
    let out = galmag(&["verify", "--mode", "magnetic", "--v", "0,1,1", "--ic", "y0=1,Y0=5,z0=4,Z0=3", "--range", "0:3.141592653589793", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", text(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["pass"], true);
    assert!(doc["max_deviation"].as_f64().unwrap() < 1e-10);
}

#[test]
fn verify_helix_reports_radius_and_torsion() {
    let out = galmag(&["verify", "--mode", "magnetic", "--v", "1,0,0", "--ic", "Z0=1", "--range", "0:6.283185307179586"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = text(&out.stdout);
    assert!(stdout.contains("r: 1.0000000000000000e0"));
    assert!(stdout.contains("tau: 1.0000000000000000e0"));
    assert!(stdout.contains("status: pass"));
}

#[test]
fn verify_with_zero_tolerance_fails() {
    let out = galmag(&["verify", "--mode", "magnetic", "--v", "1,0,0", "--ic", "Z0=1", "--range", "0:6.283185307179586", "--tol", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(text(&out.stdout).contains("status: fail"));
}

#[test]
fn tolerance_from_environment() {
    let args = ["verify", "--mode", "nmagnetic", "--v", "0.5,0,0", "--ic", "T0=1", "--range", "0:25"];
    let out = Command::new(env!("CARGO_BIN_EXE_galmag")).args(args).env("GALMAG_TOL", "0").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_galmag")).args(args).env("GALMAG_TOL", "1e-6").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn frenet_table_for_helix() {
    let out = galmag(&["frenet", "--mode", "magnetic", "--v", "1,0,0", "--ic", "Z0=1", "--range", "0:6", "--samples", "25"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = text(&out.stdout);
    assert_eq!(stdout.lines().next(), Some(FRENET_CSV_HEADER));
    for r in parse_csv(&stdout) {
        assert_eq!(r.len(), 12);
        assert!((r[10] - 1.0).abs() < 1e-12);
        assert!((r[11] - 1.0).abs() < 1e-12);
    }
}

#[test]
fn frenet_table_for_parabola() {
    let out = galmag(&["frenet", "--mode", "magnetic", "--v", "0,1,1", "--ic", "y0=1,Y0=5,z0=4,Z0=3", "--range", "0:3:0.5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for row in doc["samples"].as_array().unwrap() {
        assert_eq!(row["kappa"].as_f64(), Some(2f64.sqrt()));
        assert_eq!(row["tau"].as_f64(), Some(0.0));
    }
}

#[test]
fn frenet_on_straight_line_exits_2() {
    let out = galmag(&["frenet", "--mode", "magnetic", "--v", "0,0,0", "--ic", "Y0=1", "--range", "0.5:2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(text(&out.stderr).contains("error: zero-curvature: curvature vanishes at s = 0.5"));
}

#[test]
fn output_file_written() {
    let dir = std::env::temp_dir().join(format!("galmag-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("nmag.csv");
    let out = galmag(&[
        "solve", "--mode", "nmagnetic", "--v", "1,0,0", "--ic", "T0=1", "--range", "0:3:0.1", "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    let curve = solve_n_magnetic(&KillingField::new(1.0, 0.0, 0.0), &NMagneticIc { ddy0: 1.0, ..Default::default() }).unwrap();
    let rows = parse_csv(&body);
    assert_eq!(rows.len(), 31);
    for r in rows {
        let p = curve.eval(r[0], 0);
        assert_eq!((r[2], r[3]), (p.x2, p.x3));
    }
    std::fs::remove_dir_all(dir).ok();
}
