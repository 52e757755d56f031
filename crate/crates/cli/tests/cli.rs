use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn ckgeom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ckgeom")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = ckgeom(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn phi(v: &Value) -> f64 {
    v["phi"].as_f64().unwrap()
}

#[test]
fn dist_examples() {
    let v = json(&["dist", "--space", "ee", "--p", "1,0,0", "--q", "0,1,0"]);
    assert!((phi(&v) - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    assert_eq!(v["level"], 1);
    assert_eq!(v["kind"], "real");
    assert_eq!(phi(&json(&["dist", "--space", "pe", "--p", "1,0,0", "--q", "1,3,4"])), 5.0);
    assert_eq!(phi(&json(&["dist", "--space", "pp", "--p", "1,0,0", "--q", "1,3,4"])), 3.0);
    // numeric signature with a leading minus
    let v = json(&["dist", "--space", "-1,1", "--p", "1,0,0", "--q", "[1.5430806348152437,1.1752011936438014,0]"]);
    assert!((phi(&v) - 1.0).abs() < 1e-12);
}

#[test]
fn dist_error_classes() {
    let out = ckgeom(&["dist", "--space", "he", "--p", "1,0,0", "--q", "1,1,0"]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["class"], "absolute");

    let out = ckgeom(&["dist", "--space", "he", "--p", "1,0,0", "--q", "1,2,0"]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["class"], "external");

    assert_eq!(ckgeom(&["dist", "--space", "ee", "--p", "1,x", "--q", "1,0,0"]).status.code(), Some(2));
    assert_eq!(ckgeom(&["dist", "--space", "ex", "--p", "1,0,0", "--q", "1,0,0"]).status.code(), Some(2));
    assert_eq!(ckgeom(&["dist", "--p", "1,0,0", "--q", "1,0,0"]).status.code(), Some(2));
    assert_eq!(ckgeom(&["dist", "--space", "ee", "--p", "1,0", "--q", "1,0,0"]).status.code(), Some(2));
}

#[test]
fn bulk_pairs_from_csv() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "p0,p1,p2,q0,q1,q2").unwrap();
    writeln!(f, "1,0,0,1,3,4").unwrap();
    writeln!(f, "1,0,0,1,0,0").unwrap();
    writeln!(f, "0,0,1,1,0,0").unwrap();
    let path = f.path().to_str().unwrap();

    let v = json(&["dist", "--space", "pe", "--pairs", path]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["phi"], 5.0);
    assert_eq!(rows[1]["phi"], 0.0);
    assert_eq!(rows[2]["error"], "on-absolute");

    let out = ckgeom(&["--output", "csv", "dist", "--space", "pe", "--pairs", path]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "row,phi,level,kind,error");
    assert_eq!(lines[1], "1,5.0,1,real,");
    assert_eq!(lines[3], "3,,,,on-absolute");
}

#[test]
fn angle_examples() {
    let v = json(&["angle", "--space", "ee", "--x", "[[1,0,0],[0,1,0]]", "--y", "[[1,0,0],[0,0,1]]"]);
    assert!((phi(&v) - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    assert_eq!(v["level"], 2);
    let turned = format!("[[1,0,0],[0,{},{}]]", 0.5, 3f64.sqrt() / 2.0);
    let v = json(&["angle", "--space", "pe", "--x", "[[1,0,0],[0,1,0]]", "--y", &turned]);
    assert!((phi(&v) - std::f64::consts::FRAC_PI_3).abs() < 1e-12);
    let v = json(&["angle", "--space", "pe", "--x", &turned, "--y", &turned]);
    assert_eq!(phi(&v), 0.0);
}

#[test]
fn triangle_examples() {
    let h = std::f64::consts::FRAC_PI_2.to_string();
    let v = json(&["triangle", "--space", "ee", "--b", &h, "--alpha", &h, "--c", &h, "--laws"]);
    for (_, r) in v["laws"]["residuals"].as_object().unwrap() {
        assert!(r.as_f64().unwrap() <= 1e-9);
    }
    let v = json(&["triangle", "--space", "pe", "--b", "4", "--alpha", &h, "--c", "3"]);
    assert!((v["measurements"]["a"]["phi"].as_f64().unwrap() - 5.0).abs() < 1e-12);

    let v = json(&["triangle", "--space", "he", "--random", "3", "--laws"]);
    assert_eq!(v["seed"], 3);
    assert_eq!(v["laws"]["variants"]["eq19"], "corrected");
    assert!(v["laws"]["alternates"]["eq20"].as_f64().unwrap() > 1e-6);

    let v = json(&["triangle", "--space", "pe", "--legs", "3,4"]);
    assert_eq!(v["c"], 5.0);
    // right triangles need k_2 = 1
    assert_eq!(ckgeom(&["triangle", "--space", "ph", "--legs", "3,4"]).status.code(), Some(3));
    assert_eq!(ckgeom(&["triangle", "--space", "ee"]).status.code(), Some(2));
}

#[test]
fn volume_examples() {
    let v = json(&["volume", "--space", "pe", "--vertices", "[[1,0,0],[1,3,0],[1,0,4]]", "--samples", "20000"]);
    assert_eq!(v["volume"], 6.0);
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{"signature": "ee", "vertices": [[1,0,0],[0,1,0],[0,0,1]], "samples": 100000, "seed": 2}}"#)
        .unwrap();
    let v = json(&["volume", "--vertices", f.path().to_str().unwrap()]);
    let (est, se) = (v["volume"].as_f64().unwrap(), v["stderr"].as_f64().unwrap());
    assert!((est - std::f64::consts::FRAC_PI_2).abs() <= 3.0 * se);
    assert_eq!(v["seed"], 2);
    assert_eq!(v["samples"], 100000);

    let flat = ckgeom(&["volume", "--space", "ee", "--vertices", "[[1,0,0],[1,0,0],[0,0,1]]"]);
    assert_eq!(flat.status.code(), Some(3));
}

#[test]
fn transform_examples() {
    let v = json(&["transform", "--space", "ee", "--givens", "0,1,1.5707963268", "--apply", "1,0,0"]);
    let p: Vec<f64> = serde_json::from_value(v["points"][0].clone()).unwrap();
    for (x, e) in p.iter().zip([0.0, 1.0, 0.0]) {
        assert!((x - e).abs() < 1e-9);
    }

    let v = json(&["transform", "--space", "hp", "--random", "7", "--validate"]);
    assert_eq!(v["validation"]["passed"], true);
    assert_eq!(v["validation"]["mode"], "sampled");

    // a matrix document round-trips through --matrix
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(&ckgeom(&["transform", "--space", "hp", "--random", "7"]).stdout).unwrap();
    let back = json(&["transform", "--space", "hp", "--matrix", f.path().to_str().unwrap(), "--validate"]);
    assert_eq!(back["matrix"], v["matrix"]);

    let out = ckgeom(&[
        "transform", "--space", "ee", "--matrix", r#"{"n":2,"matrix":[[1,0,0],[0,1,0],[0,0,2]]}"#, "--validate",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["validation"]["passed"], false);
    assert!(report["validation"]["worst_residual"].as_f64().unwrap() > 1.0);
}

#[test]
fn identical_flags_give_identical_bytes() {
    let runs: [&[&str]; 3] = [
        &["transform", "--space", "ee", "--random", "7"],
        &["triangle", "--space", "hh", "--random", "--seed", "4", "--laws"],
        &["volume", "--space", "ee", "--vertices", "[[1,0,0],[0,1,0],[0,0,1]]", "--samples", "50000"],
    ];
    for args in runs {
        let (a, b) = (ckgeom(args), ckgeom(args));
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
