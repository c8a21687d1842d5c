use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn heis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heis")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = heis(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    heis(args).status.code().unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<f64>> {
    text.lines().skip(1).map(|l| l.split(',').map(|t| t.parse().unwrap()).collect()).collect()
}

#[test]
fn geodesic_csv() {
    let text = stdout(&["geodesic", "--gamma", "0.5", "--phi", "0", "--smax", "6.2832", "--n", "100"]);
    assert_eq!(text.lines().next(), Some("s,x,y,z,alpha,beta,gamma"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 101);
    let last = rows.last().unwrap();
    assert!(last[1].abs() < 1e-4 && last[2].abs() < 1e-4);
    assert!((last[3] - 2.5 * std::f64::consts::PI).abs() < 1e-3);
    // 17 significant digits
    let first_x = text.lines().nth(2).unwrap().split(',').nth(1).unwrap();
    assert_eq!(first_x.split('e').next().unwrap().replace(['.', '-'], "").len(), 17);
}

#[test]
fn geodesic_special_cases() {
    let rows = csv_rows(&stdout(&["geodesic", "--gamma", "1", "--smax", "3", "--n", "6"]));
    assert!(rows.iter().all(|r| r[1] == 0.0 && r[2] == 0.0 && r[3] == r[0]));
    let rows = csv_rows(&stdout(&["geodesic", "--gamma", "0", "--phi", "0", "--smax", "3", "--n", "6"]));
    assert!(rows.iter().all(|r| r[3] == 0.0 && r[2] == 0.0));
    let rows = csv_rows(&stdout(&["geodesic", "--gamma", "0", "--smax", "1", "--n", "2", "--base", "-1,2,0"]));
    assert_eq!(&rows[0][1..4], &[-1.0, 2.0, 0.0]);
}

#[test]
fn geodesic_other_formats() {
    let obj = stdout(&["geodesic", "--gamma", "0.3", "--smax", "2", "--n", "4", "--format", "obj"]);
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 5);
    assert!(obj.contains("\nl 1 2 3 4 5\n"));
    let jsonl = stdout(&["geodesic", "--gamma", "0.3", "--smax", "2", "--n", "4", "--format", "jsonl"]);
    assert_eq!(jsonl.lines().count(), 5);
    let ply = stdout(&["geodesic", "--gamma", "0.3", "--smax", "2", "--n", "4", "--format", "ply"]);
    assert!(ply.starts_with("ply\n") && ply.contains("element edge 4"));
}

#[test]
fn sphere_obj_and_ply() {
    let obj = stdout(&["sphere", "--radius", "1", "--nphi", "8", "--ngamma", "5"]);
    let v = obj.lines().filter(|l| l.starts_with("v ")).count();
    let f: Vec<&str> = obj.lines().filter(|l| l.starts_with("f ")).collect();
    assert_eq!(v, 26);
    assert_eq!(f.len(), 48);
    let first_f = obj.lines().position(|l| l.starts_with("f ")).unwrap();
    assert_eq!(first_f, v, "vertices come first");
    let ply = stdout(&["sphere", "--radius", "1", "--nphi", "8", "--ngamma", "5", "--format", "ply"]);
    assert!(ply.contains("property double gamma\nproperty double phi\nproperty double s\n"));
}

#[test]
fn sphere_half_and_round() {
    let obj = stdout(&["sphere", "--radius", "5", "--half", "--nphi", "32", "--ngamma", "17"]);
    for l in obj.lines().filter(|l| l.starts_with("v ")) {
        let y: f64 = l.split(' ').nth(2).unwrap().parse().unwrap();
        assert!(y <= 1e-12);
    }
    let obj = stdout(&["sphere", "--radius", "0.01"]);
    for l in obj.lines().filter(|l| l.starts_with("v ")) {
        let c: Vec<f64> = l[2..].split(' ').map(|t| t.parse().unwrap()).collect();
        let n = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
        assert!((n - 0.01).abs() < 1e-5);
    }
}

#[test]
fn distance_values() {
    assert_eq!(stdout(&["distance", "--metric", "cygan", "0,0,0", "3,4,0"]), "5\n");
    assert_eq!(stdout(&["distance", "--metric", "cygan", "0,0,0", "0,0,9"]), "3\n");
    let d: f64 = stdout(&["distance", "--metric", "riemannian", "0,0,0", "1,0,0"]).trim().parse().unwrap();
    assert!((d - 1.0).abs() < 1e-6);
    assert_eq!(stdout(&["distance", "0.3,-1,2", "0.3,-1,2"]), "0\n");
}

#[test]
fn distance_candidates() {
    let text = stdout(&["distance", "0,0,0", "0,0,7.853981633974483", "--all-candidates"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    for l in &lines {
        for key in ["\"gamma\":", "\"phi\":", "\"s\":", "\"residual\":"] {
            assert!(l.contains(key), "{l}");
        }
    }
    let csv = stdout(&["distance", "0,0,0", "1,1,1", "--all-candidates", "--format", "csv"]);
    assert!(csv.starts_with("gamma,phi,s,residual,azimuth_free\n"));
}

#[test]
fn curvature_report() {
    let text = stdout(&["curvature"]);
    assert!(text.contains("K(X,Y) = -3\n"));
    assert!(text.contains("K(X,T) = 1\n"));
    assert!(text.contains("K(Y,T) = 1\n"));
    assert!(text.contains("nabla_X Y = (0, 0, 1)\n"));
    assert!(text.contains("nabla_T X = (0, -1, 0)\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["curvature"]), 0);
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&[]), 2);
    assert_eq!(code(&["sphere"]), 2);
    assert_eq!(code(&["sphere", "--radius", "-1"]), 2);
    assert_eq!(code(&["sphere", "--radius", "1", "--nphi", "2"]), 2);
    assert_eq!(code(&["sphere", "--radius", "1", "--format", "csv"]), 2);
    assert_eq!(code(&["geodesic", "--gamma", "1.5", "--smax", "1"]), 2);
    assert_eq!(code(&["distance", "1,2", "0,0,0"]), 2);
    assert_eq!(code(&["distance", "0,0,0", "1,0,0", "--tol", "0"]), 2);
    assert_eq!(code(&["sphere", "--radius", "1", "--out", "/nonexistent/dir/x.obj"]), 3);
    assert_eq!(code(&["sphere", "--radius", "1", "--config", "/nonexistent/config.json"]), 3);
    // a shooting tolerance no geodesic can meet
    assert_eq!(code(&["distance", "0,0,0", "1,1,1", "--tol", "1e-300"]), 4);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    fs::write(&cfg, r#"{"radius": 2, "nphi": 8, "ngamma": 5, "format": "ply"}"#).unwrap();
    let cfg = cfg.to_str().unwrap();
    let from_file = stdout(&["sphere", "--config", cfg]);
    assert_eq!(from_file, stdout(&["sphere", "--radius", "2", "--nphi", "8", "--ngamma", "5", "--format", "ply"]));
    let overridden = stdout(&["--config", cfg, "sphere", "--format", "obj"]);
    assert_eq!(overridden, stdout(&["sphere", "--radius", "2", "--nphi", "8", "--ngamma", "5"]));

    fs::write(dir.path().join("bad.json"), r#"{"no_such_flag": 1}"#).unwrap();
    assert_eq!(code(&["sphere", "--radius", "1", "--config", dir.path().join("bad.json").to_str().unwrap()]), 2);
    fs::write(dir.path().join("broken.json"), "{").unwrap();
    assert_eq!(code(&["sphere", "--config", dir.path().join("broken.json").to_str().unwrap()]), 2);
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().into_string().unwrap(), fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn figures_suite() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        assert_eq!(code(&["figures", "--out-dir", d.path().to_str().unwrap()]), 0);
    }
    let (fa, fb) = (read_dir_sorted(a.path()), read_dir_sorted(b.path()));
    assert_eq!(fa, fb, "figures are not reproducible");
    let names: Vec<&str> = fa.iter().map(|(n, _)| n.as_str()).collect();
    for want in [
        "fig1_plane_surface.obj",
        "fig2_sphere_r1.obj",
        "fig2_sphere_r3.obj",
        "fig3_half_ball_r5.obj",
        "fig4_closeup_r5.obj",
        "fig5_closeup_r20.obj",
        "manifest.json",
    ] {
        assert!(names.contains(&want), "missing {want}");
    }
    assert!(fa.iter().all(|(_, bytes)| !bytes.is_empty()));

    let manifest: serde_json::Value = serde_json::from_slice(&fa.iter().find(|f| f.0 == "manifest.json").unwrap().1).unwrap();
    assert_eq!(manifest["settings"]["sphere_resolution"], serde_json::json!([128, 129]));
    let events = |file: &str| {
        manifest["figures"].as_array().unwrap().iter().find(|f| f["file"] == file).unwrap()["self_proximity_events"]
            .as_u64()
            .unwrap()
    };
    assert_eq!(events("fig2_sphere_r1.obj"), 0);
    assert!(events("fig4_sphere_r5.obj") > 0);
    assert!(events("fig5_sphere_r20.obj") > 0);
}

#[test]
fn commands_are_deterministic() {
    let runs: &[&[&str]] = &[
        &["geodesic", "--gamma", "0.37", "--phi", "1.1", "--smax", "9", "--n", "50"],
        &["sphere", "--radius", "3", "--nphi", "24", "--ngamma", "13", "--format", "ply"],
        &["sphere", "--radius", "5", "--nphi", "12", "--ngamma", "9", "--clip-to-metric"],
        &["surface", "--ntheta", "16", "--ns", "8"],
        &["distance", "0.1,0.2,0.3", "-1,1.5,-0.5", "--all-candidates"],
        &["distance", "0.1,0.2,0.3", "-1,1.5,-0.5"],
        &["curvature"],
    ];
    for args in runs {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
    let dir = tempfile::tempdir().unwrap();
    let (p, q) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for path in [&p, &q] {
        let args = ["geodesic", "--gamma", "-0.2", "--smax", "4", "--out", path.to_str().unwrap()];
        assert_eq!(code(&args), 0);
    }
    assert_eq!(fs::read(p).unwrap(), fs::read(q).unwrap());
}
