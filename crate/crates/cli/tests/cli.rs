use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn widthbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_widthbench")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn write_body(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn coords(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

#[test]
fn width_of_the_unit_disk() {
    let dir = TempDir::new().unwrap();
    let ball = write_body(&dir, "ball2.json", r#"{"kind": "ball", "dim": 2, "width": 1.0}"#);
    let v = stdout_json(&widthbench(&["width", "--body", arg(&ball)]));
    assert_eq!(v["min_width"].as_f64().unwrap(), 1.0);
    let u = coords(&v["direction"]);
    assert!((u[0].hypot(u[1]) - 1.0).abs() < 1e-12);
}

#[test]
fn diameter_and_chord_of_a_rectangle() {
    let dir = TempDir::new().unwrap();
    let rect = write_body(&dir, "rect.json", r#"{"kind": "polygon", "vertices": [[0, 0], [3, 0], [3, 4], [0, 4]]}"#);
    let d = stdout_json(&widthbench(&["diameter", "--body", arg(&rect)]));
    assert_eq!(d["diameter"].as_f64().unwrap(), 5.0);
    let c = stdout_json(&widthbench(&["chord", "--body", arg(&rect), "--dir", "0,-2"]));
    assert_eq!(c["length"].as_f64().unwrap(), 4.0);
    let w = stdout_json(&widthbench(&["width", "--body", arg(&rect)]));
    assert_eq!(w["min_width"].as_f64().unwrap(), 3.0);
    let bad = widthbench(&["chord", "--body", arg(&rect), "--dir", "1,0,0"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn lambda_table_in_space() {
    let out = widthbench(&["tables", "--which", "lambda", "--d", "3", "--nmax", "16"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("d,n,value,source"));
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    assert_eq!(rows.len(), 11);
    let published = [(6, 0.577), (8, 0.654), (10, 0.695), (12, 0.794), (14, 0.806), (16, 0.833)];
    for (n, value) in published {
        let row = rows.iter().find(|r| r[1] == n.to_string()).unwrap();
        assert_eq!(row[0], "3");
        let got: f64 = row[2].parse().unwrap();
        assert!((got - value).abs() <= 1e-3, "n={n}: {got}");
    }
    // odd n reuse the row below
    for pair in rows.chunks(2).filter(|c| c.len() == 2) {
        assert_eq!(pair[0][2], pair[1][2]);
    }
}

#[test]
fn delta_table_in_the_plane() {
    let out = widthbench(&["tables", "--which", "delta", "--d", "2", "--nmax", "12"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let n: usize = f[1].parse().unwrap();
        let expected = 1.0 / (PI / (2.0 * (n / 2) as f64)).cos();
        assert!((f[2].parse::<f64>().unwrap() - expected).abs() < 1e-11);
        assert_eq!(f[3], "analytic");
    }
}

#[test]
fn searched_quadrangle_matches_the_kite() {
    let v = stdout_json(&widthbench(&["ngon", "--n", "4", "--search", "--seed", "1", "--iters", "2000"]));
    assert!(v["min_width"].as_f64().unwrap() >= 0.7688);
    assert_eq!(v["n"], 4);
    let kite = stdout_json(&widthbench(&["ngon", "--n", "4"]));
    assert!((kite["min_width"].as_f64().unwrap() - 4.0 * 3f64.sqrt() / 9.0).abs() < 1e-11);
    assert_eq!(widthbench(&["ngon", "--n", "10"]).status.code(), Some(2));
}

#[test]
fn inscription_reports_scale_and_verification() {
    let dir = TempDir::new().unwrap();
    // width 2, so the scale factor is 1/2
    let sq = write_body(&dir, "sq.json", r#"{"kind": "polygon", "vertices": [[-1, -1], [1, -1], [1, 1], [-1, 1]]}"#);
    let v = stdout_json(&widthbench(&["inscribe", "--body", arg(&sq), "--n", "8"]));
    assert_eq!(v["scale"].as_f64().unwrap(), 0.5);
    assert_eq!(v["verification"]["contained"], true);
    let verts = v["result"]["polytope"]["vertices"].as_array().unwrap();
    assert!(verts.len() <= 8);
    for p in verts {
        let c = coords(p);
        assert!(c[0].abs() <= 0.5 + 1e-9 && c[1].abs() <= 0.5 + 1e-9);
    }
    assert!(v["result"]["width_ratio"].as_f64().unwrap() >= (PI / 8.0).cos() - 1e-9);
    let few = widthbench(&["inscribe", "--body", arg(&sq), "--n", "3"]);
    assert_eq!(few.status.code(), Some(2));
}

#[test]
fn inscription_in_the_ball() {
    let dir = TempDir::new().unwrap();
    let ball = write_body(&dir, "ball3.json", r#"{"kind": "ball", "dim": 3, "width": 4.0}"#);
    let v = stdout_json(&widthbench(&["inscribe", "--body", arg(&ball), "--n", "12"]));
    assert_eq!(v["scale"].as_f64().unwrap(), 0.25);
    assert_eq!(v["family_id"], "icosahedral");
    let verts = v["result"]["polytope"]["vertices"].as_array().unwrap();
    assert_eq!(verts.len(), 12);
    for p in verts {
        let c = coords(p);
        assert!(((c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt() - 0.5).abs() < 1e-11);
    }
    assert!(v["outline"].is_null());
}

#[test]
fn triangle_in_the_reuleaux_triangle() {
    let dir = TempDir::new().unwrap();
    let r = write_body(&dir, "r3.json", r#"{"kind": "reuleaux", "order": 3, "width": 1.0}"#);
    let v = stdout_json(&widthbench(&["triangle", "--body", arg(&r)]));
    let pts: Vec<Vec<f64>> = v["result"]["triangle"]["vertices"].as_array().unwrap().iter().map(coords).collect();
    let side = |i: usize, j: usize| (pts[i][0] - pts[j][0]).hypot(pts[i][1] - pts[j][1]);
    let s = side(0, 1);
    assert!((side(1, 2) - s).abs() < 1e-7 && (side(2, 0) - s).abs() < 1e-7);
    // height of a regular triangle of side s
    assert!(s * 3f64.sqrt() / 2.0 >= (3.0 - 3f64.sqrt()) / 2.0 - 1e-9);
    let ball = write_body(&dir, "ball3.json", r#"{"kind": "ball", "dim": 3, "width": 1.0}"#);
    assert_eq!(widthbench(&["triangle", "--body", arg(&ball)]).status.code(), Some(2));
}

#[test]
fn circumscription_of_a_polygon() {
    let dir = TempDir::new().unwrap();
    let pts = [[0.0, 0.0], [2.0, 0.0], [2.5, 1.0], [1.0, 2.0], [-0.3, 1.2]];
    let body = write_body(&dir, "p.json", &serde_json::json!({"kind": "polygon", "vertices": pts}).to_string());
    let v = stdout_json(&widthbench(&["circumscribe", "--body", arg(&body), "--n", "6"]));
    let diam = (2.8f64 * 2.8 + 0.2 * 0.2).sqrt();
    assert!((v["scale"].as_f64().unwrap() - 1.0 / diam).abs() < 1e-11);
    let r = &v["result"];
    assert!(r["facet_count"].as_u64().unwrap() <= 6);
    assert!(r["diameter_ratio"].as_f64().unwrap() <= 1.0 / (PI / 6.0).cos() + 4e-3);
    // every scaled input point lies on the inner side of every polygon edge
    let poly: Vec<Vec<f64>> = r["polytope"]["vertices"].as_array().unwrap().iter().map(coords).collect();
    let s = 1.0 / diam;
    for p in pts {
        let (x, y) = (p[0] * s, p[1] * s);
        for i in 0..poly.len() {
            let (a, b) = (&poly[i], &poly[(i + 1) % poly.len()]);
            let cross = (b[0] - a[0]) * (y - a[1]) - (b[1] - a[1]) * (x - a[0]);
            assert!(cross >= -1e-9);
        }
    }
    let cube = write_body(&dir, "cube.json", r#"{"kind": "polytope", "vertices": [[0,0,0],[1,0,0],[0,1,0],[1,1,0],[0,0,1],[1,0,1],[0,1,1],[1,1,1]]}"#);
    let out = widthbench(&["circumscribe", "--body", arg(&cube), "--n", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("3D completion unsupported"));
}

#[test]
fn lines_are_certified() {
    let v = stdout_json(&widthbench(&["lines", "--d", "2", "--k", "4", "--resolution", "20000"]));
    assert_eq!(v["certified"], true);
    assert!((v["radius_rad"].as_f64().unwrap() - PI / 8.0).abs() < 1e-11);
    assert_eq!(v["lines"].as_array().unwrap().len(), 4);
    let o = stdout_json(&widthbench(&["lines", "--d", "3", "--k", "4", "--optimize", "--seed", "2", "--iters", "50", "--resolution", "20000"]));
    assert!(o["radius_rad"].as_f64().unwrap() <= (3.0f64 / 7.0).sqrt().acos() + 1e-9);
    assert_eq!(widthbench(&["lines", "--d", "3", "--k", "2"]).status.code(), Some(2));
}

#[test]
fn malformed_bodies_exit_with_a_diagnostic() {
    let dir = TempDir::new().unwrap();
    let cases = [
        r#"{"kind": "blob"}"#,
        r#"{"kind": "ball", "dim": 2, "width": -1}"#,
        r#"{"kind": "polygon", "vertices": [[0, 0], [1, 0], [2, 0]]}"#,
        r#"{"kind": "polygon", "vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0]]}"#,
        r#"{"kind": "reuleaux", "order": 4, "width": 1}"#,
        "not json",
    ];
    for (i, text) in cases.iter().enumerate() {
        let p = write_body(&dir, &format!("b{i}.json"), text);
        let out = widthbench(&["width", "--body", arg(&p)]);
        assert_eq!(out.status.code(), Some(2), "{text}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert_eq!(err.trim_end().lines().count(), 1, "{err}");
    }
    let missing = widthbench(&["width", "--body", "/nonexistent/body.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn outputs_are_deterministic_and_atomic() {
    let dir = TempDir::new().unwrap();
    let body = write_body(&dir, "p.json", r#"{"kind": "polygon", "vertices": [[0, 0], [1, 0.1], [1.2, 0.9], [0.1, 1.1]]}"#);
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        assert!(widthbench(&["inscribe", "--body", arg(&body), "--n", "6", "--out", arg(out)]).status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let single = Command::new(env!("CARGO_BIN_EXE_widthbench"))
        .env("WIDTHBENCH_THREADS", "1")
        .args(["inscribe", "--body", arg(&body), "--n", "6"])
        .output()
        .unwrap();
    assert_eq!(single.stdout, fs::read(&a).unwrap());
    let t1 = widthbench(&["tables", "--which", "delta", "--d", "3", "--nmax", "20"]);
    let t2 = widthbench(&["tables", "--which", "delta", "--d", "3", "--nmax", "20"]);
    assert_eq!(t1.stdout, t2.stdout);
    // nothing but the body and the two results is left behind
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 3);
}

#[test]
fn numbers_have_at_most_twelve_significant_digits() {
    let out = widthbench(&["ngon", "--n", "7"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut count = 0;
    for token in text.split(|c: char| !(c.is_ascii_digit() || c == '.' || c == 'e' || c == '-')) {
        let mantissa = token.split('e').next().unwrap();
        if !mantissa.contains('.') {
            continue;
        }
        let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
        let significant = digits.trim_start_matches('0').trim_end_matches('0');
        assert!(significant.len() <= 12, "{token}");
        count += 1;
    }
    assert!(count > 10);
}

#[test]
fn render_draws_planar_results() {
    let dir = TempDir::new().unwrap();
    let body = write_body(&dir, "p.json", r#"{"kind": "polygon", "vertices": [[0, 0], [2, 0], [2.5, 1], [1, 2], [-0.3, 1.2]]}"#);
    let result = dir.path().join("c.json");
    assert!(widthbench(&["circumscribe", "--body", arg(&body), "--n", "6", "--out", arg(&result)]).status.success());
    let svg = dir.path().join("c.svg");
    assert!(widthbench(&["render", "--input", arg(&result), "--out", arg(&svg)]).status.success());
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg"));
    // six strip lines, the polytope and the outline
    assert_eq!(text.matches("<line").count(), 6);
    assert_eq!(text.matches("<polygon").count(), 2);

    let ins = dir.path().join("i.json");
    assert!(widthbench(&["inscribe", "--body", arg(&body), "--n", "8", "--out", arg(&ins)]).status.success());
    assert!(widthbench(&["render", "--input", arg(&ins), "--out", arg(&svg)]).status.success());
    assert_eq!(fs::read_to_string(&svg).unwrap().matches("<line").count(), 4);

    let ball = write_body(&dir, "b.json", r#"{"kind": "ball", "dim": 3, "width": 1}"#);
    let spatial = dir.path().join("s.json");
    assert!(widthbench(&["inscribe", "--body", arg(&ball), "--n", "6", "--out", arg(&spatial)]).status.success());
    assert_eq!(widthbench(&["render", "--input", arg(&spatial), "--out", arg(&svg)]).status.code(), Some(2));
}
