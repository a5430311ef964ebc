use std::path::PathBuf;
use std::process::{Command, Output};

use ginv::io::{matrix_to_json, parse_matrix};
use ginv::{Domain, Scalar, StarMatrix};
use serde_json::Value;
use tempfile::TempDir;

fn ginv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ginv")).args(args).output().expect("run ginv")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

struct Files(TempDir);

impl Files {
    fn new() -> Files {
        Files(TempDir::new().unwrap())
    }

    fn matrix(&self, name: &str, m: &StarMatrix) -> String {
        self.text(name, &matrix_to_json(m).to_string())
    }

    fn text(&self, name: &str, body: &str) -> String {
        let p: PathBuf = self.0.path().join(name);
        std::fs::write(&p, body).unwrap();
        p.to_string_lossy().into_owned()
    }

    fn path(&self, name: &str) -> String {
        self.0.path().join(name).to_string_lossy().into_owned()
    }
}

fn gauss(rows: usize, cols: usize, v: &[i64]) -> StarMatrix {
    StarMatrix::from_i64(Domain::GaussianRational, rows, cols, v)
}

fn value_of(doc: &Value) -> StarMatrix {
    parse_matrix(&doc["value"].to_string()).unwrap()
}

#[test]
fn compute_worked_pair() {
    let f = Files::new();
    let a = f.matrix("a.json", &gauss(2, 2, &[0, 1, 0, 0]));
    let w = f.matrix("w.json", &gauss(2, 2, &[3, 6, 1, 0]));
    let out = ginv(&["compute", "--kind", "w-core", "--a", &a, "--w", &w]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["exists"], true);
    assert_eq!(value_of(&doc), gauss(2, 2, &[1, 0, 0, 0]));
    assert_eq!(doc["certificate"]["passed"], true);
    for route in ["mary_13", "core_of_aw", "projection_unit", "rank_formula"] {
        let out = ginv(&["compute", "--kind", "w-core", "--a", &a, "--w", &w, "--route", route]);
        assert_eq!(code(&out), 0, "{route}");
        assert_eq!(value_of(&stdout_json(&out)), gauss(2, 2, &[1, 0, 0, 0]), "{route}");
    }
}

#[test]
fn compute_not_exists_and_zero() {
    let f = Files::new();
    let a = f.matrix("a.json", &gauss(2, 2, &[0, 1, 0, 0]));
    let out = ginv(&["compute", "--kind", "core", "--a", &a]);
    assert_eq!(code(&out), 3);
    let doc = stdout_json(&out);
    assert_eq!(doc["exists"], false);
    assert!(doc["value"].is_null());
    assert!(doc["reason"].is_string());

    let z = f.matrix("z.json", &StarMatrix::zeros(Domain::Rational, 2, 3));
    let out = ginv(&["compute", "--kind", "mp", "--a", &z]);
    assert_eq!(code(&out), 0);
    let v = value_of(&stdout_json(&out));
    assert_eq!(v.shape(), (3, 2));
    assert!(v.is_zero());
}

#[test]
fn out_file_and_check_round_trip() {
    let f = Files::new();
    let a = gauss(3, 3, &[1, 2, 0, 0, 0, 1, 0, 0, 0]);
    let a_path = f.matrix("a.json", &a);
    let w_path = f.matrix("w.json", &gauss(3, 3, &[1, 0, 0, 1, 1, 0, 0, 2, 1]));
    let d_path = f.matrix("d.json", &a.pow(2));
    let b_path = f.matrix("b.json", &a.pow(2));
    let c_path = f.matrix("c.json", &a.adjoint());
    let kinds: &[(&str, &[(&str, &str)])] = &[
        ("one", &[]),
        ("one3", &[]),
        ("one4", &[]),
        ("mp", &[]),
        ("drazin", &[]),
        ("core-ep", &[]),
        ("w-core", &[("--w", &w_path)]),
        ("dual-v-core", &[("--v", &w_path)]),
        ("along", &[("--d", &d_path)]),
        ("bc", &[("--b", &b_path), ("--c", &c_path)]),
    ];
    for (kind, extra) in kinds {
        let out_path = f.path(&format!("{kind}.json"));
        let mut args = vec!["compute", "--kind", kind, "--a", &a_path, "--out", &out_path];
        for (flag, p) in extra.iter() {
            args.extend([*flag, *p]);
        }
        let out = ginv(&args);
        assert!(out.stdout.is_empty(), "{kind}: --out keeps stdout empty");
        if code(&out) == 3 {
            continue;
        }
        assert_eq!(code(&out), 0, "{kind}: {}", String::from_utf8_lossy(&out.stderr));
        args.splice(4.., [&a_path[..], "--candidate", &out_path]);
        args[0] = "check";
        for (flag, p) in extra.iter() {
            args.extend([*flag, *p]);
        }
        let out = ginv(&args);
        assert_eq!(code(&out), 0, "{kind}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn check_accepts_and_rejects() {
    let f = Files::new();
    let a = f.matrix("a.json", &gauss(2, 2, &[0, 1, 0, 0]));
    let w = f.matrix("w.json", &gauss(2, 2, &[3, 6, 1, 0]));
    let good = f.matrix("x.json", &gauss(2, 2, &[1, 0, 0, 0]));
    let zero = f.matrix("z.json", &gauss(2, 2, &[0, 0, 0, 0]));
    let out = ginv(&["check", "--kind", "w-core", "--a", &a, "--w", &w, "--candidate", &good]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["passed"], true);
    let out = ginv(&["check", "--kind", "w-core", "--a", &a, "--w", &w, "--candidate", &zero]);
    assert_eq!(code(&out), 3);
    let doc = stdout_json(&out);
    let failed: Vec<&str> = doc["certificate"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["label"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"xawa=a"), "{failed:?}");
}

#[test]
fn float_round_trip() {
    let f = Files::new();
    let a = StarMatrix::from_fn(Domain::ComplexFloat, 3, 3, |i, j| {
        Scalar::complex(((i * 7 + j * 3) % 5) as f64 / 3.0, (i as f64 - j as f64) / 7.0)
    });
    let a_path = f.matrix("a.json", &a);
    let out_path = f.path("mp.json");
    let out = ginv(&["compute", "--kind", "mp", "--a", &a_path, "--out", &out_path]);
    assert_eq!(code(&out), 0);
    let out = ginv(&["check", "--kind", "mp", "--a", &a_path, "--candidate", &out_path]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn verify_exit_codes() {
    let out = ginv(&["verify", "--ring", "zmod:6", "--all"]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["passed"], true);
    let reports = doc["reports"].as_array().unwrap();
    assert!(reports.iter().all(|r| r["counterexamples"].as_array().unwrap().is_empty()));
    assert!(reports.iter().all(|r| r["ring"] == "zmod:6" && r["elapsed_ms"].is_number()));

    let out = ginv(&["verify", "--ring", "mat:2:gf2", "--theorem", "uniqueness"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["reports"][0]["instances_checked"], 256);

    assert_eq!(code(&ginv(&["verify", "--ring", "zmod:1", "--all"])), 1);
    assert_eq!(code(&ginv(&["verify", "--ring", "zmod:6", "--theorem", "nonsense"])), 1);
    assert_eq!(code(&ginv(&["verify", "--ring", "mat:3:gf3", "--all"])), 1);
    assert_eq!(code(&ginv(&["verify", "--ring", "zmod:6"])), 1);
}

#[test]
fn usage_errors_exit_one() {
    let f = Files::new();
    let a = f.matrix("a.json", &gauss(2, 2, &[1, 0, 0, 0]));
    let bad = f.text("bad.json", "{\"rows\": 1}");
    assert_eq!(code(&ginv(&["compute", "--kind", "w-core", "--a", &a])), 1);
    assert_eq!(code(&ginv(&["compute", "--kind", "mp", "--a", &a, "--w", &a])), 1);
    assert_eq!(code(&ginv(&["compute", "--kind", "mp", "--a", &a, "--route", "mary_13"])), 1);
    assert_eq!(code(&ginv(&["compute", "--kind", "w-core", "--a", &a, "--w", &a, "--route", "nope"])), 1);
    assert_eq!(code(&ginv(&["compute", "--kind", "wat", "--a", &a])), 1);
    assert_eq!(code(&ginv(&["compute", "--kind", "mp", "--a", &bad])), 1);
    assert_eq!(code(&ginv(&["compute", "--kind", "mp", "--a", "/nonexistent.json"])), 1);
    assert_eq!(code(&ginv(&["compute", "--kind", "mp", "--a", &a, "--tol", "-1"])), 1);
    assert_eq!(code(&ginv(&["frobnicate"])), 1);
    assert_eq!(code(&ginv(&["--help"])), 0);
}
