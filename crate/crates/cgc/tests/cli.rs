use cgc::io::{read_report, report_to_string, VerificationReport};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_cgc");

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn bubbleton() -> Value {
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(fixture("bubbleton.json")).unwrap()).unwrap();
    v["outputs"] = json!({ "mesh": "out.obj", "report": "report.json" });
    v
}

fn single_factor() -> Value {
    let mut v = bubbleton();
    v["reality"] = json!(false);
    // the complex bubbleton is steeper; its frame derivatives need a finer grid for 1e-7
    v["tolerances"] = json!({ "laurent_fit": 1e-6 });
    v
}

fn write_config(dir: &Path, v: &Value) -> PathBuf {
    let p = dir.join("job.json");
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p
}

fn cgc(args: &[&str], cfg: &Path) -> Output {
    Command::new(BIN).args(args).arg(cfg).env_remove("CGC_THREADS").output().unwrap()
}

fn report(dir: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

fn parse_obj(text: &str) -> (Vec<[f64; 3]>, Vec<String>) {
    let mut verts = Vec::new();
    let mut faces = Vec::new();
    for line in text.lines() {
        let parts: Vec<&str> = line.split(' ').collect();
        match parts[0] {
            "v" => verts.push([parts[1].parse().unwrap(), parts[2].parse().unwrap(), parts[3].parse().unwrap()]),
            "f" => faces.push(line.to_string()),
            other => panic!("unexpected record {other}"),
        }
    }
    (verts, faces)
}

#[test]
fn bubbleton_matches_golden_mesh() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &bubbleton());
    let out = cgc(&["run"], &cfg);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let got = std::fs::read_to_string(dir.path().join("out.obj")).unwrap();
    let want = std::fs::read_to_string(fixture("bubbleton.golden.obj")).unwrap();
    assert!(!got.contains('\r'));
    let (gv, gf) = parse_obj(&got);
    let (wv, wf) = parse_obj(&want);
    assert_eq!(gv.len(), 21 * 21);
    assert_eq!(gf, wf);
    for (a, b) in gv.iter().zip(&wv) {
        for k in 0..3 {
            assert!((a[k] - b[k]).abs() <= 1e-12 * (1.0 + b[k].abs()), "{a:?} {b:?}");
        }
    }
    let r = report(dir.path());
    assert_eq!(r["pass"], json!(true));
    assert!(r["checks"]["reality_imag_sup"]["value"].as_f64().unwrap() < 1e-8);
}

#[test]
fn runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &bubbleton());
    let mut seen = Vec::new();
    for threads in ["1", "3"] {
        let out = Command::new(BIN).args(["run", "--threads", threads]).arg(&cfg).output().unwrap();
        assert_eq!(out.status.code(), Some(0));
        let mesh = std::fs::read(dir.path().join("out.obj")).unwrap();
        let rep = std::fs::read(dir.path().join("report.json")).unwrap();
        seen.push((mesh, rep));
    }
    assert!(seen[0] == seen[1]);
}

#[test]
fn report_keys_are_sorted() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &bubbleton());
    let out = cgc(&["verify"], &cfg);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let r = read_report(&text).unwrap();
    assert_eq!(report_to_string(&r), text);
    let names: Vec<&String> = r.checks.keys().collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    let positions: Vec<usize> = names.iter().map(|n| text.find(&format!("\"{n}\"")).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn complex_surface_needs_a_part_flag() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &single_factor());
    let out = cgc(&["run"], &cfg);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("complex"));
    assert!(!dir.path().join("out.obj").exists());
    let r = report(dir.path());
    let len = r["observables"]["constant_length_re"].as_f64().unwrap();
    assert!((len - 16.0 / 9.0).abs() < 1e-8);
    assert!(r["checks"]["constant_length_spread"]["value"].as_f64().unwrap() < 1e-8);

    let out = cgc(&["export"], &cfg);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/outputs/mesh"));

    for flag in ["--real-part", "--imag-part"] {
        let out = cgc(&["export", flag], &cfg);
        assert_eq!(out.status.code(), Some(0));
        let (v, f) = parse_obj(&std::fs::read_to_string(dir.path().join("out.obj")).unwrap());
        assert_eq!((v.len(), f.len()), (441, 400));
    }
}

#[test]
fn failing_tolerance_gives_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &bubbleton());
    let out = cgc(&["verify", "--tol-override", "reality_imag_sup=1e-300"], &cfg);
    assert_eq!(out.status.code(), Some(1));
    let r: VerificationReport = read_report(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(!r.pass);
    assert_eq!(r.checks["reality_imag_sup"].tolerance, 1e-300);
    assert!(r.checks["flatness"].pass);
}

#[test]
fn empty_check_list() {
    let dir = tempfile::tempdir().unwrap();
    let mut v = bubbleton();
    v["checks"] = json!([]);
    let cfg = write_config(dir.path(), &v);
    let out = cgc(&["verify"], &cfg);
    assert_eq!(out.status.code(), Some(0));
    let r = read_report(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(r.checks.is_empty() && r.pass);
}

#[test]
fn config_errors_carry_pointers() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("/factors/0/alpha", json!([1.0, 0.0]), "lambda pole"),
        ("/lambda", json!([0.0, 0.0]), "zero lambda"),
    ];
    for (ptr, alpha_or_lambda, what) in cases {
        let mut v = bubbleton();
        if ptr == "/lambda" {
            v["lambda"] = alpha_or_lambda;
        } else {
            v["factors"][0]["alpha"] = alpha_or_lambda;
        }
        let out = cgc(&["verify"], &write_config(dir.path(), &v));
        assert_eq!(out.status.code(), Some(2), "{what}");
        assert!(String::from_utf8_lossy(&out.stderr).contains(ptr), "{what}");
    }
    let mut v = bubbleton();
    v["grid"]["n"] = json!("many");
    let out = cgc(&["verify"], &write_config(dir.path(), &v));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/grid/n"));

    let mut v = bubbleton();
    v["tolerances"] = json!({ "nonsense": 1.0 });
    let out = cgc(&["verify"], &write_config(dir.path(), &v));
    assert_eq!(out.status.code(), Some(2));

    let out = cgc(&["verify", "--tol-override", "flatness"], &write_config(dir.path(), &bubbleton()));
    assert_eq!(out.status.code(), Some(2));

    let out = cgc(&["verify"], &dir.path().join("missing.json"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn numerical_errors_give_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let mut v = bubbleton();
    v["seed"] = json!({ "kind": "pendulum", "omega0": 400.0 });
    v["reality"] = json!(false);
    let out = cgc(&["verify"], &write_config(dir.path(), &v));
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn thread_count_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &bubbleton());
    let out = Command::new(BIN).args(["verify"]).arg(&cfg).env("CGC_THREADS", "2").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(BIN).args(["verify"]).arg(&cfg).env("CGC_THREADS", "x").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn shipped_configs_verify() {
    let configs = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    for name in ["bubbleton.json", "pendulum_oracle.json", "soliton.json"] {
        let dir = tempfile::tempdir().unwrap();
        let v: Value = serde_json::from_str(&std::fs::read_to_string(configs.join(name)).unwrap()).unwrap();
        let out = cgc(&["verify"], &write_config(dir.path(), &v));
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stdout));
    }
}
