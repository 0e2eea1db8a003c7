use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    json: Value,
    stderr: String,
}

fn qsym(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qsym"));
    cmd.args(args).env_remove("QSYM_TOL");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let Output { status, stdout, stderr } = cmd.output().expect("binary runs");
    let json = serde_json::from_slice(&stdout).unwrap_or(Value::Null);
    Run { code: status.code().expect("exit code"), json, stderr: String::from_utf8_lossy(&stderr).into() }
}

fn file(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const S3: &str = r#"{"function_algebra_of": {"symmetric": 3}}"#;

fn family(coeffs: &str) -> String {
    format!(r#"{{"source": {{"algebra": {{"blocks": [1, 1]}}, "state": {{"coeffs": [0.5, 0.5]}}}}, "index": {{"blocks": [1, 1]}}, "coeffs": {coeffs}}}"#)
}

#[test]
fn verify_family_magic_unitary_and_trivial_pass() {
    let dir = TempDir::new().unwrap();
    // u = [[p, 1 - p], [1 - p, p]] with p = (1, 0) in ℂ²
    let magic = file(&dir, "magic.json", &family("[[[1, 0], [0, 1]], [[0, 1], [1, 0]]]"));
    let trivial = file(&dir, "trivial.json", &family("[[[1, 1], [0, 0]], [[0, 0], [1, 1]]]"));
    for f in [magic, trivial] {
        let r = qsym(&["verify-family", s(&f)], &[]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert_eq!(r.json["passed"], true);
        assert!(r.json["results"]["checks"].as_object().unwrap().values().all(|v| v == true));
    }
}

#[test]
fn verify_family_reports_broken_multiplicativity() {
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "bad.json", &family("[[[1, 0.5], [0, 1]], [[0, 1], [1, 0]]]"));
    let r = qsym(&["verify-family", s(&bad)], &[]);
    assert_eq!(r.code, 2);
    assert_eq!(r.json["results"]["checks"]["wang2"], false);
    let w = r.json["results"]["witnesses"]["wang2"].as_array().unwrap();
    assert_eq!(w.len(), 3);
    assert!(w.iter().all(|x| x.as_u64().unwrap() >= 1));
    assert!(r.json["residuals"]["wang2"].as_f64().unwrap() > 1e-3);
}

#[test]
fn hopf_image_examples() {
    let dir = TempDir::new().unwrap();
    let s3 = file(&dir, "s3.json", S3);
    let z4 = file(&dir, "z4.json", r#"{"group_algebra_of": {"cyclic": 4}}"#);
    let ev = file(&dir, "ev.json", r#"{"evaluation": "(1 2)"}"#);
    let chi = file(&dir, "chi.json", r#"{"character": [1, -1, 1, -1]}"#);
    let counit = file(&dir, "counit.json", r#"{"counit": true}"#);
    for (q, h, dim) in [(&s3, &ev, 2), (&z4, &chi, 2), (&s3, &counit, 1)] {
        for method in ["kernel", "coideal", "both"] {
            let r = qsym(&["hopf-image", s(q), s(h), "--method", method], &[]);
            assert_eq!(r.code, 0, "{}", r.stderr);
            let res = &r.json["results"];
            assert_eq!(res["dim_S"], dim);
            assert_eq!(res["method"], method);
            assert_eq!(res["oracle"]["agrees"], true);
            assert_eq!(res["inner_faithful"], false);
            for key in ["dim_A", "n_stabilized", "residuals"] {
                assert!(res.get(key).is_some(), "missing {key}");
            }
        }
    }
}

#[test]
fn exported_quotient_reloads_as_a_quantum_group() {
    let dir = TempDir::new().unwrap();
    let s3 = file(&dir, "s3.json", S3);
    let h = file(&dir, "h.json", r#"{"direct_sum": [{"evaluation": "(1 2)"}, {"evaluation": "(1 2 3)"}]}"#);
    let out = dir.path().join("quotient.json");
    let r = qsym(&["hopf-image", s(&s3), s(&h), "--export", s(&out)], &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json["results"]["dim_S"], 6);
    let id = file(&dir, "id.json", r#"{"identity": true}"#);
    let again = qsym(&["hopf-image", s(&out), s(&id)], &[]);
    assert_eq!(again.code, 0, "{}", again.stderr);
    assert_eq!(again.json["results"]["dim_S"], 6);
    assert_eq!(again.json["results"]["inner_faithful"], true);
    assert_eq!(again.json["results"]["oracle"], serde_json::json!({}));
}

#[test]
fn gen_subgroup_cross_checks_the_group() {
    let dir = TempDir::new().unwrap();
    let s3 = file(&dir, "s3.json", S3);
    let a = file(&dir, "a.json", r#"{"restriction_to": ["(1 2)"]}"#);
    let b = file(&dir, "b.json", r#"{"restriction_to": ["(2 3)"]}"#);
    let r = qsym(&["gen-subgroup", s(&s3), s(&a), s(&b)], &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json["results"]["dim_S"], 6);
    assert_eq!(r.json["results"]["dual_generated_dim"], 6);
    assert_eq!(r.json["results"]["oracle"]["expected_dim"], 6);
    let r = qsym(&["gen-subgroup", s(&s3), s(&a), s(&a)], &[]);
    assert_eq!(r.json["results"]["dim_S"], 2);

    let z = file(&dir, "z22.json", r#"{"group_algebra_of": {"direct_product": [{"cyclic": 2}, {"cyclic": 2}]}}"#);
    let n1 = file(&dir, "n1.json", r#"{"quotient_by": [2]}"#);
    let n2 = file(&dir, "n2.json", r#"{"quotient_by": [3]}"#);
    let r = qsym(&["gen-subgroup", s(&z), s(&n1), s(&n2)], &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json["results"]["dim_S"], 4);
    assert_eq!(r.json["results"]["oracle"]["agrees"], true);
}

#[test]
fn inner_faithful_examples() {
    let dir = TempDir::new().unwrap();
    let s3 = file(&dir, "s3.json", S3);
    let ev = file(&dir, "ev.json", r#"{"evaluation": "(1 2)"}"#);
    let one = file(&dir, "one.json", r#"{"coeffs": [1]}"#);
    let r = qsym(&["inner-faithful", s(&s3), s(&ev), s(&one)], &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json["results"]["inner_faithful"], false);

    let both = file(&dir, "both.json", r#"{"direct_sum": [{"evaluation": "(1 2)"}, {"evaluation": "(1 2 3)"}]}"#);
    let half = file(&dir, "half.json", r#"{"coeffs": [0.5, 0.5]}"#);
    for mode in ["spectral", "iterative"] {
        let r = qsym(&["inner-faithful", s(&s3), s(&both), s(&half), "--cesaro", mode, "--tol", "1e-4"], &[]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert_eq!(r.json["results"]["inner_faithful"], true);
    }
    // a state that is not faithful is an input error
    let bad = file(&dir, "bad.json", r#"{"coeffs": [1, 0]}"#);
    assert_eq!(qsym(&["inner-faithful", s(&s3), s(&both), s(&bad)], &[]).code, 3);
}

#[test]
fn qinc_subcommands() {
    let r = qsym(&["qinc", "s4check"], &[]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["results"]["order"], 24);
    assert_eq!(r.json["results"]["completions"].as_array().unwrap().len(), 6);

    let r = qsym(&["qinc", "enumerate", "2", "4"], &[]);
    assert_eq!(r.json["results"]["count"], 6);
    assert_eq!(r.json["results"]["sequences"][0], serde_json::json!([1, 2]));

    let r = qsym(&["qinc", "freepair", "--t", "0.5"], &[]);
    assert_eq!(r.code, 0);
    assert!(r.json["residuals"]["magic_unitary"].as_f64().unwrap() <= 1e-12);

    let dir = TempDir::new().unwrap();
    // the classical sequence (1, 3)
    let rep = file(&dir, "rep.json", r#"{"n": 4, "k": 2, "d": 1, "v": [[[[1]], [[0]]], [[[0]], [[0]]], [[[0]], [[1]]], [[[0]], [[0]]]]}"#);
    let out = dir.path().join("u.json");
    let r = qsym(&["qinc", "complete", s(&rep), "--export", s(&out)], &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json["results"]["permutation"], "(2 3)");
    let exported: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(exported["n"], 4);

    let r = qsym(&["qinc", "growth", s(&rep), "--steps", "2"], &[]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json["results"]["dims"], serde_json::json!([1, 1]));
}

#[test]
fn input_errors_exit_with_three() {
    let dir = TempDir::new().unwrap();
    let s3 = file(&dir, "s3.json", S3);
    let junk = file(&dir, "junk.json", "{not json");
    let chi = file(&dir, "chi.json", r#"{"character": [1, -1, 1, -1]}"#);
    let not_hom = file(&dir, "nh.json", r#"{"character": [1, 1, 1, 1, 1, 0.5]}"#);
    assert_eq!(qsym(&["hopf-image", s(&s3), s(&junk)], &[]).code, 3);
    assert_eq!(qsym(&["hopf-image", s(&s3), s(&chi)], &[]).code, 3);
    assert_eq!(qsym(&["hopf-image", s(&s3), s(&not_hom)], &[]).code, 3);
    assert_eq!(qsym(&["hopf-image", s(&s3), "/nonexistent/file.json"], &[]).code, 3);
    assert_eq!(qsym(&["qinc", "enumerate", "5", "4"], &[]).code, 3);
    assert_eq!(qsym(&["qinc", "s4check", "--method", "sideways"], &[]).code, 3);
    assert_eq!(qsym(&["qinc", "s4check", "--max-iter", "0"], &[]).code, 3);
    assert_eq!(qsym(&["qinc", "s4check", "--tol", "-1"], &[]).code, 3);
}

#[test]
fn tolerance_comes_from_the_environment() {
    assert_eq!(qsym(&["qinc", "s4check"], &[("QSYM_TOL", "not-a-number")]).code, 3);
    assert_eq!(qsym(&["qinc", "s4check"], &[("QSYM_TOL", "-1")]).code, 3);
    assert_eq!(qsym(&["qinc", "s4check"], &[("QSYM_TOL", "1e-7")]).code, 0);
    // an explicit flag wins over the environment
    assert_eq!(qsym(&["qinc", "s4check", "--tol", "1e-9"], &[("QSYM_TOL", "-1")]).code, 0);
}

#[test]
fn reports_round_trip_and_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let s3 = file(&dir, "s3.json", S3);
    let ev = file(&dir, "ev.json", r#"{"evaluation": "(1 2)"}"#);
    let a = qsym(&["hopf-image", s(&s3), s(&ev)], &[]).json;
    let b = qsym(&["hopf-image", s(&s3), s(&ev)], &[]).json;
    let text = serde_json::to_string(&a).unwrap();
    assert_eq!(serde_json::from_str::<Value>(&text).unwrap(), a);
    for key in ["command", "inputs_digest", "passed", "results", "residuals", "wall_time_s"] {
        assert!(a.get(key).is_some(), "missing {key}");
    }
    assert_eq!(a["results"], b["results"]);
    assert_eq!(a["inputs_digest"], b["inputs_digest"]);
    let seeded = |seed: &str| qsym(&["qinc", "freepair", "--seed", seed], &[]).json["results"]["t"].clone();
    assert_eq!(seeded("7"), seeded("7"));
    assert_ne!(seeded("7"), seeded("8"));
}

#[test]
fn text_output_has_a_verdict_line() {
    let out = Command::new(env!("CARGO_BIN_EXE_qsym")).args(["qinc", "s4check", "--output", "text"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("qinc s4check: PASS"));
    assert!(text.contains("order: 24"));
}
