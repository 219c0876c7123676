use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use matconvex::json::{DilationJson, FeasibilityJson, FrameJson, TupleJson};
use matconvex::sets::Polytope;
use serde_json::Value;
use tempfile::TempDir;

const PAULI: &str = r#"{"d": 2, "n": 2, "matrices": [[[0, 1], [1, 0]], [[1, 0], [0, -1]]]}"#;
const SMALL: &str = r#"{"d": 2, "n": 2, "matrices": [[[0.5, 0], [0, 0]], [[0, [0, 0.3]], [[0, -0.3], 0]]]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matconvex")).args(args).env_remove("MATCONVEX_THREADS").output().unwrap()
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn member_cube_contraction() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.json", SMALL);
    let o = run(&["member", "cube", s(&x)]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["verdict"], "positive");
    assert_eq!(r["seed"], 0);
    assert!(r["timing"]["seconds"].is_f64());
    assert_eq!(r["tolerances"]["tol"], 1e-9);
}

#[test]
fn sharpness_reports_d() {
    let o = run(&["witness", "sharpness", "--d", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let lam = report(&o)["result"]["lambda_max"].as_f64().unwrap();
    assert!((lam - 3.0).abs() < 1e-9);
}

#[test]
fn relax_cube_on_pauli_pair() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "b.json", PAULI);
    let o = run(&["include", "relax-cube", s(&b)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report(&o)["result"]["verdict"], "CubeExcluded");
}

#[test]
fn verdict_exit_codes() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.json", PAULI);
    assert_eq!(run(&["member", "diamond", s(&p)]).status.code(), Some(1));
    assert_eq!(run(&["dilate", "diamond", s(&p)]).status.code(), Some(1));
    assert_eq!(run(&["member", "ball", s(&p)]).status.code(), Some(1));
    let big = write(&dir, "big.json", r#"{"d": 1, "n": 1, "matrices": [[[2]]]}"#);
    assert_eq!(run(&["dilate", "flip", s(&big)]).status.code(), Some(1));
    let skew = write(&dir, "skew.json", r#"{"dim": 2, "vectors": [[1, 0], [0.6, 0.8]]}"#);
    assert_eq!(run(&["frame", "check", s(&skew)]).status.code(), Some(1));
    // Boundary inclusion with an empty interior is left undecided.
    let ii = write(&dir, "ii.json", r#"{"d": 2, "n": 2, "matrices": [[[1, 0], [0, 1]], [[1, 0], [0, 1]]]}"#);
    assert_eq!(run(&["include", "spectra", s(&ii), s(&p)]).status.code(), Some(2));
}

#[test]
fn malformed_json_has_position() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.json", "{\"d\": 1,\n \"n\": 1,\n \"matrices\": [[[1]]\n");
    let o = run(&["member", "cube", s(&x)]);
    assert_eq!(o.status.code(), Some(3));
    let r = report(&o);
    assert_eq!(r["error"]["kind"], "malformed_json");
    assert_eq!(r["error"]["line"], 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains(":4:"));
}

#[test]
fn invalid_inputs_exit_3() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.json", r#"{"d": 1, "n": 2, "matrices": [[[0, 1], [0, 0]]]}"#);
    assert_eq!(run(&["member", "cube", s(&x)]).status.code(), Some(3));
    assert_eq!(run(&["member", "cube", "/nonexistent/x.json"]).status.code(), Some(3));
}

#[test]
fn usage_errors_exit_4() {
    assert_eq!(run(&["member", "cube", "x.json", "--bogus"]).status.code(), Some(4));
    assert_eq!(run(&["teleport"]).status.code(), Some(4));
    assert_eq!(run(&["frame", "check"]).status.code(), Some(4));
    let o = Command::new(env!("CARGO_BIN_EXE_matconvex")).args(["witness", "clifford", "--d", "2"]).env("MATCONVEX_THREADS", "0").output().unwrap();
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn reports_are_deterministic() {
    let args = ["witness", "taurho", "--set", "cube", "--d", "2", "--samples", "4", "--seed", "7", "--no-timing"];
    let a = run(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_matconvex")).args(args).env("MATCONVEX_THREADS", "1").output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(report(&a)["seed"], 7);
    assert!(report(&a).get("timing").is_none());
}

#[test]
fn out_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("r.json");
    let o = run(&["witness", "nonscalable", "--points", "30", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["result"].as_array().unwrap().len(), 30);
}

fn fixpoint<T: serde::Serialize + serde::de::DeserializeOwned>(v: &Value) {
    let first: T = serde_json::from_value(v.clone()).unwrap();
    let text = serde_json::to_string(&first).unwrap();
    let second: T = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&second).unwrap(), text);
}

#[test]
fn schemas_round_trip() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.json", SMALL);
    let r = report(&run(&["dilate", "flip", s(&x)]));
    fixpoint::<DilationJson>(&r["result"]);
    let dil: DilationJson = serde_json::from_value(r["result"].clone()).unwrap();
    let src = serde_json::from_str::<TupleJson>(SMALL).unwrap().to_gen().unwrap();
    assert!(dil.to_dilation(&src).unwrap().residuals.compression < 1e-12);

    let r = report(&run(&["witness", "clifford", "--d", "3"]));
    fixpoint::<TupleJson>(&r["result"]["tuple"]);
    let t = write(&dir, "t.json", &r["result"]["tuple"].to_string());
    assert_eq!(run(&["member", "cube", s(&t)]).status.code(), Some(0));

    let cube = write(&dir, "cube.json", r#"{"dim": 2, "vertices": [[1, 1], [1, -1], [-1, 1], [-1, -1]]}"#);
    let dual = report(&run(&["dual", "polytope", s(&cube)]));
    fixpoint::<Polytope>(&dual["result"]);
    let dual_file = write(&dir, "dual.json", &dual["result"].to_string());
    let back = report(&run(&["dual", "polytope", s(&dual_file)]));
    assert_eq!(back["result"]["vertices"].as_array().unwrap().len(), 4);

    let p = write(&dir, "p.json", PAULI);
    let m = report(&run(&["map", "ucp", s(&p), s(&p), "--with-choi"]));
    assert_eq!(m["verdict"], "positive");
    fixpoint::<FeasibilityJson>(&m["result"]);
    assert!(m["residuals"]["constraint_error"].as_f64().unwrap() < 1e-7);

    let f = report(&run(&["frame", "check", "--builder", "pentagon"]));
    let fj = serde_json::json!({"dim": f["result"]["dim"], "vectors": f["result"]["vectors"]});
    fixpoint::<FrameJson>(&fj);
    let ff = write(&dir, "f.json", &fj.to_string());
    assert_eq!(report(&run(&["frame", "sym", s(&ff)]))["result"]["order"], 10);
}

#[test]
fn every_group_dispatches() {
    let dir = TempDir::new().unwrap();
    let x = write(&dir, "x.json", SMALL);
    let p = write(&dir, "p.json", PAULI);
    let sq = write(&dir, "sq.json", r#"{"dim": 2, "vertices": [[1, 1], [1, -1], [-1, 1], [-1, -1]], "facets": [{"alpha": [1, 0], "a": 1}, {"alpha": [-1, 0], "a": 1}, {"alpha": [0, 1], "a": 1}, {"alpha": [0, -1], "a": 1}]}"#);
    let fam = write(&dir, "fam.json", r#"{"lambdas": [[[2, 0], [0, 0]], [[0, 0], [0, 2]]], "betas": [0.5, 0.5]}"#);
    let atoms_c = write(&dir, "c.json", "[[1, 1], [1, -1], [-1, 1], [-1, -1]]");
    let atoms_d = write(&dir, "d.json", "[[1, 0], [-1, 0], [0, 1], [0, -1]]");
    let half = write(&dir, "half.json", r#"{"d": 2, "n": 2, "matrices": [[[0, 0.5], [0.5, 0]], [[0.5, 0], [0, -0.5]]]}"#);
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["member", "wmax", s(&x), "--polytope", s(&sq)], 0),
        (vec!["member", "wmin", s(&x), "--polytope", s(&sq)], 0),
        (vec!["member", "dball", s(&x)], 0),
        (vec!["member", "pencil", s(&half), "--pencil", s(&p)], 0),
        (vec!["dilate", "lambda", s(&x), "--family", s(&fam)], 0),
        (vec!["dilate", "frame", s(&half), "--builder", "pentagon"], 0),
        (vec!["dilate", "cube2diamond", s(&x)], 0),
        (vec!["dilate", "flip", s(&x), "--general"], 0),
        (vec!["map", "ccp", s(&half), s(&half)], 0),
        (vec!["map", "cc", s(&half), s(&half)], 0),
        (vec!["map", "normal", s(&atoms_c), s(&atoms_d)], 0),
        (vec!["map", "normal", s(&atoms_d), s(&atoms_c)], 1),
        (vec!["include", "spectra", s(&p), s(&half)], 0),
        (vec!["frame", "reflexive", "--builder", "s5_orbit"], 0),
        (vec!["frame", "invariance", "--builder", "simplex3"], 0),
        (vec!["witness", "sqrtd", "--d", "3"], 0),
        (vec!["witness", "chain", "--d", "3"], 0),
    ];
    for (args, code) in cases {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        report(&o);
    }
}
