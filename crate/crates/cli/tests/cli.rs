use std::process::{Command, Output};
use std::time::{Duration, Instant};

use serde_json::Value;

fn sturmion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sturmion")).args(args).output().expect("spawn")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn strs(v: &Value) -> Vec<&str> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect()
}

#[test]
fn chain_linear() {
    let out = sturmion(&["chain", "--grid", "linear", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["command"], "chain");
    assert_eq!(strs(&v["payload"]["b"]), ["1/1", "1/1", "1/1"]);
    assert_eq!(strs(&v["payload"]["u"]), ["1/3", "2/3"]);
    assert_eq!(strs(&v["payload"]["dual_weights"]), ["1/3", "1/3", "1/3"]);
    assert_eq!(v["versions"]["default_precision"], 256);
}

#[test]
fn chain_trig_and_exponential() {
    let v = json(&sturmion(&["chain", "--grid", "trig1", "--n", "2"]));
    assert_eq!(strs(&v["payload"]["b"]), ["0/1", "0/1", "0/1"]);
    assert_eq!(strs(&v["payload"]["u"]), ["1/4", "1/2"]);

    let v = json(&sturmion(&["chain", "--grid", "exp:q=1/2", "--n", "1"]));
    assert_eq!(strs(&v["payload"]["b"]), ["3/2", "3/2"]);
    assert_eq!(strs(&v["payload"]["u"]), ["1/4"]);

    let v = json(&sturmion(&["chain", "--grid", "quad", "--tau", "2", "--n", "1"]));
    assert_eq!(strs(&v["payload"]["u"]), ["9/4"]);
}

#[test]
fn chain_csv_and_determinism() {
    let a = sturmion(&["chain", "--grid", "linear", "--n", "2", "--format", "csv"]);
    let text = String::from_utf8(a.stdout.clone()).unwrap();
    assert_eq!(text.lines().next(), Some("n,b,u,node,primal_weight,dual_weight"));
    assert_eq!(text.lines().nth(1), Some("0,1/1,,0/1,1/6,1/3"));
    let b = sturmion(&["chain", "--grid", "linear", "--n", "2", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn count_examples() {
    let v = json(&sturmion(&["count", "--poly", "x^3-3x^2+2x", "--lo", "1/2", "--hi", "5/2"]));
    assert_eq!(v["payload"]["count"], 2);
    let v = json(&sturmion(&["count", "--poly", "x^3-3x^2+2x", "--lo", "-1", "--hi", "3"]));
    assert_eq!(v["payload"]["count"], 3);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| sturmion(args).status.code();
    assert_eq!(code(&["count", "--poly", "x^2+1", "--lo", "0", "--hi", "1"]), Some(4));
    assert_eq!(code(&["count", "--poly", "x^3-3x^2+2x", "--lo", "0", "--hi", "3"]), Some(5));
    assert_eq!(code(&["count", "--poly", "x^^2", "--lo", "0", "--hi", "3"]), Some(2));
    assert_eq!(code(&["chain", "--grid", "bogus", "--n", "2"]), Some(2));
    assert_eq!(code(&["chain", "--grid", "exp:q=1", "--n", "2"]), Some(2));
    assert_eq!(code(&["chain", "--grid", "bi:c1=0,c2=0,c0=1", "--n", "2"]), Some(3));
    assert_eq!(code(&["nonsense"]), Some(2));
}

#[test]
fn errors_go_to_stderr() {
    let out = sturmion(&["count", "--poly", "x^2+1", "--lo", "0", "--hi", "1"]);
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn verify_small() {
    let out = sturmion(&["verify", "--nmax", "2", "--q", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["payload"]["passed"], true);
    let reports = v["payload"]["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 14);
    let known: Vec<_> = reports.iter().filter(|r| r["status"]["status"] == "known-discrepancy").collect();
    assert_eq!(known.len(), 2);
    assert!(known.iter().all(|r| r["name"] == "quadratic-tau1-b-formula"));

    let minimal = json(&sturmion(&["verify", "--nmax", "1"]));
    assert_eq!(minimal["payload"]["reports"].as_array().unwrap().len(), 7);
}

#[test]
fn verify_full_suite_under_a_minute() {
    let start = Instant::now();
    let out = sturmion(&["verify", "--nmax", "12", "--q", "1/2", "--q", "2/3"]);
    assert!(start.elapsed() < Duration::from_secs(60), "{:?}", start.elapsed());
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_sturmion"))
        .args(["chain", "--grid", "trig2", "--n", "1"])
        .env("STURMION_PRECISION", "128")
        .output()
        .unwrap();
    assert_eq!(json(&out)["versions"]["precision"], 128);
}

#[test]
fn random_duality_is_seeded() {
    let a = sturmion(&["random", "--seed", "3", "--trials", "5"]);
    let b = sturmion(&["random", "--seed", "3", "--trials", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
