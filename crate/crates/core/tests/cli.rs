use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quiverhh"))
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn quiverhh")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let o = run(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn hh3(v: &serde_json::Value) -> Vec<u64> {
    v["hh"].as_array().unwrap()[..3].iter().map(|x| x.as_u64().unwrap()).collect()
}

#[test]
fn torus_s_report() {
    let v = json(&["report", "--family", "torus-s", "--q", "1", "--field", "rational", "--out", "json"]);
    assert_eq!(hh3(&v), [1, 2, 1]);
    assert_eq!(v["small_complex_dims"], serde_json::json!([42, 84, 42]));
    assert_eq!(v["checks"]["d_squared_zero"], true);
    assert_eq!(v["family"], "torus-s");
}

#[test]
fn p1p1_report() {
    let v = json(&["report", "--family", "p1p1", "--psi", "ee:1", "--field", "rational"]);
    assert_eq!(hh3(&v), [1, 3, 6]);
    assert_eq!(v["params"]["psi"], "ee:1");
}

#[test]
fn negative_q_is_accepted() {
    let v = json(&["report", "--family", "torus-c", "--q", "-1"]);
    assert_eq!(hh3(&v), [1, 2, 1]);
}

#[test]
fn reports_are_byte_identical() {
    let args = ["report", "--family", "kronecker", "--seed", "7"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn csv_and_text_outputs() {
    let o = run(&["report", "--family", "kronecker", "--out", "csv"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 2);
    assert!(s.starts_with("family,"));
    let o = run(&["report", "--family", "kronecker", "--out", "text"]);
    assert!(stdout(&o).contains("kronecker"));
}

#[test]
fn file_reports() {
    let v = json(&["report", "--file", &fixture("a3.quiver")]);
    assert_eq!(hh3(&v), [1, 0, 0]);
    let o = run(&["report", "--file", &fixture("crafted.quiver"), "--trace"]);
    assert!(o.status.success());
    assert!(!o.stderr.is_empty());
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(code(&["report", "--file", &fixture("malformed.quiver")]), 2);
    assert_eq!(code(&["report", "--family", "nope"]), 2);
    assert_eq!(code(&["report", "--family", "kronecker", "--q", "2"]), 2);
    assert_eq!(code(&["report", "--family", "p1p1", "--psi", "xx:1"]), 2);
    assert_eq!(code(&["report", "--file", &fixture("rewrite_cycle.quiver")]), 3);
    assert_eq!(code(&["report", "--file", &fixture("commuting_loops.quiver")]), 4);
    assert_eq!(code(&["check", "--tamper"]), 5);
}

#[test]
fn errors_go_to_stderr() {
    let o = run(&["report", "--file", &fixture("malformed.quiver")]);
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn fast_checks_pass() {
    let o = run(&["check", "--out", "json"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["failed"], 0);
}

#[test]
fn psi_examples_table() {
    let o = run(&["table", "psi-examples", "--out", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 10);
}

#[test]
fn torus_sweep_table() {
    let o = run(&["table", "torus-sweep", "--field", "fp:7", "--q", "1,2", "--out", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn export_roundtrip() {
    let o = run(&["export", "--family", "pi"]);
    assert!(o.status.success());
    let dir = std::env::temp_dir().join(format!("quiverhh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pi.quiver");
    std::fs::write(&path, &o.stdout).unwrap();
    let from_file = json(&["report", "--file", path.to_str().unwrap()]);
    let from_family = json(&["report", "--family", "pi"]);
    assert_eq!(from_file["hh"], from_family["hh"]);
    assert_eq!(from_file["bar_complex_dims"], from_family["bar_complex_dims"]);
    std::fs::remove_dir_all(&dir).unwrap();
}
