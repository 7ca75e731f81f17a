use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bigbracket")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_dual_pairing() {
    let o = run(&["eval", "-s", &fixture("sl2.space.json"), "[h',h]"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next(), Some("1"));
    let o = run(&["--json", "eval", "-s", &fixture("sl2.space.json"), "1/2*h'^e'^f - f'^e"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "1/2*h'^e'^f - f'^e");
    assert_eq!(v["total"], "mixed");
}

#[test]
fn check_exit_codes() {
    let s = fixture("sl2.space.json");
    let ok = run(&["check", "-s", &s, "-p", &fixture("sl2_bialgebra.package.json"), "--kind", "bialgebra"]);
    assert_eq!(code(&ok), 0, "{}", stdout(&ok));
    assert!(stdout(&ok).contains("ok   Eq22"));

    let bad = run(&["check", "-s", &s, "-p", &fixture("sl2_perturbed.package.json"), "--kind", "lie"]);
    assert_eq!(code(&bad), 1);
    assert!(stdout(&bad).contains("FAIL Eq31"));

    let support = run(&["check", "-s", &s, "-p", &fixture("sl2_bialgebra.package.json"), "--kind", "lie"]);
    assert_eq!(code(&support), 2);
    assert!(String::from_utf8_lossy(&support.stderr).contains("t12"));

    let kind = run(&["check", "-s", &s, "-p", &fixture("sl2_bialgebra.package.json"), "--kind", "banana"]);
    assert_eq!(code(&kind), 2);

    let quasi = run(&["--json", "check", "-s", &s, "-p", &fixture("sl2_quasi.package.json"), "--kind", "quasi"]);
    assert_eq!(code(&quasi), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&quasi)).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["checked"].as_array().unwrap().iter().any(|x| x == "quasi-3"));
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{ not json").unwrap();
    let b = broken.display().to_string();
    let o = run(&["eval", "-s", &b, "1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("malformed JSON"));
    let schema = dir.path().join("schema.json");
    std::fs::write(&schema, r#"{"field":"rational","generators":[{"name":"x"}]}"#).unwrap();
    let o = run(&["eval", "-s", &schema.display().to_string(), "1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("schema"));
    let o = run(&["eval", "-s", &fixture("sl2.space.json"), "h + + e"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 4"));
    let o = run(&["eval", "-s", &dir.path().join("missing.json").display().to_string(), "1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn classify_reports() {
    let s = fixture("sl2.space.json");
    let o = run(&["classify", "-s", &s, "-p", &fixture("sl2_bialgebra.package.json")]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("structure: Lie bialgebra"));
    assert!(out.contains("ungraded: strict"));
    let o = run(&["--json", "classify", "-s", &fixture("graded3.space.json"), "-p", &fixture("graded3_linf.package.json")]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["structure"], "L-infinity algebra");
}

#[test]
fn manin_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let triple = dir.path().join("triple.json").display().to_string();
    let back = dir.path().join("package.json").display().to_string();
    let s = fixture("sl2.space.json");
    let p = fixture("sl2_bialgebra.package.json");
    assert_eq!(code(&run(&["double", "-s", &s, "-p", &p, "-o", &triple])), 0);
    assert_eq!(code(&run(&["triple-to-package", "-i", &triple, "-o", &back])), 0);
    assert_eq!(std::fs::read_to_string(&back).unwrap(), std::fs::read_to_string(&p).unwrap());
    let o = run(&["double", "-s", &s, "-p", &fixture("sl2_perturbed.package.json"), "-o", &triple]);
    assert_eq!(code(&o), 1);
}

#[test]
fn brackets_table() {
    let o = run(&["brackets", "-s", &fixture("sl2.space.json"), "-p", &fixture("sl2_lie.package.json"), "--arity", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("[h, e] = 2*e"), "{}", stdout(&o));
}

#[test]
fn iad_square_detector_codes() {
    let o = run(&["iad-square", "-s", &fixture("solvable2.space.json"), "-p", &fixture("solvable2_bialgebra.package.json")]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("square:y: y"));
    let o = run(&["iad-square", "-s", &fixture("sl2.space.json"), "-p", &fixture("sl2_lie.package.json")]);
    assert_eq!(code(&o), 0);
}

#[test]
fn geom_oracle_is_seeded() {
    let s = fixture("graded3.space.json");
    let a = run(&["geom-oracle", "-s", &s, "--samples", "50", "--seed", "7"]);
    let b = run(&["geom-oracle", "-s", &s, "--samples", "50", "--seed", "7"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}
