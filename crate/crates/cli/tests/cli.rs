use std::process::{Command, Output};

use serde_json::Value;

fn affmult(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affmult")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = affmult(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn tau_prints_count_and_shapes() {
    let o = affmult(&["tau", "--n", "2", "--i", "1", "--eta", "6,6,5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("tau = 5\n"));
    for shape in ["(15,2)", "(12,5)", "(9,8)", "(9,3,3,1,1)", "(6,5,4,1,1)"] {
        assert!(text.contains(shape), "{shape} missing from\n{text}");
    }
}

#[test]
fn socle_example() {
    let o = affmult(&["socle", "--n", "2", "--level", "2", "--mu", "2,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("2Λ1, degree 0\n"));
}

#[test]
fn verify_reports_all_pass() {
    let o = affmult(&["verify", "--n", "1..3", "--eta0-max", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let first = text.lines().next().unwrap();
    let (passed, total) = first.split_once(" instances").unwrap().0.split_once('/').unwrap();
    assert_eq!(passed, total);
    assert!(!text.contains("FAIL"));
}

#[test]
fn json_schema_and_determinism() {
    let args = ["multiplicity", "--n", "2", "--i", "1", "--cvals", "0,0,2", "--degree", "-6"];
    let doc = json(&args);
    let keys: Vec<&str> = doc.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "params", "provenance", "result"]);
    assert_eq!(doc["command"], "multiplicity");
    assert!(doc["provenance"]["formula"].is_string());
    assert_eq!(doc["result"]["multiplicity"], 5);
    assert_eq!(doc["params"]["xi"]["degree"], "-6");

    let mut with_format = args.to_vec();
    with_format.extend(["--format", "json"]);
    let a = affmult(&with_format).stdout;
    let b = affmult(&with_format).stdout;
    assert_eq!(a, b);
    let reparsed: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(serde_json::to_string_pretty(&reparsed).unwrap() + "\n", String::from_utf8(a).unwrap());
}

#[test]
fn verify_output_does_not_depend_on_thread_count() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_affmult"))
            .args(["verify", "--n", "1..2", "--eta0-max", "3", "--format", "json"])
            .env("AFFMULT_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(run("zero").status.code(), Some(2));
}

#[test]
fn every_command_has_json_output() {
    let cases: [&[&str]; 9] = [
        &["tau", "--n", "1", "--i", "0", "--eta", "0,0"],
        &["socle", "--n", "1", "--level", "1", "--mu", "2"],
        &["orbit", "--n", "2", "--level", "2", "--mu", "4,2"],
        &["gamma", "--n", "2", "--i", "1", "--cvals", "0,0,2", "--degree", "-6"],
        &["flag-mult", "--n", "1", "--lambda", "4", "--mu", "0"],
        &["multiplicity", "--n", "1", "--i", "1", "--cvals", "1,1", "--degree", "0", "--oracle"],
        &["limit", "--n", "1", "--i", "0", "--cvals", "2,0", "--degree", "-2"],
        &["tensor-general", "--n", "2", "--i", "1", "--j", "2", "--depth", "2", "--oracle"],
        &["verify", "--n", "1", "--eta0-max", "2"],
    ];
    for args in cases {
        let doc = json(args);
        assert_eq!(doc["command"], args[0]);
    }
}

#[test]
fn flag_coefficient_and_polynomial() {
    let doc = json(&["flag-mult", "--n", "1", "--lambda", "2", "--mu", "0"]);
    assert_eq!(doc["result"]["terms"][0]["exponent"], "1");
    assert_eq!(doc["result"]["terms"][0]["coefficient"], 1);
    let doc = json(&["flag-mult", "--n", "1", "--lambda", "2", "--mu", "0", "--r", "1"]);
    assert_eq!(doc["result"]["coefficient"], 1);
}

#[test]
fn limit_reports_stabilization() {
    let doc = json(&["limit", "--n", "2", "--i", "1", "--cvals", "0,0,2", "--degree", "-6"]);
    assert_eq!(doc["result"]["value"], 5);
    assert_eq!(doc["result"]["stabilized"], true);
    let short = affmult(&["limit", "--n", "2", "--i", "1", "--cvals", "0,0,2", "--degree", "-6", "--k-max", "3"]);
    assert_eq!(short.status.code(), Some(0));
    assert!(stdout(&short).contains("not stabilized"));
}

#[test]
fn csv_has_header_and_rows() {
    let o = affmult(&["tau", "--n", "2", "--i", "1", "--eta", "6,6,5", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("shape,size"));
    assert_eq!(lines.count(), 5);
}

#[test]
fn validation_errors_exit_two_and_name_the_parameter() {
    let cases: [(&[&str], &str); 6] = [
        (&["tau", "--n", "2", "--i", "3", "--eta", "1,1,1"], "--i"),
        (&["tau", "--n", "2", "--i", "1", "--eta", "1,1"], "--eta"),
        (&["tau", "--n", "2", "--i", "1", "--eta", "1,0,0"], "--eta"),
        (&["socle", "--n", "2", "--level", "0", "--mu", "1,0"], "--level"),
        (&["multiplicity", "--n", "2", "--i", "1", "--cvals", "1,0,0"], "--cvals"),
        (&["gamma", "--n", "0", "--i", "0", "--cvals", "2"], "--n"),
    ];
    for (args, name) in cases {
        let o = affmult(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains(name), "{args:?}: {err}");
    }
    let o = affmult(&["verify", "--n", "3..1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = affmult(&["multiplicity", "--n", "1", "--i", "0", "--cvals", "2,0", "--degree", "x/2"]);
    assert_eq!(o.status.code(), Some(2));
}
