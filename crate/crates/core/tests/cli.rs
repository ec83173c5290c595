//! End-to-end runs of the `cube-orbits` binary.

use std::process::{Command, Output};

use cube_orbits::cli::{OutputRecord, Payload};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cube-orbits"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["table", "lambda-v", "--format", "json"][..],
        &["orbits", "lambda", "7", "edges"],
        &["verify", "bijections", "--max", "8", "--format", "csv"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(a.status.success());
    }
}

#[test]
fn json_round_trips_byte_for_byte() {
    for args in [
        &["table", "gamma-e", "--format", "json"][..],
        &["orbits", "gamma", "4", "vertices", "--format", "json"],
        &["orbits", "gamma", "0", "vertices", "--format", "json"],
        &["witness", "vertex-orbit-size", "12", "24", "--format", "json"],
        &["verify", "automorphisms", "--max", "5", "--format", "json"],
    ] {
        let text = stdout(&run(args));
        let record = OutputRecord::from_json(&text).unwrap();
        assert_eq!(record.to_json(), text, "{args:?}");
    }
}

#[test]
fn counts_are_decimal_strings_in_json() {
    let text = stdout(&run(&["table", "lucas-classes", "--max", "3", "--format", "json"]));
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["command"], "table");
    assert_eq!(value["parameters"]["max"], "3");
    assert_eq!(value["result"]["rows"][0]["values"], serde_json::json!(["1", "3", "4"]));
}

#[test]
fn orbit_listings() {
    let out = stdout(&run(&["orbits", "lambda", "5", "edges"]));
    assert_eq!(out, "{00000,00001} 5\n{00001,00101} 10\n2 orbits\n");
    let record = OutputRecord::from_json(&stdout(&run(&["orbits", "lambda", "5", "edges", "--format", "json"]))).unwrap();
    let Payload::Orbits(o) = record.result else { panic!() };
    let sizes: Vec<&str> = o.orbits.iter().map(|e| e.size.as_str()).collect();
    assert_eq!(sizes, ["5", "10"]);
    assert_eq!(stdout(&run(&["orbits", "gamma", "2", "vertices", "--format", "csv"])), "representative,size\n00,1\n01,2\n");
}

#[test]
fn witness_output() {
    let out = run(&["witness", "asymmetric", "9"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("101001000\norbit size 18"));
    let out = run(&["witness", "asymmetric", "8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no asymmetric Lucas string exists for n < 9"));
    let out = run(&["witness", "vertex-orbit-size", "9", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["verify", "automorphisms", "--max", "7"]).status.code(), Some(0));
    assert_eq!(run(&["table", "no-such-table"]).status.code(), Some(2));
    assert_eq!(run(&["table", "gamma-v", "--max", "ten"]).status.code(), Some(2));
    assert_eq!(run(&["orbits", "gamma", "40", "vertices"]).status.code(), Some(2));
    let refused = run(&["verify", "oracle-vs-formula", "--max", "40"]);
    assert_eq!(refused.status.code(), Some(2));
    assert!(stdout(&refused).contains("REFUSED"));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_all_beyond_bounds_refuses_but_runs_formulas() {
    let out = run(&["verify", "all", "--max", "40"]);
    let text = stdout(&out);
    assert!(text.contains("[formulas] max n = 40: PASS"));
    assert!(text.contains("[oracle-vs-formula] REFUSED"));
    assert!(text.contains("[automorphisms] REFUSED"));
    assert_eq!(out.status.code(), Some(2));
}
