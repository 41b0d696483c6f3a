use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arithcx"))
        .args(args)
        .env_remove("RH_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn complex_prints_reference_matrices() {
    let o = run(&["complex", "--w0", "x", "--tail", "1,1,1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("[ 2 -2 x+1 ]"));
    assert!(s.contains("[ -3   0 C(x+2,2) ]"));

    let v = json(&["complex", "--w0", "-x-6", "--tail", "1,1,1", "--format", "json"]);
    let d3 = &v["complex"]["differentials"][2]["matrix"];
    assert_eq!(d3["rows"], 3);
    assert_eq!(v["complex"]["weights"]["w0"], "-x-6");
}

#[test]
fn complex_specializations() {
    let o = run(&["complex", "--w0", "5", "--tail", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&[
        "complex", "--w0", "x", "--tail", "1", "--at", "3", "--mod", "2", "--format", "json",
    ]);
    assert_eq!(v["complex"]["ring"], "Fp:2");
    let latex = stdout(&run(&["complex", "--w0", "x", "--tail", "1", "--format", "latex"]));
    assert!(latex.starts_with("\\partial_{1} = \\begin{bmatrix}"));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["complex", "--w0", "2x"][..],
        &["complex", "--w0", "x", "--tail", "1,a"],
        &["complex", "--w0", "x", "--tail", "1", "--mod", "2"],
        &["complex", "--w0", "3", "--tail", "1", "--mod", "4"],
        &["complex", "--w0", "x", "--format", "csv"],
        &["iso", "--d", "2", "--golden"],
        &["homology", "--w0", "x", "--tail", "1"],
        &["sheaf", "two-column", "--m", "1", "--d", "2"],
        &["sheaf", "ribbon", "--lambda", "2,2"],
        &["sheaf", "ribbon", "--columns", "0,1"],
        &["bogus"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn iso_golden_passes() {
    let v = json(&["iso", "--d", "3", "--golden", "--format", "json"]);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["pass"] == true));
    assert_eq!(v["alpha"].as_array().unwrap().len(), 4);
    assert_eq!(v["alpha"][1]["matrix"]["entries"][1][2], -3);
}

#[test]
fn verify_and_iso_pass() {
    assert_eq!(run(&["verify", "--max-d", "3"]).status.code(), Some(0));
    assert_eq!(run(&["iso", "--d", "4", "--at", "-2"]).status.code(), Some(0));
}

#[test]
fn homology_formats() {
    let csv = stdout(&run(&[
        "homology", "--w0", "x", "--tail", "1,1", "--at", "-7", "--format", "csv",
    ]));
    assert_eq!(csv, "k,free_rank,torsion\n0,0,2\n1,0,5\n2,0,\n");
    let v = json(&["homology", "--w0", "4", "--tail", "1", "--mod", "5", "--format", "json"]);
    assert_eq!(v["coefficients"], "F_5");
    assert_eq!(v["homology"][0]["dimension"], 1);
    let q = json(&["homology", "--w0", "4", "--tail", "1", "--rational", "--format", "json"]);
    assert_eq!(q["homology"][0]["dimension"], 0);
}

#[test]
fn sheaf_commands() {
    let v = json(&[
        "sheaf", "ribbon", "--lambda", "4,4,3,3", "--mu", "3,2,2", "--format", "json",
    ]);
    assert_eq!(v["columns"], serde_json::json!([1, 1, 3, 2]));
    let r = json(&["sheaf", "ribbon", "--columns", "3,1", "--format", "json"]);
    assert_eq!(r["cohomology"][1]["i"], 4);
    assert_eq!(r["cohomology"][1]["group"]["torsion"][0], 4);

    let o = run(&["sheaf", "two-column", "--m", "3", "--d", "2", "--check-duality"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("2/2 checks passed"));
    let f = json(&[
        "sheaf",
        "two-column",
        "--m",
        "3",
        "--d",
        "2",
        "--mod",
        "2",
        "--check-duality",
        "--format",
        "json",
    ]);
    assert!(f["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    let latex = stdout(&run(&[
        "sheaf",
        "two-column",
        "--m",
        "2",
        "--d",
        "1",
        "--format",
        "latex",
    ]));
    assert!(latex.contains("\\begin{tabular}"));
}

#[test]
fn identities_are_reproducible() {
    let a = run(&["identities", "--seed", "42", "--count", "300", "--format", "json"]);
    let b = run(&["identities", "--seed", "42", "--count", "300", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 42);
    assert!(v["failures"].as_array().unwrap().is_empty());

    let env = Command::new(env!("CARGO_BIN_EXE_arithcx"))
        .args(["identities", "--count", "10", "--format", "json"])
        .env("RH_SEED", "7")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&env.stdout).unwrap();
    assert_eq!(v["seed"], 7);
}

#[test]
fn output_is_deterministic() {
    let args = ["sheaf", "ribbon", "--columns", "1,1,3,2", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
