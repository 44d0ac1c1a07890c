use serde_json::Value;
use std::process::{Command, Output};

fn sieved(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sieved"))
        .args(args)
        .env_remove("SIEVED_N")
        .env_remove("SIEVED_ALPHA")
        .env_remove("SIEVED_BETA")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn eigen_l_passes_with_json_report() {
    let o = sieved(&["check", "eigen-l", "--alpha", "0.5", "--beta", "1.5", "--N", "3", "--nmax", "40", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suite"], "eigen-l");
    assert_eq!(v["params"]["N"], 3);
    assert_eq!(v["params"]["nmax"], 40);
    assert_eq!(v["pass"], true);
    assert!(v["max_residual"].as_f64().unwrap() < 1e-8);
    assert!(v["details"].as_array().unwrap().len() >= 2);
    for key in ["seed", "tolerance", "samples"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn identities_pass() {
    let o = sieved(&["check", "identities", "--N", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for name in ["E_k = 0", "B(z) + B(q^k/z)", "geometric root sum"] {
        assert!(text.contains(name), "{name} missing from\n{text}");
    }
}

#[test]
fn invalid_verblunsky_parameters_are_data_errors() {
    let o = sieved(&["check", "eigen-l", "--alpha", "5", "--beta", "-1.4", "--N", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("a_0"));
    let o = sieved(&["table", "verblunsky", "--alpha", "5", "--beta", "-1.4"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors() {
    assert_eq!(sieved(&["check", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(sieved(&["check", "eigen-l", "--N", "0"]).status.code(), Some(2));
    assert_eq!(sieved(&["check", "eigen-l", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(sieved(&["check", "eigen-l", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(sieved(&["check", "eigen-l", "--bogus"]).status.code(), Some(2));
    assert_eq!(sieved(&["table", "recurrence-u", "--family", "nope"]).status.code(), Some(2));
    // the sieved ultraspherical families need α = β
    let o = sieved(&["table", "recurrence-u", "--family", "sieved_ultra_1", "--alpha", "0.3", "--beta", "1.7", "--N", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failing_check_exits_one() {
    let o = sieved(&["check", "eigen-h", "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn verblunsky_table_csv() {
    let o = sieved(&["table", "verblunsky", "--alpha", "0", "--beta", "0", "--N", "1", "--nmax", "5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,a_n"));
    let values: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    let want = [0.0, -1.0 / 3.0, 0.0, -1.0 / 5.0, 0.0, -1.0 / 7.0];
    assert_eq!(values.len(), want.len());
    for (a, b) in values.iter().zip(want) {
        assert!((a - b).abs() < 1e-15);
    }
}

#[test]
fn eigenvalue_table_json() {
    let o = sieved(&["table", "eigenvalues", "--alpha", "0", "--beta", "0", "--N", "2", "--nmax", "4", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let lambdas: Vec<f64> = v["rows"].as_array().unwrap().iter().map(|r| r["lambda_n"].as_f64().unwrap()).collect();
    assert_eq!(lambdas, vec![0.0, 3.0, -1.0, 4.0, -2.0]);
}

#[test]
fn recurrence_table_pattern() {
    let o = sieved(&["table", "recurrence-u", "--family", "sieved_ultra_1", "--alpha", "0.5", "--beta", "0.5", "--N", "3", "--nmax", "8", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let u: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.split(',').nth(1).unwrap().to_string()).collect();
    assert_eq!(u[0], "0.0");
    assert_eq!(u[2], "1.0");
    assert_eq!(u[5], "1.0");
    assert_eq!(u[8], "1.0");
}

#[test]
fn output_is_deterministic_across_runs_and_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..3).map(|i| dir.path().join(format!("r{i}.json"))).collect();
    let base = ["check", "selfadjoint", "algebra", "--alpha", "0.5", "--beta", "0.5", "--N", "3", "--format", "json", "--out"];
    for (i, path) in paths.iter().enumerate() {
        let mut args: Vec<&str> = base.to_vec();
        args.push(path.to_str().unwrap());
        if i == 2 {
            args.extend(["--workers", "1"]);
        }
        let o = sieved(&args);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty());
    }
    let bytes: Vec<Vec<u8>> = paths.iter().map(|p| std::fs::read(p).unwrap()).collect();
    assert_eq!(bytes[0], bytes[1]);
    assert_eq!(bytes[0], bytes[2]);
    let v: Value = serde_json::from_slice(&bytes[0]).unwrap();
    let suites: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["suite"].as_str().unwrap()).collect();
    assert_eq!(suites, vec!["selfadjoint", "algebra"]);
}

#[test]
fn environment_overrides() {
    let o = Command::new(env!("CARGO_BIN_EXE_sieved"))
        .args(["table", "verblunsky", "--nmax", "3", "--format", "csv"])
        .env("SIEVED_N", "2")
        .env("SIEVED_ALPHA", "0")
        .env("SIEVED_BETA", "0")
        .output()
        .unwrap();
    // sieving by 2 leaves a_0 = a_2 = 0 and moves a_0 of the base sequence to a_1
    let rows: Vec<String> = String::from_utf8(o.stdout).unwrap().lines().skip(1).map(String::from).collect();
    assert_eq!(rows, vec!["0,0.0", "1,0.0", "2,0.0", "3,-0.3333333333333333"]);
}

#[test]
fn csv_report_has_header_and_a_row_per_detail() {
    let o = sieved(&["check", "cmv", "--N", "2", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("suite,alpha,beta,N,nmax,detail,residual,tolerance,pass,asserted"));
    assert!(lines.all(|l| l.starts_with("cmv,0.5,1.5,2,12,")));
}
