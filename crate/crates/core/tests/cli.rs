//! End-to-end runs of the binary.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cfstammer"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

const FIB: &[&str] = &["--morphism", "0->01;1->0", "--start", "0"];
const FIB_CF: &[&str] = &["--morphism", "0->01;1->0", "--code", "0=>1;1=>2"];

fn with(base: &[&str], rest: &[&str]) -> Vec<String> {
    rest.iter().chain(base).map(|s| s.to_string()).collect()
}

fn run_v(args: Vec<String>) -> Output {
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    run(&refs)
}

#[test]
fn gen_coded_fibonacci() {
    let o = run(&[
        "gen", "--morphism", "0->01;1->0", "--start", "0", "--code", "0=>1;1=>2", "-n", "10",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1 2 1 1 2 1 2 1 1 2\n");
}

#[test]
fn gen_periodic_and_json() {
    assert_eq!(stdout(&run(&["gen", "--periodic", "1,2", "-n", "5"])), "1 2 1 2 1\n");
    let v = json(&run(&["gen", "--periodic", "1,2", "--preperiod", "3", "-n", "4", "--json"]));
    assert_eq!(v, serde_json::json!([3, 1, 2, 1]));
}

#[test]
fn gen_dfao_thue_morse() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tm.json");
    std::fs::write(
        &path,
        r#"{"base": 2, "states": 2, "initial": 0, "transitions": [[0,0,0],[0,1,1],[1,0,1],[1,1,0]], "output": [0, 1]}"#,
    )
    .unwrap();
    let o = run(&["gen", "--dfao", path.to_str().unwrap(), "-n", "13"]);
    assert_eq!(stdout(&o).replace(' ', "").trim(), "0110100110010");
}

#[test]
fn gen_cf_flag_rejects_zero() {
    let o = run_v(with(FIB, &["gen", "-n", "5", "--cf"]));
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}

#[test]
fn parse_errors_name_the_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.txt");
    std::fs::write(&path, "1 2 1\n1 2 z\n").unwrap();
    let o = run(&["gen", "--prefix-file", path.to_str().unwrap(), "-n", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2") && err.contains("column 5"), "{err}");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["gen", "-n", "3"]).status.code(), Some(1));
    assert_eq!(run(&["gen", "--periodic", "1", "--sturmian", "1", "-n", "3"]).status.code(), Some(1));
    assert_eq!(run(&["detect", "star", "--periodic", "1", "-n", "1"]).status.code(), Some(1));
    assert_eq!(run(&["detect", "star", "--periodic", "1,2", "--w", "1"]).status.code(), Some(1));
}

#[test]
fn detect_fibonacci() {
    let star = json(&run_v(with(FIB_CF, &["detect", "star", "--w", "2", "-n", "2000"])));
    let n_star = star["witnesses"].as_array().unwrap().len();
    assert!(n_star >= 5);
    assert_eq!(star["verdict"], "evidenced");
    let both = json(&run_v(with(
        FIB_CF,
        &["detect", "starstar", "--w", "2", "--wprime", "1", "-n", "2000"],
    )));
    assert!(both["witnesses"].as_array().unwrap().len() >= n_star);
    let periodic = json(&run(&["detect", "star", "--periodic", "1,2", "--w", "2", "-n", "1000"]));
    assert_eq!(periodic["verdict"], "periodic");
}

#[test]
fn certify_exit_codes() {
    let o = run_v(with(FIB_CF, &["certify", "t1", "-n", "2000"]));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdict"], "evidence_transcendental");
    let o = run(&["certify", "t2", "--periodic", "1,2", "-n", "1000"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["certify", "t2", "--periodic", "1,2", "-n", "10"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("growth gate"));
}

#[test]
fn subshift_complexity_csv() {
    let o = run_v(with(FIB, &["subshift", "complexity", "-n", "1000", "--n-max", "30", "--csv"]));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,p_n,p_n_minus_n,worst_gap,gap_ratio"));
    for (n, line) in (1..).zip(lines) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[0].parse::<usize>().unwrap(), n);
        assert_eq!(cols[1].parse::<usize>().unwrap(), n + 1);
    }
}

#[test]
fn subshift_recur_periodic() {
    let v = json(&run(&["subshift", "recur", "--periodic", "0,1", "-n", "1000", "-k", "auto"]));
    assert!(v["stats"]["c_hat"]["value"].as_f64().unwrap() <= 2.0);
    assert_eq!(v["stats"]["c_hat"]["approx"], true);
}

#[test]
fn subshift_thm3_and_thm5() {
    let v = json(&run(&["subshift", "thm3", "--morphism", "0->01;1->0", "--start", "0"]));
    let wits = v["witnesses"].as_array().unwrap();
    assert_eq!(wits.len(), 8);
    for w in wits {
        assert_eq!(w["verified"], true);
        let (p, q) = w["exponent"].as_str().unwrap().split_once('/').unwrap();
        assert!(2 * p.parse::<u64>().unwrap() >= 3 * q.parse::<u64>().unwrap());
    }
    let v = json(&run_v(with(FIB, &["subshift", "thm5", "-n", "3000", "-k", "3"])));
    for row in v["witnesses"].as_array().unwrap() {
        assert_eq!(row["meets_bound"], true);
    }
    let o = run(&["subshift", "thm5", "--prefix-file", "/nonexistent", "-n", "10"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let args = with(FIB_CF, &["certify", "t2", "--w", "2", "--wprime", "1", "-n", "1500"]);
    let direct = run_v(args.clone());
    let mut to_file = args;
    to_file.extend(["--out".to_string(), path.to_str().unwrap().to_string()]);
    let o = run_v(to_file);
    assert_eq!(o.status.code(), direct.status.code());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn deterministic_output() {
    for args in [
        with(FIB_CF, &["certify", "t1", "-n", "3000"]),
        with(FIB, &["subshift", "gap", "-n", "2000", "--csv"]),
        with(FIB_CF, &["detect", "starstar", "-n", "1000"]),
    ] {
        let a = run_v(args.clone());
        let b = run_v(args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.status.code(), b.status.code());
    }
}
