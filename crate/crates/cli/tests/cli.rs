use std::process::{Command, Output};

fn pvkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pvkit"))
        .args(args)
        .env_remove("PVKIT_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn diagram_golden() {
    let o = pvkit(&["diagram", "--type", "C", "--rank", "7", "--circle", "1,7"]);
    assert!(o.status.success());
    let expected = "\
C7{1,7}
(o)---o---o---o---o---o=<=(o)

Levi: A5 x C^2
graded dims: d1=27 d2=6 d3=1
component at 1: w1[A5] (dim 6)
component at 7: 2w5[A5] (dim 21)
commutative parabolic: -
";
    assert_eq!(stdout(&o), expected);
}

#[test]
fn diagram_json_and_errors() {
    let o = pvkit(&["diagram", "--type", "e", "--rank", "7", "--circle", "7", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["graded_dims"], serde_json::json!([[1, 27]]));
    assert_eq!(v["commutative_parabolic"], true);
    let bad = pvkit(&["diagram", "--type", "C", "--rank", "3", "--circle", "4"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn run_json_is_one_line() {
    let o = pvkit(&["run", "--entry", "T2.6", "--param", "n=3", "--seed", "0", "--format", "json"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["entry"], "T2.6");
    assert_eq!(v["parameters"]["n"], 3);
    assert_eq!(v["character_dim"], 1);
    assert_eq!(v["regular"], true);
    assert_eq!(v["diff"], serde_json::json!([]));
    assert!(v.get("elapsed_ms").is_none());
    let timed = pvkit(&["run", "--entry", "T2.6", "--param", "n=3", "--format", "json", "--timings"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&timed)).unwrap();
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn seed_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_pvkit"))
        .args(["run", "--entry", "T2.1", "--format", "json"])
        .env("PVKIT_SEED", "17")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["seed"], 17);
    let o = Command::new(env!("CARGO_BIN_EXE_pvkit"))
        .args(["run", "--entry", "T2.1", "--format", "json", "--seed", "3"])
        .env("PVKIT_SEED", "17")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["seed"], 3);
}

#[test]
fn bad_requests_exit_with_two() {
    assert_eq!(pvkit(&["run", "--entry", "T9.9"]).status.code(), Some(2));
    assert_eq!(pvkit(&["run", "--entry", "T3.2a", "--param", "n=3"]).status.code(), Some(2));
    assert_eq!(pvkit(&["run", "--entry", "T2.1", "--param", "k=3"]).status.code(), Some(2));
    assert_eq!(pvkit(&["run-all", "--filter", "table4"]).status.code(), Some(2));
}

#[test]
fn run_all_is_reproducible() {
    let args = ["run-all", "--filter", "table3", "--jobs", "2", "--format", "json"];
    let a = pvkit(&args);
    let b = pvkit(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    let last: serde_json::Value = serde_json::from_str(out.lines().last().unwrap()).unwrap();
    assert_eq!(last["summary"]["total"], 22);
    assert_eq!(last["summary"]["passed"], 22);
    assert_eq!(out.lines().count(), 23);
}

#[test]
fn list_and_table1() {
    let o = pvkit(&["list"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 34);
    let o = pvkit(&["list", "--format", "json"]);
    let first: serde_json::Value = serde_json::from_str(stdout(&o).lines().next().unwrap()).unwrap();
    assert_eq!(first["entry"], "T2.1");
    let o = pvkit(&["table1"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().filter(|l| !l.starts_with(' ')).all(|l| l.contains("PASS")));
}
