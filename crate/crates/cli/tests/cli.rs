use std::process::{Command, Output};

fn gcf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcf")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn eval_finite_golden() {
    let o = gcf(&["eval", "--simple", "1x10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "89/55");
}

#[test]
fn eval_json_output() {
    let o = gcf(&["-f", "json", "eval", "--simple", "1x10"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], "89/55");
    assert_eq!(v["depth"], 10);
}

#[test]
fn eval_limit() {
    let o = gcf(&["eval", "-a", "n+3", "-b", "-n", "-p", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("3.784422382354665628"));
}

#[test]
fn zero_tail_exits_two() {
    assert_eq!(gcf(&["eval", "--pairs", "1:1,0:1"]).status.code(), Some(2));
}

#[test]
fn family_one() {
    let o = gcf(&["family", "1", "--a", "-1", "--k", "3", "-p", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("3.7844223823546656288"));
}

#[test]
fn family_bad_params_is_usage_error() {
    assert_eq!(gcf(&["family", "3", "--k", "1"]).status.code(), Some(4));
    assert_eq!(gcf(&["eval", "--simple", "1x10", "-p", "5"]).status.code(), Some(4));
    assert_eq!(gcf(&["nonsense"]).status.code(), Some(4));
}

#[test]
fn verify_pass_and_mismatch() {
    let ok = gcf(&[
        "verify",
        "-a",
        "3n",
        "-b",
        "n - 2n^2",
        "--constant",
        "pi",
        "--mobius",
        "4,0,-8,3",
        "-p",
        "30",
    ]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
    assert_eq!(
        gcf(&["verify", "-a", "n+3", "-b", "-n", "--value", "2.8"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn convergents_csv() {
    let o = gcf(&["-f", "csv", "convergents", "-a", "1", "-b", "1", "-K", "3"]);
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "depth,p,q,value,decimal");
    assert_eq!(lines[3], "3,3,2,3/2,1.5");
}

#[test]
fn scan_writes_jsonl() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.jsonl");
    let o = gcf(&[
        "scan",
        "--max-degree",
        "1",
        "--coeff-bound",
        "3",
        "--constants",
        "e",
        "-p",
        "30",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let body = std::fs::read_to_string(&out).unwrap();
    assert!(body.lines().skip(1).any(|l| {
        let v: serde_json::Value = serde_json::from_str(l).unwrap();
        v["a"] == serde_json::json!([3, 1]) && v["mobius"] == serde_json::json!([0, 1, -2, 1])
    }));
}

#[test]
fn report_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.md");
    let o = gcf(&[
        "report",
        "2",
        "--a",
        "4",
        "--b",
        "6",
        "-p",
        "30",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("PASS"));
    assert!(!text.contains("FAIL"));
}
