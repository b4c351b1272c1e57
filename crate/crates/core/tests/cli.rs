use std::io::Write;
use std::process::{Command, Output, Stdio};

fn distlat(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_distlat"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn golden(name: &str) -> String {
    format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn fence_pipeline_through_processes() {
    let fence = distlat(&["family", "fence", "3"], "");
    assert!(fence.status.success());
    let runs: Vec<Output> = (0..2)
        .map(|_| distlat(&["stats"], std::str::from_utf8(&fence.stdout).unwrap()))
        .collect();
    assert_eq!(runs[0].stdout, runs[1].stdout);
    let json: serde_json::Value = serde_json::from_slice(&runs[0].stdout).unwrap();
    assert_eq!(json["size"], 5);
    assert_eq!(json["q"], serde_json::json!([5, 5, 1]));
    assert_eq!(json["euler_ok"], true);
}

#[test]
fn cutting_on_file() {
    let o = distlat(&["cutting", &golden("z3.poset"), "--bottom", "101", "--top", "000"], "");
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "cutting: true (chains,union,order,star agree)\n");
}

#[test]
fn dot_matches_golden() {
    let o = distlat(&["export-dot", &golden("z3.poset")], "");
    assert_eq!(String::from_utf8(o.stdout).unwrap(), std::fs::read_to_string(golden("z3.dot")).unwrap());
}

#[test]
fn exit_codes() {
    assert_eq!(distlat(&["verify", "fibonacci", "--max", "10"], "").status.code(), Some(0));
    assert_eq!(distlat(&["no-such-command"], "").status.code(), Some(2));
    let bad = distlat(&["stats"], "element a\ncover a b\n");
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8(bad.stderr).unwrap().contains("line 2"));
}
