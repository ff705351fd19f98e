use serde_json::Value;
use std::process::Command;

fn torelli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_torelli")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn types_prints_a_passing_report() {
    let (code, out, _) = torelli(&["types"]);
    assert_eq!(code, 0);
    let r: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["command"], "types");
    assert_eq!(r["verdicts"]["types.count.dim1"], 6);
    assert_eq!(r["mismatches"].as_array().unwrap().len(), 0);
    for key in ["config", "data", "timing_ms", "tool_version"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn json_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("torelli-cli-{}.json", std::process::id()));
    let (code, out, _) = torelli(&["check", "d31", "--K", "5", "--json", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("check.d31.injective: true"));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["config"]["k"], 5);
    assert_eq!(r["data"]["d31"]["rank"], r["data"]["d31"]["columns"]);
    std::fs::remove_file(path).ok();
}

#[test]
fn ladder_and_lantern_pass() {
    assert_eq!(torelli(&["ladder", "--mn", "2,3", "--K", "3"]).0, 0);
    let (code, out, _) = torelli(&["ladder", "--mn", "3,2"]);
    assert_eq!(code, 0);
    let r: Value = serde_json::from_str(&out).unwrap();
    assert!(r["verdicts"].get("ladder.psi_matches").is_none());
    assert_eq!(torelli(&["lantern", "verify", "--suite", "default", "--seed", "7"]).0, 0);
}

#[test]
fn invalid_input_exits_with_two() {
    assert_eq!(torelli(&["check", "d99"]).0, 2);
    assert_eq!(torelli(&["ladder", "--mn", "2"]).0, 2);
    assert_eq!(torelli(&["lantern", "verify", "--suite", "other"]).0, 2);
    let (code, _, err) = torelli(&["ladder", "--mn", "2,4"]);
    assert_eq!(code, 2, "{err}");
}
