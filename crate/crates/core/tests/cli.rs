use std::process::{Command, Output};

fn clexp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clexp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn frobenius_audit_lists_3a_7a() {
    let o = clexp(&["audit", "name:Frob21"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("K = {3A 7A}  |<K>| = 21  soluble = true"), "{out}");
    assert!(out.contains("violations: 0"));
}

#[test]
fn audit_json_reports_soluble_spans() {
    let o = clexp(&["audit", "name:Frob21", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let text = v.to_string();
    assert!(text.contains("\"3A\",\"7A\""), "{text}");
    assert!(!text.contains("\"soluble\":false"));
}

#[test]
fn coset_square_of_pgammal2_8() {
    let o = clexp(&["square", "psigmal2:8,3", "--coset-of", "psl2:8"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("(yL)^2 = y^2 L: true"), "{out}");
    assert!(out.contains("D_yL = G \\ L:   true"), "{out}");
}

#[test]
fn dk_json() {
    let o = clexp(&["dk", "alt:5", "--classes", "5A", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["D_K"], serde_json::json!(["5A", "5B"]));
    assert_eq!(v["result"]["size"], "24");
}

#[test]
fn bad_input_exits_2() {
    for args in [
        &["classes", "psl2:6"][..],
        &["classes", "foo:3"],
        &["dk", "alt:5", "--classes", "9Z"],
        &["paper-suite", "--tier", "medium"],
        &["nonsense"],
    ] {
        let o = clexp(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn packaged_table_checks() {
    let o = clexp(&["ctbl", "check", "table:Alt5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Alt5: valid  order 60  5 classes"));
}

#[test]
fn suite_json_is_byte_identical_across_runs() {
    let dir = std::env::temp_dir().join(format!("clexp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut reports = Vec::new();
    for i in 0..2 {
        let path = dir.join(format!("run{i}.json"));
        let o = clexp(&["paper-suite", "--check", "lemma-2.1", "--seed", "7", "--json", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        reports.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(reports[0], reports[1]);
    let v: serde_json::Value = serde_json::from_slice(&reports[0]).unwrap();
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert!(!v["checksums"].as_array().unwrap().is_empty());
    assert_eq!(v["checks"][0]["seed"], 7);
    std::fs::remove_dir_all(&dir).ok();
}
