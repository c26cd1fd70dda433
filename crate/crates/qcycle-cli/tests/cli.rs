//! End-to-end checks of the command-line surface: flags, formats, exit codes.

use std::process::Command;

fn qcycle(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qcycle"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qcycle(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn prob_semisimple_gl22() {
    let text = stdout(&["prob", "--family", "GL", "--n", "2", "--q", "2", "--property", "semisimple"]);
    assert!(text.contains("1/2"), "{text}");
}

#[test]
fn limit_rss_gl() {
    let text = stdout(&["limit", "--kind", "rss-GL", "--q", "2"]);
    assert!(text.contains("0.5000000000"), "{text}");
}

#[test]
fn certify_sp23_reports_pass() {
    let text = stdout(&["certify", "--family", "Sp", "--n", "2", "--q", "3"]);
    assert!(text.contains("PASS"), "{text}");
    assert!(text.contains("7 classes"), "{text}");
    assert!(text.contains("24 elements"), "{text}");
}

#[test]
fn classes_json_roundtrips() {
    let text = stdout(&["classes", "--family", "GL", "--n", "2", "--q", "2", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["total"], "6");
    assert_eq!(doc["classes"].as_array().unwrap().len(), 3);
}

#[test]
fn prob_csv_has_documented_columns() {
    let text = stdout(&[
        "prob", "--family", "Mat", "--n", "3", "--q", "2", "--property", "regular", "--format", "csv",
    ]);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "family,n,q,property,exact,decimal");
    assert!(lines.next().unwrap().starts_with("Mat,3,2,regular,"));
}

#[test]
fn irred_count_matches_formula() {
    let text = stdout(&["irred", "count", "--q", "3", "--m", "4"]);
    assert!(text.contains("18"), "{text}");
    let text = stdout(&["irred", "count", "--q", "2", "--m", "3", "--self-tilde"]);
    assert!(text.contains('2'), "{text}");
}

#[test]
fn domain_errors_exit_one() {
    let out = qcycle(&["prob", "--family", "Sp", "--n", "2", "--q", "4", "--property", "regular"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn budget_errors_exit_two() {
    let out = qcycle(&["certify", "--family", "Sp", "--n", "4", "--q", "3", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_file_flag() {
    let dir = std::env::temp_dir().join(format!("qcycle-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("weyl.csv");
    let _ = stdout(&[
        "weyl", "--n", "2", "--q-list", "2,3", "--format", "csv", "--output",
        path.to_str().unwrap(),
    ]);
    let content = std::fs::read_to_string(&path).unwrap();
    assert!(content.starts_with("n,q,tv_exact"), "{content}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn charpoly_and_avg_order() {
    let text = stdout(&["charpoly", "--family", "GL", "--q", "2", "--poly", "1,1,1"]);
    assert!(text.lines().nth(1).unwrap().contains('2'), "{text}");
    let text = stdout(&["avg-order-bound", "--family", "Sp", "--n", "2", "--q", "3"]);
    assert!(text.contains('1'), "{text}");
}

#[test]
fn gordon_subcommand() {
    let text = stdout(&["gordon", "--k", "2", "--i", "2", "--max-degree", "20", "--corollary"]);
    assert!(text.contains("EQUAL"), "{text}");
}

#[test]
fn jordan_mean_table() {
    let text = stdout(&["jordan-mean", "--family", "GL", "--q", "2", "--n-max", "3"]);
    assert!(text.contains("5/3"), "{text}");
    assert!(text.contains("44/21"), "{text}");
}
