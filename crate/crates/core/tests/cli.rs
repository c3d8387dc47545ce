use std::process::{Command, Output};

fn fqdisc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fqdisc"))
        .args(args)
        .env_remove("DISC_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = fqdisc(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn table_text_marks_hypothesis_degrees() {
    let text = stdout(&["table", "--q", "3", "--min-deg", "2", "--max-deg", "5", "--mode", "all"]);
    assert!(text.contains("deg2*"));
    let rows: Vec<&str> = text.lines().filter(|l| l.trim_start().starts_with(char::is_numeric)).collect();
    assert_eq!(rows.len(), 3);
    for row in rows {
        let cells: Vec<&str> = row.split_whitespace().collect();
        assert_eq!(&cells[1..], &["3", "9", "27", "81"]);
    }
}

#[test]
fn irreducible_table_skips_zero_row() {
    let csv = stdout(&["table", "--q", "5", "--min-deg", "4", "--max-deg", "4", "--mode", "irr", "--format", "csv"]);
    assert_eq!(csv, "disc,deg4\n1,0\n2,95\n3,55\n4,0\n");
}

#[test]
fn table_json_records() {
    let json = stdout(&["table", "--q", "4", "--min-deg", "2", "--max-deg", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v[0]["p"], 2);
    assert_eq!(v[0]["k"], 2);
    assert_eq!(v[0]["modulus"], serde_json::json!([1, 1]));
    assert_eq!(v[1]["m"], 3);
    assert_eq!(v[1]["mode"], "all");
    assert!(v[0].get("partition").is_none());
}

#[test]
fn cache_hit_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["table", "--q", "7", "--min-deg", "2", "--max-deg", "4", "--cache-dir", d];
    let cold = stdout(&args);
    let files = std::fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(files, 3);
    assert_eq!(stdout(&args), cold);
    let out = Command::new(env!("CARGO_BIN_EXE_fqdisc"))
        .args(&args[..7])
        .env("DISC_CACHE_DIR", d)
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), cold);
}

#[test]
fn unwritable_cache_only_warns() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let out = fqdisc(&["table", "--q", "3", "--max-deg", "3", "--cache-dir", blocker.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn type_census_examples() {
    let text = stdout(&["type-census", "--q", "3", "--partition", "1,1,1"]);
    assert!(text.contains("total: 1"));
    assert!(text.contains("support: {1}"));
    let text = stdout(&["type-census", "--q", "5", "--partition", "3"]);
    assert!(text.contains("support: {1, 4}"));
    assert!(text.contains("yes (20 each)"));
    let text = stdout(&["type-census", "--q", "5", "--partition", "1,1,1,1,1,1"]);
    assert!(text.contains("empty"));
    assert!(!fqdisc(&["type-census", "--q", "5", "--partition", "1,0"]).status.success());
}

#[test]
fn verify_examples() {
    let text = stdout(&["verify", "--q", "5", "--max-deg", "6", "--checks", "thm11"]);
    for m in [2, 3, 6] {
        assert!(text.contains(&format!("thm11 m={m}: pass (all monic uniform")));
    }
    let text = stdout(&["verify", "--q", "4", "--max-deg", "5", "--checks", "thm12"]);
    assert!(text.contains("thm12 m=5: pass (all monic uniform"));
    stdout(&["verify", "--q", "7", "--max-deg", "5", "--checks", "stickelberger,musums,disczero"]);
    stdout(&["verify", "--q", "9", "--max-deg", "4"]);
    stdout(&["verify", "--q", "8", "--max-deg", "4"]);
    let out = fqdisc(&["verify", "--q", "4", "--max-deg", "3", "--checks", "stickelberger"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn surject_examples() {
    let text = stdout(&["surject", "--q", "2", "--deg", "2", "--disc", "1"]);
    assert_eq!(text.lines().next(), Some("1,1,1"));
    assert!(text.contains("case 4"));
    let text = stdout(&["surject", "--q", "3", "--deg", "3", "--disc", "0"]);
    assert_eq!(text.lines().next(), Some("0,0,1,1"));
    assert!(text.contains("case 2"));
    let text = stdout(&["surject", "--q", "5", "--deg", "6", "--disc", "3"]);
    assert!(text.contains("case 1"));
    assert!(text.contains("disc(f) = 3"));
    assert!(!fqdisc(&["surject", "--q", "5", "--deg", "1", "--disc", "3"]).status.success());
}

#[test]
fn counterexample_examples() {
    let text = stdout(&["counterexample", "--q", "7", "--deg", "3"]);
    assert!(text.contains("partition: (3)"));
    assert!(text.contains("|S| = 112"));
    assert!(text.contains("3 \u{2224} 112"));
    assert!(stdout(&["counterexample", "--q", "5", "--deg", "7"]).contains("none"));
    let out = fqdisc(&["counterexample", "--q", "9", "--deg", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not squarefree"));
}

#[test]
fn extension_field_prints_modulus() {
    let text = stdout(&["table", "--q", "9", "--max-deg", "2", "--modulus", "2,1"]);
    assert!(text.contains("modulus: 2,1"));
    assert!(text.contains("y^2 + y + 2"));
    assert!(!fqdisc(&["table", "--q", "4", "--max-deg", "2", "--modulus", "1,0"]).status.success());
}
