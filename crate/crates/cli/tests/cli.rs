use std::fs;
use std::process::{Command, Output};

fn bunred(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bunred"))
        .args(args)
        .output()
        .expect("failed to launch bunred")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn reduce_text_report() {
    let o = bunred(&["reduce", "--genus", "2", "--rank", "2", "--degree", "1", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("rF=3,dF=-2"), "{out}");
    assert!(out.contains("n=3"), "{out}");
    assert!(out.contains("certificate VALID"), "{out}");
}

#[test]
fn reduce_base_case() {
    let o = bunred(&["reduce", "--genus", "2", "--rank", "3", "--degree", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("n=0"), "{out}");
    assert!(out.contains("Bun(3,0) ≅ Bun(3,0)"), "{out}");
}

#[test]
fn reduce_rejects_low_genus() {
    let o = bunred(&["reduce", "--genus", "1", "--rank", "2", "--degree", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("genus must be ≥ 2"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bunred(&["reduce", "--genus", "2"]).status.code(), Some(2));
    assert_eq!(bunred(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        bunred(&["chi", "--genus", "2", "--t1", "x", "--t2", "1,0"]).status.code(),
        Some(2)
    );
}

#[test]
fn negative_degree_flag() {
    let o = bunred(&["reduce", "-g", "2", "-r", "4", "-d", "-2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("n=12"));
}

#[test]
fn sweep_genus_two() {
    let o = bunred(&["sweep", "--genus", "2", "--max-rank", "6", "--degree-range", "-6..6"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    // header + 78 rows
    assert_eq!(out.lines().count(), 79);
    assert!(!out.contains("NO"));
    assert!(stderr(&o).contains("78 rows, 0 invalid"));
}

#[test]
fn sweep_json_rows() {
    let o = bunred(&[
        "sweep", "--genus", "2..3", "--max-rank", "4", "--degree-range", "-2..2", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2 * 4 * 5);
    for row in rows {
        let (g, r, h) = (
            row["genus"].as_i64().unwrap(),
            row["rank"].as_i64().unwrap(),
            row["h"].as_i64().unwrap(),
        );
        assert_eq!(row["n"].as_i64().unwrap(), (g - 1) * (r * r - h * h));
        assert_eq!(row["valid"], true);
    }
}

#[test]
fn sweep_empty_range() {
    let o = bunred(&["sweep", "--genus", "2", "--max-rank", "3", "--degree-range", "3..2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1);
}

#[test]
fn verify_round_trip_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.json");
    let p = path.to_str().unwrap();
    let o = bunred(&["reduce", "-g", "2", "-r", "2", "-d", "1", "--out", p]);
    assert_eq!(o.status.code(), Some(0));

    let o = bunred(&["verify", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("certificate VALID"));

    let text = fs::read_to_string(&path).unwrap();
    fs::write(&path, text.replace("\"dF\": -2", "\"dF\": -1")).unwrap();
    let o = bunred(&["verify", p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("eq3_euler_identity"));

    fs::write(&path, &text[..text.len() / 3]).unwrap();
    let o = bunred(&["verify", p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("parse error"));
}

#[test]
fn chi_subcommand() {
    let o = bunred(&["chi", "--genus", "2", "--t1", "3,-2", "--t2", "2,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("chi((3,-2), (2,1)) = 1"));
}

#[test]
fn solve_lemma_subcommand() {
    let o = bunred(&["solve-lemma", "-g", "3", "-r", "3", "-d", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rF=4 dF=-7 r1=1 d1=-8 h=1 h1=1"));
    let o = bunred(&["solve-lemma", "-g", "2", "-r", "3", "-d", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("base case"));
}

#[test]
fn generic_hom_subcommand() {
    let o = bunred(&["generic-hom", "--genus", "2", "--t1", "3,-2", "--t2", "2,1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("dim Hom = 1, dim Ext1 = 0"));
    assert!(out.contains("Surjective"));
    let o = bunred(&["generic-hom", "--genus", "2", "--t1", "1,1", "--t2", "1,0"]);
    assert!(stdout(&o).contains("not covered"));
}

#[test]
fn scan_subcommand() {
    let o = bunred(&["scan-splittings", "-g", "2", "--t1", "2,0", "--t2", "2,4", "--bound", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("violations=0"));
    let o = bunred(&["scan-splittings", "-g", "2", "--t1", "1,1", "--t2", "1,0"]);
    assert_eq!(o.status.code(), Some(1));
}
