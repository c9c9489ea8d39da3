use std::process::{Command, Output};

fn bip(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bip")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn report_fields() {
    let o = bip(&["report", "13254", "35142", "--json"]);
    assert!(o.status.success());
    let r: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!((r["atoms"].as_u64(), r["coatoms"].as_u64(), r["dim"].as_u64()), (Some(6), Some(5), Some(4)));
    assert_eq!(r["toric"], true);
}

#[test]
fn point_interval_is_a_cube() {
    let o = bip(&["report", "1324", "1324", "--verify"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("dim         0"));
    assert!(text.contains("cube        true"));
}

#[test]
fn hasse_dot_has_ten_nodes() {
    let o = bip(&["report", "1324", "3412", "--dot"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let hasse = text.split("digraph").nth(1).unwrap();
    let nodes: usize = hasse
        .lines()
        .filter(|l| l.contains("rank=same"))
        .map(|l| l.matches('"').count() / 2)
        .sum();
    assert_eq!(nodes, 10);
}

#[test]
fn exit_codes() {
    assert_eq!(bip(&["report", "2143", "1324"]).status.code(), Some(2));
    assert_eq!(bip(&["coatoms", "2143", "1324"]).status.code(), Some(2));
    assert_eq!(bip(&["report", "1324", "12"]).status.code(), Some(1));
    assert_eq!(bip(&["scan", "--mode", "inverse", "--n", "6"]).status.code(), Some(1));
}

#[test]
fn off_and_faces() {
    let o = bip(&["report", "1234", "4321", "--off"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("OFF\n24 14 36"));
    let o = bip(&["report", "1234", "2143", "--faces"]);
    let last = stdout(&o).lines().last().unwrap().to_string();
    let faces: serde_json::Value = serde_json::from_str(&last).unwrap();
    assert_eq!(faces["f_vector"], serde_json::json!([4, 4]));
}

#[test]
fn scan_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("inverse.csv");
    let o = bip(&["scan", "--mode", "inverse", "--n", "4", "--jobs", "2", "--csv", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text, "v,w,v_inv,w_inv\n");
    assert!(!dir.path().join("inverse.csv.ckpt").exists());
}

#[test]
fn family_and_coatoms() {
    let o = bip(&["family", "--k", "2", "--kind", "degree-gap"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("toric       true"));
    let o = bip(&["coatoms", "1324", "3412", "--case", "I"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("case     I(k=2)"));
    assert!(text.contains("coatoms  4"));
    assert_eq!(bip(&["coatoms", "1234", "2143"]).status.code(), Some(1));
}
