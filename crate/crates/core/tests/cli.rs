use std::path::PathBuf;
use std::process::{Command, Output};

fn polycell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polycell")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("polycell-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn euler_of_triangle_pentagon_document() {
    let path = scratch("tp.pcc");
    let o = polycell(&["product", "@polygon:3", "@polygon:5", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = polycell(&["euler", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "-13");
}

#[test]
fn dunce_hat_document() {
    let path = scratch("dunce.pcc");
    std::fs::write(&path, "pcc 1\nvertex v\nedge e v v\nface f e+ e+ e-\n").unwrap();
    let o = polycell(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("flags 6"), "{}", stdout(&o));
}

#[test]
fn invalid_input_exits_2() {
    let path = scratch("bad.pcc");
    std::fs::write(&path, "pcc 1\nvertex a\nedge e a b\n").unwrap();
    let o = polycell(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(polycell(&["euler", "/no/such/file.pcc"]).status.code(), Some(2));
    assert_eq!(polycell(&["verify", "nosuch"]).status.code(), Some(2));
    assert_eq!(polycell(&["fixture", "polygon:0"]).status.code(), Some(2));
}

#[test]
fn flags_exit_codes() {
    assert_eq!(polycell(&["flags", "@tetrahedron"]).status.code(), Some(0));
    assert_eq!(polycell(&["flags", "@strip:2"]).status.code(), Some(1));
}

#[test]
fn budget_exhaustion_exits_3() {
    assert_eq!(polycell(&["aut", "@cube", "--budget", "1"]).status.code(), Some(3));
}

#[test]
fn verify_is_deterministic() {
    let a = polycell(&["verify", "e8", "--seed", "7", "--trials", "20"]);
    let b = polycell(&["verify", "e8", "--seed", "7", "--trials", "20"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("result: PASS (20/20 instances)"), "{}", stdout(&a));
}

#[test]
fn verify_writes_report_file() {
    let path = scratch("g11.txt");
    let o = polycell(&["verify", "g11", "--trials", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&path).unwrap().contains("result: PASS"));
}

#[test]
fn conjecture_small_run() {
    let o = polycell(&["conjecture", "h12", "--max-factors", "2", "--max-component", "80"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no counterexample within bounds"));
}

#[test]
fn factor_and_homcount() {
    let path = scratch("tt.pcc");
    polycell(&["product", "@tetrahedron", "@polygon:3", "--out", path.to_str().unwrap()]);
    let o = polycell(&["factor", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("# 2 prime factor(s), certificate verified"));
    let o = polycell(&["homcount", "@complete:3", "@complete:3"]);
    assert_eq!(stdout(&o).trim(), "6");
}

#[test]
fn blocks_and_dot() {
    let o = polycell(&["blocks", "@polygon:6", "@hexagon_strip:2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("intrinsic blocks agree yes"));
    let o = polycell(&["blocks", "@polygon:6", "@flower", "--dot"]);
    assert!(stdout(&o).starts_with("graph"));
    let o = polycell(&["link", "@cube", "v0", "--dot"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("graph"));
}
