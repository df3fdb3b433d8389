use std::process::{Command, Output};

fn liereps(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liereps")).args(args).env_remove("LIEREPS_CACHE_DIR").output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = liereps(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn product_in_latex() {
    assert_eq!(
        stdout(&["product", "SU3", "8", "8", "--format", "latex"]).trim(),
        "$\\irrep{1}+2(\\irrep{8})+\\irrep{10}+\\irrepbar{10}+\\irrep{27}$"
    );
}

#[test]
fn branching_of_a_product_factor() {
    let out = stdout(&["branch", "SU5*SU3*U1", "24", "3", "-3", "--to", "SU2*U1", "--pos", "2"]);
    assert_eq!(out.trim(), "(24,1)(-2)(-3) + (24,2)(1)(-3)");
}

#[test]
fn irrep_report_lists_properties() {
    let out = stdout(&["irrep", "SU5", "(0,0,1,1)"]);
    assert!(out.contains("dim: 40"));
    assert!(out.contains("congruency: 2"));
}

#[test]
fn max_digit_controls_name_lookup() {
    let out = liereps(&["irrep", "SU5", "70'"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("70'"));
    assert!(stdout(&["irrep", "SU5", "70'", "--max-digit", "4"]).contains("⟨0004⟩"));
}

#[test]
fn exit_codes() {
    assert_eq!(liereps(&["irrep", "XX", "1"]).status.code(), Some(2));
    assert_eq!(liereps(&["branch", "SU5", "5", "--to", "SO5"]).status.code(), Some(3));
}

#[test]
fn registry_file_adds_rules() {
    let path = std::env::temp_dir().join(format!("liereps-registry-{}.txt", std::process::id()));
    std::fs::write(&path, "A2 -> A1 : special((2))\n").unwrap();
    let out = stdout(&["branch", "SU3", "3", "--to", "SU2", "--registry", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.trim(), "3");
}

#[test]
fn tables_are_cached() {
    let dir = std::env::temp_dir().join(format!("liereps-cache-{}", std::process::id()));
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_liereps"))
            .args(["table", "irreps", "SU2", "--max-dim", "4"])
            .env("LIEREPS_CACHE_DIR", &dir)
            .output()
            .unwrap()
    };
    let first = run();
    assert!(first.status.success());
    assert_eq!(std::fs::read_dir(&dir).unwrap().count(), 1);
    assert_eq!(run().stdout, first.stdout);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn g2_spindle() {
    let out = stdout(&["roots", "G2", "--spindle"]);
    assert_eq!(out.lines().count(), 11);
    assert_eq!(out.lines().next(), Some("⟨0,1⟩"));
}
