use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn vybe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vybe")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn fock_degree_minus_one_map_passes() {
    let (alg, map) = (fixture("heisenberg.json"), fixture("fock_degree_minus_one.json"));
    let o = vybe(&["check-rbo", "--algebra", s(&alg), "--module", "fock:1", "--map", s(&map), "--m", "0", "--max-degree", "4"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn level_two_map_and_its_perturbation() {
    let alg = fixture("heisenberg.json");
    let map = fixture("heis_level_two.json");
    let o = vybe(&["check-rbo", "--algebra", s(&alg), "--map", s(&map), "--m", "1", "--max-degree", "6"]);
    assert_eq!(code(&o), 0);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    let text = std::fs::read_to_string(&map).unwrap().replacen("[\"1\", \"-1\"], [\"1\"", "[\"2\", \"-1\"], [\"1\"", 1);
    std::fs::write(&bad, text).unwrap();
    let o = vybe(&["check-rbo", "--algebra", s(&alg), "--map", s(&bad), "--m", "1", "--max-degree", "6"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("lhs ="));
}

#[test]
fn build_r_then_check_voybe() {
    let dir = tempfile::tempdir().unwrap();
    let r = dir.path().join("r.json");
    let alg = fixture("heisenberg.json");
    let o = vybe(&["build-r", "--algebra", s(&alg), "--map", s(&fixture("heis_scalar_extension.json")), "--out", s(&r)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = vybe(&["check-voybe", "--algebra", s(&alg), "--module", "adjoint", "--tensor", s(&r), "--m", "0"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    // Without the module the carrier does not match.
    let o = vybe(&["check-voybe", "--algebra", s(&alg), "--tensor", s(&r), "--m", "0"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn convert_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let alg = fixture("heisenberg.json");
    let (canon, map, back) = (dir.path().join("c.json"), dir.path().join("t.json"), dir.path().join("b.json"));
    // Canonicalize the fixture first.
    let o = vybe(&["convert", "--to", "map", "--algebra", s(&alg), s(&fixture("heis_pair.json")), "--out", s(&map)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(code(&vybe(&["convert", "--to", "tensor", "--algebra", s(&alg), s(&map), "--out", s(&canon)])), 0);
    assert_eq!(code(&vybe(&["convert", "--to", "map", "--algebra", s(&alg), s(&canon), "--out", s(&map)])), 0);
    assert_eq!(code(&vybe(&["convert", "--to", "tensor", "--algebra", s(&alg), s(&map), "--out", s(&back)])), 0);
    assert_eq!(std::fs::read(&canon).unwrap(), std::fs::read(&back).unwrap());
}

#[test]
fn voa_checks() {
    let o = vybe(&["check-voa", "--algebra", s(&fixture("heisenberg.json")), "--max-degree", "4"]);
    assert_eq!(code(&o), 0);
    let o = vybe(&["check-voa", "--algebra", s(&fixture("sl2.json")), "--max-degree", "3"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn corrupted_bracket_table_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    let text = std::fs::read_to_string(fixture("sl2.json")).unwrap().replace("[0, 2, 1, \"1\"]", "[0, 2, 1, \"3\"]");
    std::fs::write(&bad, text).unwrap();
    let o = vybe(&["check-voa", "--algebra", s(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.json"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&vybe(&["check-voa"])), 2);
    assert_eq!(code(&vybe(&["no-such-command"])), 2);
    let alg = fixture("heisenberg.json");
    assert_eq!(code(&vybe(&["check-rbo", "--algebra", s(&alg), "--module", "fock:x", "--map", s(&fixture("fock_degree_minus_one.json"))])), 2);
    // A map whose source does not match the module.
    assert_eq!(code(&vybe(&["check-rbo", "--algebra", s(&alg), "--map", s(&fixture("fock_degree_minus_one.json"))])), 2);
}

#[test]
fn non_skew_tensor_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    let text = std::fs::read_to_string(fixture("heis_pair.json")).unwrap().replace("\"coeff\": \"-1\"", "\"coeff\": \"1\"");
    std::fs::write(&bad, text).unwrap();
    let o = vybe(&["check-voybe", "--algebra", s(&fixture("heisenberg.json")), "--tensor", s(&bad), "--m", "0"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("skewsymmetric"));
}

#[test]
fn json_reports_are_versioned_and_deterministic() {
    let (alg, map) = (fixture("heisenberg.json"), fixture("heis_scalar_extension.json"));
    let args: [&str; 11] = [
        "check-strong-rbo",
        "--algebra",
        s(&alg),
        "--map",
        s(&map),
        "--m",
        "0",
        "--max-degree",
        "3",
        "--format",
        "json",
    ];
    let a = vybe(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_vybe")).args(args).env("VYBE_THREADS", "1").output().unwrap();
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "1");
    assert_eq!(v["passed"], true);
    assert!(!v["coverage"].as_array().unwrap().is_empty());
}

#[test]
fn reduction_commands() {
    let (alg, r) = (fixture("sl2.json"), fixture("e_wedge_h.json"));
    let o = vybe(&["verify-reduction", "--algebra", s(&alg), "--max-degree", "2", "--tensor", s(&r)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let o = vybe(&["reduce-level1", "--algebra", s(&alg), "--max-degree", "2", "--tensor", s(&r)]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["carrier"], "lie");
    assert_eq!(v["levels"]["1"].as_array().unwrap().len(), 2);
    let heis = fixture("heisenberg.json");
    let o = vybe(&["verify-reduction", "--algebra", s(&heis), "--max-degree", "3", "--map", s(&fixture("heis_scalar_extension.json"))]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let o = vybe(&["reduce-level1", "--algebra", s(&heis), "--map", s(&fixture("heis_scalar_extension.json"))]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["levels"]["1"], serde_json::json!([["-2"]]));
}
