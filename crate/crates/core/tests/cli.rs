//! The `reeb-symm` binary: outputs, provenance and exit codes.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reeb-symm"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn reeb_writes_tree_with_provenance() {
    let dir = TempDir::new().unwrap();
    let o = run(&["reeb", "--icosphere", "3", "--field", "double_bump"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = read_json(&dir.path().join("tree.json"));
    assert_eq!(v["format_version"], reeb_symm::config::FORMAT_VERSION);
    assert_eq!(v["config"]["icosphere"], 3);
    assert_eq!(v["config"]["field"], "double_bump");
    assert_eq!(v["edge_count"], 3);
}

#[test]
fn tree_json_feeds_back_into_symmetrize() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&run(&["reeb", "--icosphere", "3", "--field", "height_z"], dir.path())), 0);
    let tree = dir.path().join("tree.json");
    let o = run(&["symmetrize", "--tree", tree.to_str().unwrap()], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = read_json(&dir.path().join("symmetrization.json"));
    assert!(v["sup"].as_f64().unwrap() < 1e-9);
    let csv = std::fs::read_to_string(dir.path().join("profile.csv")).unwrap();
    assert!(csv.starts_with("z,value\n"));
}

#[test]
fn classify_separates_the_two_growth_types() {
    let dir = TempDir::new().unwrap();
    for (field, verdict) in [("height_x", "Bounded"), ("quadratic_z", "Linear")] {
        let o = run(&["classify", "--icosphere", "4", "--field", field], dir.path());
        assert_eq!(code(&o), 0);
        let v = read_json(&dir.path().join("classification.json"));
        assert_eq!(v["verdict"], verdict, "{field}");
        assert_eq!(v["config"]["field"], field);
    }
}

#[test]
fn gen_output_round_trips_through_mesh_and_field_csv() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&run(&["gen", "--icosphere", "2", "--field", "cubic_z"], dir.path())), 0);
    let mesh = dir.path().join("icosphere_2.off");
    let csv = dir.path().join("cubic_z.csv");
    let o = run(
        &["symmetrize", "--mesh", mesh.to_str().unwrap(), "--field-csv", csv.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = read_json(&dir.path().join("symmetrization.json"));
    assert!(v["sup"].as_f64().unwrap() < 1e-9, "odd field: {}", v["sup"]);
}

#[test]
fn verify_quick_passes_and_injected_fault_exits_1() {
    let dir = TempDir::new().unwrap();
    let ok = run(&["verify", "--quick"], dir.path());
    assert_eq!(code(&ok), 0, "{}", String::from_utf8_lossy(&ok.stdout));
    assert_eq!(read_json(&dir.path().join("verify.json"))["pass"], true);

    let bad = run(&["verify", "--quick", "--inject-fault", "dichotomy"], dir.path());
    assert_eq!(code(&bad), 1);
    let stdout = String::from_utf8_lossy(&bad.stdout);
    assert!(stdout.contains("[FAIL]  9 dichotomy"), "{stdout}");
    let v = read_json(&dir.path().join("verify.json"));
    assert_eq!(v["pass"], false);
    assert_eq!(v["config"]["inject_fault"], "dichotomy");
}

#[test]
fn missing_file_exits_2() {
    let dir = TempDir::new().unwrap();
    let o = run(&["reeb", "--mesh", "/nonexistent/m.off", "--field", "height_z"], dir.path());
    assert_eq!(code(&o), 2);
}

#[test]
fn torus_exits_3() {
    // 3x3 grid torus: V = 9, F = 18, chi = 0
    let dir = TempDir::new().unwrap();
    let mut off = String::from("OFF\n9 18 0\n");
    for i in 0..3 {
        for j in 0..3 {
            let (a, b) = (i as f64 * 2.094, j as f64 * 2.094);
            let r = 2.0 + b.cos();
            off.push_str(&format!("{} {} {}\n", r * a.cos(), r * a.sin(), b.sin()));
        }
    }
    let idx = |i: usize, j: usize| (i % 3) * 3 + j % 3;
    for i in 0..3 {
        for j in 0..3 {
            off.push_str(&format!("3 {} {} {}\n", idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)));
            off.push_str(&format!("3 {} {} {}\n", idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)));
        }
    }
    let path = dir.path().join("torus.off");
    std::fs::write(&path, off).unwrap();
    let o = run(&["reeb", "--mesh", path.to_str().unwrap(), "--field", "height_z"], dir.path());
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn degenerate_mesh_exits_4() {
    let dir = TempDir::new().unwrap();
    // a tetrahedron with all four vertices on one plane
    let off = "OFF\n4 4 0\n0 0 0\n1 0 0\n0 1 0\n1 1 0\n3 0 1 2\n3 0 3 1\n3 0 2 3\n3 1 3 2\n";
    let path = dir.path().join("flat.off");
    std::fs::write(&path, off).unwrap();
    let o = run(&["reeb", "--mesh", path.to_str().unwrap(), "--field", "height_z"], dir.path());
    assert_eq!(code(&o), 4, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn bad_configuration_exits_5() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["reeb", "--icosphere", "3"][..],
        &["reeb", "--icosphere", "3", "--field", "no_such_field"],
        &["classify", "--icosphere", "3", "--field", "height_z", "--tol", "-1"],
        &["classify", "--icosphere", "3", "--field", "height_z", "--bgrid", "3"],
        &["gen"],
    ] {
        assert_eq!(code(&run(args, dir.path())), 5, "{args:?}");
    }
}

#[test]
fn usage_errors_exit_5_and_help_exits_0() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&run(&["reeb", "--no-such-flag"], dir.path())), 5);
    assert_eq!(code(&run(&["classify", "--kmax", "many"], dir.path())), 5);
    assert_eq!(code(&run(&["verify", "--help"], dir.path())), 0);
}
