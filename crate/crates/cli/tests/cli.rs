use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use vtschur::schur::SchurElt;
use vtschur::IntMatrix;

fn vtschur(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vtschur"))
        .args(args)
        .env_remove("VTSCHUR_RAISE_GUARDS")
        .env_remove("VTSCHUR_ACK_SLOW")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is json")
}

#[test]
fn duality_passes() {
    let o = vtschur(&["verify", "duality", "--n", "2", "--d", "2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn every_suite_runs_at_small_size() {
    for suite in ["schur", "hecke", "uvt", "star", "jparity-tilde", "descend", "oracle"] {
        let o = vtschur(&["verify", suite, "--n", "2", "--d", "2"]);
        assert_eq!(code(&o), 0, "{suite}: {}", String::from_utf8_lossy(&o.stdout));
    }
    let o = vtschur(&["verify", "jparity-hat", "--n", "3", "--d", "2", "--m", "1"]);
    assert_eq!(code(&o), 0);
    let o = vtschur(&["verify", "stab", "--n", "2", "--window", "4"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&vtschur(&["verify", "nonsense"])), 2);
    assert_eq!(code(&vtschur(&["verify", "hecke", "--d", "9"])), 2);
    assert_eq!(code(&vtschur(&["verify", "duality", "--spec", "2"])), 2);
    assert_eq!(code(&vtschur(&["verify", "duality", "--spec", "1,1"])), 2);
    assert_eq!(code(&vtschur(&[])), 2);
}

#[test]
fn raising_guards_needs_acknowledgment() {
    let bin = env!("CARGO_BIN_EXE_vtschur");
    let o = Command::new(bin)
        .args(["verify", "hecke", "--d", "2"])
        .env("VTSCHUR_RAISE_GUARDS", "1")
        .env_remove("VTSCHUR_ACK_SLOW")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    let o = Command::new(bin)
        .args(["verify", "hecke", "--d", "4"])
        .env("VTSCHUR_RAISE_GUARDS", "1")
        .env("VTSCHUR_ACK_SLOW", "i-accept-long-runs")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
}

#[test]
fn json_reports_are_versioned_and_deterministic() {
    let args = ["verify", "oracle", "--n", "2", "--d", "2", "--primes", "3,5", "--format", "json"];
    let (a, b) = (vtschur(&args), vtschur(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert_eq!(v["schema"], json!(1));
    assert_eq!(v["suite"], json!("oracle"));
    assert_eq!(v["params"]["primes"], json!([3, 5]));
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.iter().any(|n| n.contains("q=5")));
    let text = String::from_utf8(a.stdout).unwrap();
    let keys: Vec<usize> = ["\"checks\"", "\"params\"", "\"schema\"", "\"suite\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]), "keys are sorted");
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = vtschur(&["verify", "hecke", "--d", "3", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["suite"], json!("hecke"));
}

#[test]
fn hecke_square_of_a_generator() {
    let dir = tempfile::tempdir().unwrap();
    let t1 = write(dir.path(), "t1.json", &json!({"d": 2, "terms": [{"perm": [2, 1], "poly": [[0, 0, 1, 1]]}]}));
    let t1 = t1.to_str().unwrap();
    let o = vtschur(&["mult", "hecke", "--lhs", t1, "--rhs", t1, "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_eq!(v["schema"], json!(1));
    let want = json!([
        {"perm": [1, 2], "poly": [[0, 2, 1, 1]]},
        {"perm": [2, 1], "poly": [[-1, 1, -1, 1], [1, 1, 1, 1]]}
    ]);
    assert_eq!(v["terms"], want);

    let t3 = write(dir.path(), "t3.json", &json!({"d": 3, "terms": []}));
    let o = vtschur(&["mult", "hecke", "--lhs", t1, "--rhs", t3.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let junk = write(dir.path(), "junk.json", &json!({"dd": 2}));
    assert_eq!(code(&vtschur(&["mult", "hecke", "--lhs", t1, "--rhs", junk.to_str().unwrap()])), 2);
}

#[test]
fn schur_unit_is_neutral() {
    let dir = tempfile::tempdir().unwrap();
    let a = IntMatrix::from_rows(&[vec![1, 1], vec![0, 0]]).unwrap();
    let x = SchurElt::basis_elt(&a).unwrap().to_json().unwrap();
    let one = SchurElt::unit(2, 2).to_json().unwrap();
    let (xp, up) = (write(dir.path(), "x.json", &x), write(dir.path(), "one.json", &one));
    let o = vtschur(&["mult", "schur", "--lhs", up.to_str().unwrap(), "--rhs", xp.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let got = SchurElt::from_json(&json_of(&o)).unwrap();
    assert_eq!(got, SchurElt::basis_elt(&a).unwrap());
}

#[test]
fn stabilization_fits() {
    let o = vtschur(&["stab-fit", "--primes", "3,4,5"]);
    assert_eq!(code(&o), 0);
    let dir = tempfile::tempdir().unwrap();
    let pair = write(dir.path(), "p.json", &json!({"a1": [[1, 2], [0, 0]], "a2": [[0, 1], [3, -1]]}));
    let o = vtschur(&["stab-fit", "--pair", pair.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_of(&o)["checks"].as_array().unwrap().len(), 3);
    let bad = write(dir.path(), "b.json", &json!({"a1": [[0, 2], [0, -1]], "a2": [[0, 1], [3, -1]]}));
    assert_eq!(code(&vtschur(&["stab-fit", "--pair", bad.to_str().unwrap()])), 2);
}

#[test]
fn descent_emits_certificates() {
    let o = vtschur(&["descend", "--n", "2", "--d", "3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    let certs = v["hecke_certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 2);
    assert!(certs.iter().all(|c| c["product_is_zero"] == json!(true)));
}
