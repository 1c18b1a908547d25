use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn kdirac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kdirac")).args(args).env_remove("KDIRAC_CACHE").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn sk_table_k2() {
    let out = kdirac(&["sk-table", "--k", "2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows: Vec<(u64, String)> =
        v["records"].as_array().unwrap().iter().map(|r| (r["j"].as_u64().unwrap(), r["partition"].as_str().unwrap().to_owned())).collect();
    let want = [(0, "()"), (1, "(1)"), (2, "(2,1)"), (3, "(2,2)")].map(|(j, p)| (j, p.to_owned()));
    assert_eq!(rows, want);
    assert_eq!(v["conventions"]["bracket_normalization"], 1);
}

#[test]
fn discover_reports_eight() {
    let out = kdirac(&["discover", "--k", "2", "--n", "2", "--degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rec = v["records"].as_array().unwrap().iter().find(|r| r["degree"] == 2).unwrap();
    assert_eq!((rec["kernel_dim"].as_u64(), rec["predicted"].as_u64(), rec["pass"].as_bool()), (Some(8), Some(8), Some(true)));
    assert_eq!(v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "equivariance_degree_2").unwrap()["pass"], true);
}

#[test]
fn verify_liealg_k3n3() {
    assert_eq!(kdirac(&["verify-liealg", "--k", "3", "--n", "3"]).status.code(), Some(0));
}

#[test]
fn every_command_passes_at_k2n2() {
    for cmd in ["sk-table", "dims", "verify-liealg", "verify-fields", "verify-descend", "duality", "solution-dims", "discover", "verify-complex"] {
        let mut args = vec![cmd, "--k", "2", "--n", "2"];
        if !matches!(cmd, "sk-table" | "verify-liealg" | "verify-fields") {
            args.extend(["--max-degree", "3"]);
        }
        let out = kdirac(&args);
        assert_eq!(out.status.code(), Some(0), "{cmd}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(json(&out)["command"], cmd);
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(kdirac(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(kdirac(&["dims", "--k", "x"]).status.code(), Some(2));
    let out = kdirac(&["dims", "--k", "3", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("E_UNSTABLE_RANGE"));
    assert_eq!(kdirac(&["verify-liealg", "--k", "3", "--n", "2", "--allow-unstable-range"]).status.code(), Some(0));
}

#[test]
fn reports_are_byte_identical() {
    let a = kdirac(&["verify-complex", "--max-degree", "3"]);
    let b = kdirac(&["verify-complex", "--max-degree", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = kdirac(&["verify-complex", "--max-degree", "3", "--format", "csv"]);
    let text = String::from_utf8(c.stdout).unwrap();
    assert!(text.starts_with("# command=verify-complex\n# k=2\n# n=2\n# clifford_sign=gamma_a^2 = -1\n"));
    assert!(text.contains("k,n,spot,degree,rank,kernel_dim,predicted,pass,method\n"));
}

#[test]
fn corrupt_cache_is_reported_and_rebuilt() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let cold = kdirac(&["verify-complex", "--max-degree", "3", "--cache", d]);
    assert_eq!(cold.status.code(), Some(0));
    let mut files: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert!(!files.is_empty());
    assert!(files.iter().all(|p| p.extension().is_some_and(|e| e == "mat")));
    let victim = &files[0];
    let original = fs::read_to_string(victim).unwrap();
    assert!(original.starts_with("kdirac-matrix k=2 n=2 op=D"));
    fs::write(victim, &original[..original.len() / 2]).unwrap();

    let warm = Command::new(env!("CARGO_BIN_EXE_kdirac"))
        .args(["verify-complex", "--max-degree", "3"])
        .env("KDIRAC_CACHE", d)
        .output()
        .unwrap();
    assert_eq!(warm.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&warm.stderr).contains("E_CACHE_CORRUPT"));
    assert_eq!(warm.stdout, cold.stdout);
    assert_eq!(fs::read_to_string(victim).unwrap(), original);
}
