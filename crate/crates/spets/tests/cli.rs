use std::path::PathBuf;
use std::process::Command;

use spets::blocktable::PartialTable;
use spets::cli::run;

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("spets-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn spets(args: &[&str]) -> i32 {
    run(std::iter::once("spets").chain(args.iter().copied()))
}

#[test]
fn catalog_commands() {
    assert_eq!(spets(&["group", "list"]), 0);
    assert_eq!(spets(&["group", "info", "--group", "G333"]), 0);
    assert_eq!(spets(&["group", "info", "--group", "G(4,4,4)"]), 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(spets(&["frobnicate"]), 2);
    assert_eq!(spets(&["table", "--group", "mu3"]), 2);
    assert_eq!(spets(&["table", "--group", "A2", "--ell", "3", "--a", "1"]), 2);
    assert_eq!(spets(&["check", "frobenius", "--group", "mu3", "--ell", "7", "--a", "1", "--q", "9"]), 2);
    assert_eq!(spets(&["g24", "frobenius"]), 2);
}

#[test]
fn tables_written_in_both_formats_read_back() {
    for (fmt, ext) in [("csv", "csv"), ("json", "json")] {
        let p = tmp(&format!("mu3.{ext}"));
        let code = spets(&["table", "--group", "mu3", "--ell", "7", "--a", "1", "--format", fmt, "--out", p.to_str().unwrap()]);
        assert_eq!(code, 0);
        let text = std::fs::read_to_string(&p).unwrap();
        let t = if fmt == "csv" { PartialTable::from_csv(&text) } else { PartialTable::from_json(&text) }.unwrap();
        assert_eq!((t.rows.len(), t.cols.len()), (5, 3));
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let (a, b) = (tmp("r1.json"), tmp("r2.json"));
    for p in [&a, &b] {
        let code = spets(&["check", "orthogonality", "--group", "mu3", "--ell", "7", "--a", "1", "--jobs", "2", "--out", p.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    let v: serde_json::Value = serde_json::from_slice(&x).unwrap();
    assert_eq!(v["roots"]["zeta_3 mod 7"], "2");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn every_check_runs_on_the_pentagon() {
    for what in ["frobenius", "restriction", "almost-integrality", "os-fit", "polynomiality"] {
        assert_eq!(spets(&["check", what, "--group", "G552", "--ell", "11", "--a", "1"]), 0, "{what}");
    }
}

#[test]
fn g24_table_reports_the_single_mismatch() {
    let p = tmp("g24.json");
    assert_eq!(spets(&["g24", "table", "--symbolic", "--out", p.to_str().unwrap()]), 1);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    let w = &v["checks"][0]["witness"];
    assert_eq!(w.as_array().unwrap().len(), 1);
    assert_eq!(w[0]["row"], "phi_{7,6}");
    assert_eq!(spets(&["g24", "frobenius", "--q", "13"]), 0);
}

#[test]
fn bundle_without_provenance_is_rejected() {
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/g24.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&src).unwrap();
    v.as_object_mut().unwrap().remove("provenance");
    let p = tmp("bad.json");
    std::fs::write(&p, v.to_string()).unwrap();
    assert_eq!(spets(&["g24", "frobenius", "--q", "5", "--data", p.to_str().unwrap()]), 2);
}

#[test]
fn data_dir_variable_is_honoured() {
    let empty = tmp("empty-data");
    std::fs::create_dir_all(&empty).unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_spets"))
        .args(["g24", "frobenius", "--q", "5"])
        .env("SPETS_DATA_DIR", &empty)
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&status.stderr).contains("empty-data"));
}
