use std::path::Path;
use std::process::{Command, Output};

fn fdcran(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fdcran")).current_dir(dir).env("FDCRAN_THREADS", "2").args(args).output().unwrap()
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_path(path).unwrap();
    r.records().map(|rec| rec.unwrap().iter().map(str::to_string).collect()).collect()
}

#[test]
fn invalid_config_exits_2_and_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), r#"{"p_d": 1.5}"#).unwrap();
    let out = fdcran(dir.path(), &["--config", "bad.json", "single", "--scheme", "sra", "--design", "ZF_MRT"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("p_d"));
}

#[test]
fn unknown_config_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), r#"{"lambda": 0.001, "bandwidth": 1e6}"#).unwrap();
    let out = fdcran(dir.path(), &["--config", "bad.json", "single", "--scheme", "sra", "--design", "MRC_MRT"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bandwidth"));
}

#[test]
fn missing_config_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = fdcran(dir.path(), &["--config", "absent.json", "rate-region"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn optimal_with_ara_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = fdcran(dir.path(), &["single", "--scheme", "ara", "--design", "OPTIMAL", "--trials", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn failed_validation_exits_1_and_still_writes_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = fdcran(dir.path(), &["validate", "--trials", "50", "--tolerance", "0", "--sigmas", "0", "--out", "v.csv"]);
    assert_eq!(out.status.code(), Some(1));
    let rows = csv_rows(&dir.path().join("v.csv"));
    let ids: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(ids, ["LEMMA1", "LEMMA2", "P1_UL", "P1_DL", "P2_UL", "P3_DL", "EMPTY_PROB"]);
    assert!(rows.iter().any(|r| r[5] == "FAIL"));
}

#[test]
fn rate_region_shape_and_endpoints() {
    let dir = tempfile::tempdir().unwrap();
    let out = fdcran(dir.path(), &["rate-region", "--points", "2", "--trials", "40", "--out", "rr.csv"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut r = csv::Reader::from_path(dir.path().join("rr.csv")).unwrap();
    assert_eq!(
        r.headers().unwrap().iter().collect::<Vec<_>>(),
        ["scheme", "design", "duplex", "p_d", "rate_ul", "rate_dl", "rate_sum", "std_error", "trials"]
    );
    let rows = csv_rows(&dir.path().join("rr.csv"));
    assert_eq!(rows.len(), 2 * 7);
    for row in &rows {
        let p: f64 = row[3].parse().unwrap();
        assert!(p == 0.0 || p == 1.0);
        let (ul, dl): (f64, f64) = (row[4].parse().unwrap(), row[5].parse().unwrap());
        // the idle direction has no serving RRH
        if p == 0.0 {
            assert_eq!(dl, 0.0);
        } else {
            assert_eq!(ul, 0.0);
        }
        assert!(!row.iter().any(|f| f.starts_with('-')), "negative field in {row:?}");
        assert_eq!(row[8], "40");
    }
    let manifest: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("rr.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "rate-region");
    assert_eq!(manifest["config"]["trials"], 40);
    assert_eq!(manifest["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn rate_region_default_point_count() {
    let dir = tempfile::tempdir().unwrap();
    let out = fdcran(dir.path(), &["rate-region", "--trials", "5", "--out", "rr.csv"]);
    assert!(out.status.success());
    assert_eq!(csv_rows(&dir.path().join("rr.csv")).len(), 21 * 7);
}

#[test]
fn phi_sweep_uses_the_phi_column() {
    let dir = tempfile::tempdir().unwrap();
    let out = fdcran(dir.path(), &["phi-sweep", "--steps", "3", "--trials", "20", "--out", "phi.csv"]);
    assert!(out.status.success());
    let mut r = csv::Reader::from_path(dir.path().join("phi.csv")).unwrap();
    assert_eq!(&r.headers().unwrap()[3], "phi");
    let rows = csv_rows(&dir.path().join("phi.csv"));
    assert_eq!(rows.len(), 3 * 3);
    let last: f64 = rows.last().unwrap()[3].parse().unwrap();
    assert!((last - std::f64::consts::PI).abs() < 1e-7);
}

#[test]
fn bits_flag_divides_by_ln2() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["single", "--scheme", "sra", "--design", "MRC_MRT", "--trials", "30"];
    fdcran(dir.path(), &[&args[..], &["--out", "n.csv"]].concat());
    fdcran(dir.path(), &[&args[..], &["--out", "b.csv", "--bits"]].concat());
    let n: f64 = csv_rows(&dir.path().join("n.csv"))[0][6].parse().unwrap();
    let b: f64 = csv_rows(&dir.path().join("b.csv"))[0][6].parse().unwrap();
    assert!((b - n / std::f64::consts::LN_2).abs() <= 1e-7 * b);
}

#[test]
fn stdout_output_matches_file_output() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["single", "--scheme", "ara", "--design", "MRC_MRT", "--trials", "25", "--seed", "9"];
    let piped = fdcran(dir.path(), &args);
    fdcran(dir.path(), &[&args[..], &["--out", "s.csv"]].concat());
    assert_eq!(piped.stdout, std::fs::read(dir.path().join("s.csv")).unwrap());
}

#[test]
fn seed_changes_the_estimate() {
    let dir = tempfile::tempdir().unwrap();
    let a = fdcran(dir.path(), &["single", "--scheme", "sra", "--design", "ZF_MRT", "--trials", "25", "--seed", "1"]);
    let b = fdcran(dir.path(), &["single", "--scheme", "sra", "--design", "ZF_MRT", "--trials", "25", "--seed", "2"]);
    assert_ne!(a.stdout, b.stdout);
}
