use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn polyrep(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyrep"))
        .arg("--cache-dir")
        .arg(cache)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(cache: &Path, args: &[&str]) -> (Output, Value) {
    let out = cache.join("report.json");
    let mut full = vec!["--json-out", out.to_str().unwrap()];
    full.extend_from_slice(args);
    let o = polyrep(cache, &full);
    let v = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    (o, v)
}

#[test]
fn symrank_f4() {
    let dir = tempfile::tempdir().unwrap();
    let (o, v) = json_of(dir.path(), &["symrank", "--lattice", "F4", "--modulus", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(v["computed"]["value"], 24);
    assert_eq!(v["reference"]["value"], 24);
    assert_eq!(v["schema_version"], 1);
    for a in v["assertions"].as_array().unwrap() {
        assert!(a.get("computed").is_some() && a.get("expected").is_some());
    }
}

#[test]
fn heisenberg_even_p_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = polyrep(dir.path(), &["heisenberg", "--p", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("p must be an odd prime"));
}

#[test]
fn heisenberg_p7_needs_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(polyrep(dir.path(), &["heisenberg", "--p", "7"]).status.code(), Some(2));
}

#[test]
fn unknown_lattice_and_bad_flags() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(polyrep(dir.path(), &["symrank", "--lattice", "Q9"]).status.code(), Some(2));
    assert_eq!(polyrep(dir.path(), &["symrank"]).status.code(), Some(2));
    assert_eq!(polyrep(dir.path(), &["extensions", "--P", "s5"]).status.code(), Some(2));
    assert_eq!(polyrep(dir.path(), &["rdim", "--group", "a4 x nonsense"]).status.code(), Some(2));
}

#[test]
fn extensions_single_a4_row() {
    let dir = tempfile::tempdir().unwrap();
    let o = polyrep(dir.path(), &["extensions", "--N", "1", "--P", "a4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "name,N,P,order,computed_rdim_split,computed_rdim_Q_lower,paper_rdim_Q,paper_rdim_k,status"
    );
    assert_eq!(lines.next().unwrap(), "A4,1,A4,12,3,3,3,3,PASS");
    assert!(lines.next().unwrap().starts_with("PASS extensions"));
}

#[test]
fn extensions_c2c2_s4_block() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("rows.csv");
    let o = polyrep(dir.path(), &["extensions", "--N", "c2c2", "--P", "s4", "--csv-out", csv_path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_path(&csv_path).unwrap();
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| &r[8] == "PASS"));
}

#[test]
fn extensions_c2_a5_block() {
    let dir = tempfile::tempdir().unwrap();
    let (o, v) = json_of(dir.path(), &["extensions", "--N", "c2", "--P", "a5"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = v["computed"]["rows"].as_array().unwrap();
    let split = |name: &str| rows.iter().find(|r| r["name"] == name).unwrap()["computed_rdim_split"].as_u64().unwrap();
    assert_eq!(split("~A5"), 2);
    assert!(split("A5 x C2") <= 4);
}

#[test]
fn failed_assertion_exits_one() {
    // the C4^2 : C3 row has a rational lower bound above its reference rdim_Q
    let dir = tempfile::tempdir().unwrap();
    let o = polyrep(dir.path(), &["extensions", "--N", "c2c2", "--P", "a4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("C4^2 : C3,C2^2,A4,48,3,6,3,6,FAIL"));
}

#[test]
fn rdim_recipe() {
    let dir = tempfile::tempdir().unwrap();
    let (o, v) = json_of(dir.path(), &["rdim", "--group", "a4 x c2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(v["computed"]["order"], 24);
    assert_eq!(v["computed"]["rdim_split"], 3);
}

#[test]
fn tables_write_two_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tables");
    polyrep(dir.path(), &["tables", "--csv-out", out.to_str().unwrap()]);
    let t1 = std::fs::read_to_string(out.join("table1.csv")).unwrap();
    let t2 = std::fs::read_to_string(out.join("table2.csv")).unwrap();
    assert_eq!(t1.lines().count(), 1 + 8);
    assert!(t1.lines().any(|l| l.starts_with("B7,7,4,") && l.contains(",128,128,")));
    assert_eq!(t2.lines().count(), 1 + 26);
}

#[test]
fn cache_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_polyrep"))
        .env("POLYREP_CACHE_DIR", dir.path())
        .args(["rdim", "--group", "s4"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);
}

#[test]
fn timings_are_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let (_, plain) = json_of(dir.path(), &["symrank", "--lattice", "A1"]);
    assert!(plain.get("wall_time_ms").is_none());
    let (_, timed) = json_of(dir.path(), &["--timings", "symrank", "--lattice", "A1"]);
    assert!(timed["wall_time_ms"].is_u64());
}
