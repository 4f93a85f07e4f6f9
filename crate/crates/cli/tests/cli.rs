use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn enumera(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_enumera"))
        .args(args)
        .env_remove("ENUMERA_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares against a stored report; `ENUMERA_BLESS=1` rewrites it.
fn check_golden(name: &str, args: &[&str]) {
    let out = enumera(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let path = golden(name);
    if std::env::var_os("ENUMERA_BLESS").is_some() {
        std::fs::write(&path, &out.stdout).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(stdout(&out), want, "{args:?} drifted from {name}");
}

#[test]
fn goldens() {
    check_golden("kummer_ledger_delta3.json", &["kummer", "ledger", "--delta", "3"]);
    check_golden("tetra_ledger_delta3.json", &["tetra", "ledger", "--delta", "3"]);
    check_golden("triangle_ledger_delta2.tsv", &["triangle", "ledger", "--delta", "2", "--format", "tsv"]);
    check_golden("formulas_table.tsv", &["formulas", "table", "--k-min", "2", "--k-max", "6", "--format", "tsv"]);
    check_golden("kummer_group_theta.json", &["kummer", "group", "--model", "theta", "--check", "all"]);
    check_golden("fibre_check_kummer.json", &["fibre", "check", "--builtin", "kummer"]);
}

#[test]
fn kummer_ledger_entries() {
    let r = json(&enumera(&["kummer", "ledger", "--delta", "3"]));
    assert_eq!(r["status"], "pass");
    let entries = r["tables"][0]["entries"].as_array().unwrap();
    let shape: Vec<(u64, u64)> = entries
        .iter()
        .map(|e| (e["count"].as_u64().unwrap(), e["multiplicity"].as_u64().unwrap()))
        .collect();
    assert_eq!(shape, vec![(240, 8), (16, 80)]);
}

#[test]
fn tetra_ledger_total_and_seed_echo() {
    let r = json(&enumera(&["tetra", "ledger", "--delta", "3"]));
    assert_eq!(r["tables"][0]["target_degree"], 3200);
    assert_eq!(r["seed"], 0);

    let out = Command::new(env!("CARGO_BIN_EXE_enumera"))
        .args(["tetra", "ledger", "--delta", "3"])
        .env("ENUMERA_SEED", "5")
        .output()
        .unwrap();
    let seeded = json(&out);
    assert_eq!(seeded["seed"], 5);
    assert_eq!(seeded["tables"], r["tables"]);

    let out = Command::new(env!("CARGO_BIN_EXE_enumera"))
        .args(["tetra", "ledger", "--delta", "1", "--seed", "9"])
        .env("ENUMERA_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(json(&out)["seed"], 9);
}

#[test]
fn quadric_row_of_the_formula_table() {
    let r = json(&enumera(&["formulas", "table", "--k-min", "2", "--k-max", "2"]));
    assert_eq!(r["data"]["rows"][0]["k"], 2);
    assert_eq!(r["data"]["rows"][0]["d1"], 2);
}

#[test]
fn jobs_do_not_change_output() {
    let one = enumera(&["tetra", "ledger", "--delta", "2", "--jobs", "1"]);
    let two = enumera(&["tetra", "ledger", "--delta", "2", "--jobs", "2"]);
    assert_eq!(one.stdout, two.stdout);
}

#[test]
fn verify_all_is_deterministic() {
    let a = enumera(&["verify", "all"]);
    let b = enumera(&["verify", "all"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let r = json(&a);
    assert_eq!(r["data"]["checks"].as_array().unwrap().len(), 11);
    assert!(r.get("timing_ms").is_none());
}

#[test]
fn timing_is_opt_in() {
    let r = json(&enumera(&["kummer", "ledger", "--delta", "1", "--timing"]));
    assert!(r["timing_ms"].is_u64());
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bogus"][..],
        &["tetra", "ledger", "--delta", "4"],
        &["kummer", "group", "--check", "nope"],
        &["dejonquieres", "--d", "2", "--g", "0", "--tau", "3"],
        &["plucker", "--d", "3", "--delta", "2", "--kappa", "0"],
        &["formulas", "table", "--k-min", "1", "--k-max", "2"],
        &["fibre", "check", "--file", "/nonexistent/fibre.json"],
    ] {
        let out = enumera(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("enumera-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn broken_fibre_exits_1_with_violations() {
    let dir = scratch("broken");
    let dumped = dir.join("kummer.json");
    let out = enumera(&["fibre", "check", "--dump", dumped.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let mut g: Value = serde_json::from_str(&std::fs::read_to_string(&dumped).unwrap()).unwrap();
    g["double_curves"][5]["triple_points"].as_array_mut().unwrap().pop();
    let broken = dir.join("broken.json");
    std::fs::write(&broken, g.to_string()).unwrap();

    let ok = enumera(&["fibre", "check", "--file", dumped.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));
    let out = enumera(&["fibre", "check", "--file", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["status"], "fail");
    assert_eq!(r["violations"].as_array().unwrap().len(), 1);
    assert!(r["violations"][0].as_str().unwrap().ends_with("residue -1"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn incidence_verification_and_tsv() {
    let out = enumera(&["kummer", "incidence", "--model", "theta", "--verify", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("command\tkummer incidence --model theta --verify\nstatus\tpass\nseed\t0\n"));
    assert!(text.contains("data\tofftrope_triples\t240\n"));
    assert!(!text.contains("violation"));
}
