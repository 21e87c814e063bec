use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cep_core::LinkedTermsheet;
use tempfile::TempDir;

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

/// Copy of the fixture directory with `edit` applied to run.toml.
fn workspace(edit: impl FnOnce(String) -> String) -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    for entry in fs::read_dir(FIXTURES).unwrap() {
        let entry = entry.unwrap();
        fs::copy(entry.path(), dir.path().join(entry.file_name())).unwrap();
    }
    let config = dir.path().join("run.toml");
    let text = fs::read_to_string(&config).unwrap();
    fs::write(&config, edit(text)).unwrap();
    dir
}

fn cep(dir: &Path, args: &[&str]) -> (Output, PathBuf) {
    let out = dir.join("out");
    let output = Command::new(env!("CARGO_BIN_EXE_cep"))
        .args(args)
        .arg("--config")
        .arg(dir.join("run.toml"))
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    (output, out)
}

fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| {
            let mut r = csv::ReaderBuilder::new()
                .has_headers(false)
                .from_reader(l.as_bytes());
            r.records().next().unwrap().unwrap().iter().map(String::from).collect()
        })
        .collect()
}

#[test]
fn every_command_succeeds_on_fixtures() {
    let dir = workspace(|t| t);
    for cmd in ["spreads", "netzero", "permanence", "termsheet", "sanity", "ingest"] {
        let (output, _) = cep(dir.path(), &[cmd]);
        assert!(output.status.success(), "{cmd}: {}", String::from_utf8_lossy(&output.stderr));
    }
    let out = dir.path().join("out");
    for name in [
        "spreads.csv",
        "netzero.csv",
        "permanence.csv",
        "termsheet_01_20y.json",
        "events_01_20y.csv",
        "sanity.csv",
        "ingest_prices.csv",
        "ingest_net.csv",
        "ingest_profiles.csv",
    ] {
        assert!(out.join(name).is_file(), "missing {name}");
    }
}

#[test]
fn reports_carry_config_hash_and_input_checksums() {
    let dir = workspace(|t| t);
    let (_, out) = cep(dir.path(), &["spreads"]);
    let text = fs::read_to_string(out.join("spreads.csv")).unwrap();
    assert!(text.lines().any(|l| l.starts_with("# config sha256 ")));
    for input in ["technology.csv", "scenarios_synthetic.csv", "cpi_synthetic.csv", "rates_synthetic.csv"] {
        assert!(text.contains(&format!("# input {input} sha256 ")), "{input}");
    }
}

#[test]
fn changing_an_input_changes_its_checksum() {
    let a = workspace(|t| t);
    let b = workspace(|t| t);
    let rates = b.path().join("rates_synthetic.csv");
    let text = fs::read_to_string(&rates).unwrap() + "60,0.0160\n";
    fs::write(&rates, text).unwrap();
    let (_, out_a) = cep(a.path(), &["sanity"]);
    let (_, out_b) = cep(b.path(), &["sanity"]);
    let line = |p: &Path| {
        fs::read_to_string(p.join("sanity.csv"))
            .unwrap()
            .lines()
            .find(|l| l.contains("rates_synthetic.csv"))
            .unwrap()
            .to_string()
    };
    assert_ne!(line(&out_a), line(&out_b));
}

#[test]
fn sanity_reports_pass() {
    let dir = workspace(|t| t);
    let (output, out) = cep(dir.path(), &["sanity"]);
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("4.27MT versus 3.91MT, sanity check pass"), "{stdout}");
    let rows = data_rows(&fs::read_to_string(out.join("sanity.csv")).unwrap());
    assert_eq!(rows[0].last().unwrap(), "pass");
}

#[test]
fn zero_hazard_gives_zero_add_on() {
    let dir = workspace(|t| t.replace("hazard = 0.041666666666666664", "hazard = 0.0"));
    let (output, out) = cep(dir.path(), &["permanence"]);
    assert!(output.status.success());
    let rows = data_rows(&fs::read_to_string(out.join("permanence.csv")).unwrap());
    assert!(!rows.is_empty());
    for r in rows {
        assert_eq!(r[3], "0.0000");
        assert_eq!(r[2], r[4]);
    }
}

#[test]
fn zero_price_scenario_gives_zero_spreads() {
    let dir = workspace(|t| t);
    let scenarios = dir.path().join("scenarios_synthetic.csv");
    let text = fs::read_to_string(&scenarios).unwrap() + "Flat zero,2020,0\nFlat zero,2050,0\n";
    fs::write(&scenarios, text).unwrap();
    let (output, out) = cep(dir.path(), &["spreads"]);
    assert!(output.status.success());
    let rows = data_rows(&fs::read_to_string(out.join("spreads.csv")).unwrap());
    let zero: Vec<_> = rows.iter().filter(|r| r[2] == "Flat zero").collect();
    assert_eq!(zero.len(), 10);
    assert!(zero.iter().all(|r| r[3..].iter().all(|v| v == "0")));
}

#[test]
fn termsheet_json_has_both_parts_and_round_trips() {
    let dir = workspace(|t| t);
    let (output, out) = cep(dir.path(), &["termsheet", "--case", "03", "--years", "30"]);
    assert!(output.status.success());
    let text = fs::read_to_string(out.join("termsheet_03_30y.json")).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let ts = &doc["termsheet"];
    assert!(ts["part1"]["flows"].is_array());
    assert!(ts["part2"]["flows"].is_array());
    let parsed: LinkedTermsheet = serde_json::from_value(ts.clone()).unwrap();
    assert_eq!(parsed.case_id, "03");
    assert_eq!(serde_json::to_value(&parsed).unwrap(), *ts);
}

#[test]
fn markdown_and_json_formats() {
    let dir = workspace(|t| t);
    let (_, out) = cep(dir.path(), &["netzero", "--format", "markdown"]);
    let md = fs::read_to_string(out.join("netzero.md")).unwrap();
    assert!(md.contains("| case_id | technology | scenario | 10y | 20y | 30y | All |"));
    assert!(md.contains("| NA |"));
    let (_, out) = cep(dir.path(), &["spreads", "--format", "json"]);
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("spreads.json")).unwrap()).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 40);
    assert!(doc["header"]["config_sha256"].is_string());
}

#[test]
fn seed_changes_only_monte_carlo_columns() {
    let dir = workspace(|t| t);
    let (_, out) = cep(dir.path(), &["permanence", "--seed", "1"]);
    let a = data_rows(&fs::read_to_string(out.join("permanence.csv")).unwrap());
    let (_, out) = cep(dir.path(), &["permanence", "--seed", "2"]);
    let b = data_rows(&fs::read_to_string(out.join("permanence.csv")).unwrap());
    assert_eq!(a.len(), b.len());
    assert!(a.iter().zip(&b).all(|(x, y)| x[..5] == y[..5]));
    assert!(a.iter().zip(&b).any(|(x, y)| x[5] != y[5]));
}

#[test]
fn missing_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let (output, _) = cep(dir.path(), &["spreads"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn invalid_config_exits_2() {
    let dir = workspace(|t| t.replace("recovery = 0.4", "recovery = 1.4"));
    let (output, _) = cep(dir.path(), &["spreads"]);
    assert_eq!(output.status.code(), Some(2));
    let dir = workspace(|t| t + "\nunknown_key = 1\n");
    let (output, _) = cep(dir.path(), &["spreads"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn missing_data_file_exits_2() {
    let dir = workspace(|t| t);
    fs::remove_file(dir.path().join("cpi_synthetic.csv")).unwrap();
    let (output, _) = cep(dir.path(), &["sanity"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("cpi_synthetic.csv"));
}

#[test]
fn malformed_data_exits_3() {
    let dir = workspace(|t| t);
    let tech = dir.path().join("technology.csv");
    let text = fs::read_to_string(&tech).unwrap().replace("01,Ultra-supercritical coal (USC),650", "01,Ultra-supercritical coal (USC),-650");
    fs::write(&tech, text).unwrap();
    let (output, _) = cep(dir.path(), &["spreads"]);
    assert_eq!(output.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&output.stderr).contains("size"));
}

#[test]
fn unknown_termsheet_case_exits_3() {
    let dir = workspace(|t| t);
    let (output, _) = cep(dir.path(), &["termsheet", "--case", "99"]);
    assert_eq!(output.status.code(), Some(3));
}
