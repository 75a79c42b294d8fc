use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn nilary(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilary")).args(args).env_remove("NILARY_MAX_ORDER").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

#[test]
fn classify_lists_every_two_sided_ideal() {
    let out = nilary(&["classify", "Zn:6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(rows.len(), 4);
    let header: Vec<&str> = text.lines().nth(1).unwrap().split_whitespace().collect();
    let zero: Vec<&str> = rows[0].split_whitespace().collect();
    let col = |abbrev: &str| header.iter().position(|h| *h == abbrev).unwrap();
    assert_eq!(zero[0], "{0}");
    assert_eq!(zero[col("wN")], "Y");
    assert_eq!(zero[col("N")], "n");
}

#[test]
fn classify_generated_ideal() {
    let out = nilary(&["classify", "Zn:12", "--ideal", "4", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = json(&out);
    assert_eq!(rep["ideal"], serde_json::json!([0, 4, 8]));
    assert_eq!(rep["proper"], true);
    assert_eq!(rep["char"]["value"], 12);
    assert_eq!(rep["char"]["factors"], serde_json::json!([[2, 2], [3, 1]]));
    assert_eq!(rep["verdicts"].as_object().unwrap().len(), 17);
}

#[test]
fn classify_empty_generator_list_is_the_zero_ideal() {
    let rep = json(&nilary(&["classify", "M:2:Zn:2", "--ideal", "--json"]));
    assert_eq!(rep["ideal"], serde_json::json!([0]));
    assert_eq!(rep["verdicts"]["completely_nilary"]["holds"], false);
}

#[test]
fn ideals_counts_and_oracle() {
    for (spec, n) in [("Zn:12", 6), ("M:2:Zn:2", 2), ("Zn:7", 2)] {
        let out = nilary(&["ideals", spec, "--oracle", "--json"]);
        assert_eq!(out.status.code(), Some(0), "{spec}");
        let doc = json(&out);
        assert_eq!(doc["count"], n, "{spec}");
        assert_eq!(doc["oracle"], true, "{spec}");
    }
    let left = json(&nilary(&["ideals", "M:2:Zn:2", "--kind", "left", "--json"]));
    assert_eq!(left["count"], 5);
    assert_eq!(left["kind"], "left");
}

#[test]
fn ideals_text_is_sorted_by_size() {
    let text = stdout(&nilary(&["ideals", "Zn:12"]));
    let sizes: Vec<usize> =
        text.lines().skip(3).map(|l| l.split_whitespace().nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(sizes, vec![1, 2, 3, 4, 6, 12]);
}

#[test]
fn verify_single_case() {
    let out = nilary(&["verify", "--builtin", "--case", "E2.2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let cases = doc["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 1);
    assert_eq!(cases[0]["id"], "E2.2");
    assert!(cases[0].get("elapsed_ms").is_none());
}

#[test]
fn verify_rejects_a_malformed_corpus() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, r#"["Zn:6", "Zn:"]"#).unwrap();
    let out = nilary(&["verify", "--corpus", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Zn:"));
}

#[test]
fn verify_corpus_file_with_caps() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, r#"{{"rings": ["Zn:6", "M:2:Zn:2"], "max_order": 8}}"#).unwrap();
    let out = nilary(&["verify", "--corpus", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_case_is_a_usage_error() {
    assert_eq!(nilary(&["verify", "--case", "P9.9"]).status.code(), Some(2));
}

#[test]
fn hunt_finds_the_standard_examples() {
    let out = nilary(&["hunt", "--builtin", "--json", "weakly_nilary and not nilary"]);
    assert_eq!(out.status.code(), Some(0));
    let matches = json(&out)["matches"].as_array().unwrap().clone();
    assert!(matches.contains(&serde_json::json!({"ring": "Zn:6", "ideal": [0]})));

    let out = nilary(&["hunt", "--builtin", "--json", "prime and not completely_nilary"]);
    assert_eq!(out.status.code(), Some(0));
    let matches = json(&out)["matches"].as_array().unwrap().clone();
    assert!(matches.contains(&serde_json::json!({"ring": "M:2:Zn:2", "ideal": [0]})));
}

#[test]
fn hunt_without_matches_exits_one() {
    let out = nilary(&["hunt", "--builtin", "completely_prime and not prime"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("0 matches"));
}

#[test]
fn hunt_rejects_unknown_atoms() {
    let out = nilary(&["hunt", "nilary and not semiprme"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("semiprme"));
}

#[test]
fn size_caps_from_flag_and_environment() {
    assert_eq!(nilary(&["classify", "Zn:20", "--max-order", "16"]).status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_nilary"))
        .args(["classify", "Zn:20"])
        .env("NILARY_MAX_ORDER", "16")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_nilary"))
        .args(["classify", "Zn:20", "--max-order", "32"])
        .env("NILARY_MAX_ORDER", "16")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_nilary"))
        .args(["classify", "Zn:4"])
        .env("NILARY_MAX_ORDER", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(nilary(&[]).status.code(), Some(2));
    assert_eq!(nilary(&["classify"]).status.code(), Some(2));
    assert_eq!(nilary(&["ideals", "Zn:4", "--kind", "sideways"]).status.code(), Some(2));
    assert_eq!(nilary(&["classify", "Zn:6", "--ideal", "1,x"]).status.code(), Some(2));
}

#[test]
fn help_documents_the_abbreviations() {
    let out = nilary(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for abbrev in ["cP", "cSP", "cN", "pN", "wNr", "wNl", "cRP"] {
        assert!(text.contains(abbrev), "{abbrev}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [&["classify", "T:2:Zn:2"][..], &["verify", "--builtin", "--case", "P1.2", "--json"]] {
        assert_eq!(nilary(args).stdout, nilary(args).stdout);
    }
}

#[test]
fn ring_table_files() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "2\n0 1\n1 0\n0 0\n0 1\none 1\n").unwrap();
    let spec = format!("file:{}", file.path().display());
    let doc = json(&nilary(&["ideals", &spec, "--json"]));
    assert_eq!(doc["count"], 2);
    let mut broken = tempfile::NamedTempFile::new().unwrap();
    write!(broken, "2\n0 1\n1 0\n0 0\n0 0\none 1\n").unwrap();
    let spec = format!("file:{}", broken.path().display());
    assert_eq!(nilary(&["ideals", &spec]).status.code(), Some(2));
}
