//! End-to-end checks of the command-line interface: exit codes, output
//! shapes in all three formats, and byte-level determinism.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paramodular"))
        .args(args)
        .output()
        .expect("the binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn json_of(output: &Output) -> Value {
    serde_json::from_str(&stdout_of(output)).expect("stdout parses as JSON")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("the process exits normally")
}

#[test]
fn xi_table_is_deterministic_and_self_consistent() {
    let first = run(&["xi", "36", "--format", "json"]);
    let second = run(&["xi", "36", "--format", "json"]);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(first.stdout, second.stdout, "identical inputs give identical bytes");
    let doc = json_of(&first);
    assert_eq!(doc["command"], "xi");
    assert_eq!(doc["parameters"]["t"], 36);
    assert_eq!(doc["parameters"]["order"], 4);
    let rows = doc["rows"].as_array().expect("rows array");
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["d"], 1);
    assert_eq!(rows[0]["xi"], 1);
    for row in rows {
        let d = row["d"].as_i64().unwrap();
        let xi = row["xi"].as_i64().unwrap();
        assert_eq!((xi + 1) % (2 * d), 0, "xi is -1 modulo 2d");
        assert_eq!((xi - 1) % (2 * (36 / d)), 0, "xi is +1 modulo 2t/d");
    }
}

#[test]
fn dims_reports_the_known_eigenspace() {
    let output = run(&["dims", "42", "--format", "json"]);
    assert_eq!(exit_code(&output), 0);
    let doc = json_of(&output);
    let rows = doc["rows"].as_array().expect("rows array");
    let hit = rows.iter().any(|row| {
        row["kind"] == "dimension" && row["pattern"] == "2:+,3:+,7:-" && row["value"] == 1
    });
    assert!(hit, "the sign pattern (+, +, -) at t = 42 has a one-dimensional eigenspace");
    let full = rows
        .iter()
        .find(|row| row["kind"] == "trace" && row["d"] == 1)
        .expect("the full-space trace row exists");
    assert_eq!(full["value"], 1);
}

#[test]
fn scan_lists_the_thirteen_pairs() {
    let output = run(&["scan-trivial", "--max-t", "60", "--format", "json"]);
    assert_eq!(exit_code(&output), 0);
    let doc = json_of(&output);
    assert_eq!(doc["parameters"]["pair_count"], 13);
    let rows = doc["rows"].as_array().expect("rows array");
    let zeros_to_forty = rows
        .iter()
        .filter(|row| row["kind"] == "zero-dimension" && row["t"].as_i64().unwrap() <= 40)
        .count();
    assert_eq!(zeros_to_forty, 20, "twenty zero-dimensional indices up to 40");
    let first_pair = rows
        .iter()
        .find(|row| row["kind"] == "vanishing-pair")
        .expect("a vanishing pair exists");
    assert_eq!(first_pair["t"], 21);
    assert_eq!(first_pair["character"], "3:-,7:+");
}

#[test]
fn humbert_lists_one_equation_per_component() {
    let output = run(&["humbert", "5", "--delta", "5", "--format", "json"]);
    assert_eq!(exit_code(&output), 0);
    let doc = json_of(&output);
    assert_eq!(doc["parameters"]["components"], 1);
    let rows = doc["rows"].as_array().expect("rows array");
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["b"], 5);
    assert_eq!(rows[0]["te"], 0);
    assert_eq!(rows[0]["ta"], 5);
    assert_eq!(rows[0]["c"], 1);
    assert_eq!(rows[0]["f"], 0);
    assert_eq!(rows[0]["discriminant"], 5);
    assert_eq!(rows[0]["equation"], "tau3 + 5*tau2 + 5*tau1 = 0");
}

#[test]
fn ramification_json_follows_the_documented_shape() {
    let output = run(&["ramification", "6", "--oracle", "--format", "json"]);
    assert_eq!(exit_code(&output), 0);
    let doc = json_of(&output);
    assert_eq!(doc["t"], 6);
    assert_eq!(doc["oracle_consistent"], true);
    assert_eq!(doc["parameters"]["bound"], 60, "the default survey bound is 10t");
    let entries = doc["entries"].as_array().expect("entries array");
    let ds: Vec<i64> = entries.iter().map(|e| e["d"].as_i64().unwrap()).collect();
    assert_eq!(ds, vec![2, 3, 6]);
    assert_eq!(entries[0]["discriminants"].as_array().unwrap().len(), 0);
    assert_eq!(entries[1]["discriminants"], serde_json::json!([12]));
    assert_eq!(entries[2]["discriminants"], serde_json::json!([24]));
    let witnesses = entries[1]["witnesses"].as_object().expect("witness map");
    let coords = witnesses["12"].as_array().expect("witness coordinates");
    assert_eq!(coords.len(), 5, "witness vectors have five coordinates");
    assert!(coords.iter().all(|c| c.is_string()), "coordinates render as exact strings");
}

#[test]
fn ramification_covers_the_identity_coset_on_request() {
    let output = run(&["ramification", "6", "--d", "1", "--format", "json"]);
    assert_eq!(exit_code(&output), 0);
    let doc = json_of(&output);
    let entries = doc["entries"].as_array().expect("entries array");
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["d"], 1);
    assert_eq!(entries[0]["discriminants"], serde_json::json!([1, 4]));
    let witnesses = entries[0]["witnesses"].as_object().expect("witness map");
    assert!(witnesses.contains_key("1") && witnesses.contains_key("4"));
}

#[test]
fn a_starved_oracle_fails_with_a_witness() {
    let output = run(&["ramification", "6", "--oracle", "--bound", "1", "--format", "json"]);
    assert_eq!(exit_code(&output), 1, "an inconsistent oracle is a verification failure");
    let doc = json_of(&output);
    assert_eq!(doc["oracle_consistent"], false);
    let verdicts = doc["verdicts"].as_array().expect("verdicts array");
    assert_eq!(verdicts.len(), 1);
    assert_eq!(verdicts[0]["name"], "oracle-agreement");
    assert_eq!(verdicts[0]["pass"], false);
    assert!(verdicts[0]["witness"].is_string(), "the failure carries a witness");
}

#[test]
fn invalid_inputs_exit_with_code_two() {
    assert_eq!(exit_code(&run(&["xi", "0"])), 2);
    assert_eq!(exit_code(&run(&["ramification", "12"])), 2, "12 is not square-free");
    assert_eq!(exit_code(&run(&["ramification", "6", "--d", "5"])), 2, "5 does not divide 6");
    assert_eq!(exit_code(&run(&["humbert", "5", "--delta", "0"])), 2);
    assert_eq!(
        exit_code(&run(&["hilbert-check", "5", "--variant", "four-t-other"])),
        2,
        "t = 5 is 1 mod 4, so the other-class variant is inadmissible"
    );
    assert_eq!(exit_code(&run(&["no-such-command"])), 2);
    assert_eq!(exit_code(&run(&["verify", "no-such-suite"])), 2);
    assert_eq!(exit_code(&run(&["verify", "brasch", "--bound", "0"])), 2);
    let bad = run(&["xi", "0"]);
    assert!(bad.stdout.is_empty(), "diagnostics go to stderr, not the report stream");
    assert!(!bad.stderr.is_empty());
}

#[test]
fn verify_brasch_passes_all_six_members() {
    let output = run(&["verify", "brasch", "--format", "json"]);
    assert_eq!(exit_code(&output), 0);
    let doc = json_of(&output);
    assert_eq!(doc["parameters"]["suite"], "brasch");
    let verdicts = doc["verdicts"].as_array().expect("verdicts array");
    assert_eq!(verdicts.len(), 6);
    assert!(verdicts.iter().all(|v| v["pass"] == true));
    assert!(verdicts.iter().all(|v| v["witness"].is_null()));
}

#[test]
fn verify_csv_is_a_verdict_table() {
    let output = run(&["verify", "brasch", "--format", "csv"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout_of(&output);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("name,trials,pass,witness"));
    assert_eq!(lines.count(), 6, "one record per verdict");
}

#[test]
fn verify_diagram_is_deterministic_and_seed_sensitive() {
    let first = run(&["verify", "prop1-2-diagram", "--format", "json"]);
    let second = run(&["verify", "prop1-2-diagram", "--format", "json"]);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    let reseeded = run(&["verify", "prop1-2-diagram", "--seed", "7", "--format", "json"]);
    assert_eq!(exit_code(&reseeded), 0, "the diagram commutes for every seed");
    assert_ne!(first.stdout, reseeded.stdout, "the seed is recorded in the report");
}

#[test]
fn hilbert_check_runs_every_named_check() {
    let output = run(&["hilbert-check", "5", "--variant", "t-one-mod4", "--format", "json"]);
    assert_eq!(exit_code(&output), 0);
    let doc = json_of(&output);
    assert_eq!(doc["parameters"]["variant"], "t-one-mod4");
    assert_eq!(doc["parameters"]["samples"], 13);
    let names: Vec<&str> = doc["verdicts"]
        .as_array()
        .expect("verdicts array")
        .iter()
        .map(|v| v["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        vec![
            "swap-involution",
            "off-image-rejection",
            "embed-round-trip",
            "image-identity",
            "riemann-form",
            "equivariance",
            "plane-transport",
        ]
    );
    assert!(doc["verdicts"].as_array().unwrap().iter().all(|v| v["pass"] == true));
}

#[test]
fn hilbert_check_omits_the_transport_off_the_congruence_class() {
    let output = run(&["hilbert-check", "3", "--variant", "four-t-other", "--format", "json"]);
    assert_eq!(exit_code(&output), 0);
    let doc = json_of(&output);
    let names: Vec<&str> = doc["verdicts"]
        .as_array()
        .expect("verdicts array")
        .iter()
        .map(|v| v["name"].as_str().unwrap())
        .collect();
    assert!(!names.contains(&"plane-transport"), "the transport needs t = 1 mod 4");
    assert!(doc["verdicts"].as_array().unwrap().iter().all(|v| v["pass"] == true));
}

#[test]
fn out_file_receives_exactly_the_report_bytes() {
    let dir = std::env::temp_dir().join("paramodular-cli-test");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join("xi36.json");
    let piped = run(&["xi", "36", "--format", "json"]);
    let written = run(&["xi", "36", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(exit_code(&written), 0);
    assert!(written.stdout.is_empty(), "--out replaces the standard output stream");
    let bytes = std::fs::read(&path).expect("the report file exists");
    assert_eq!(bytes, piped.stdout, "the file carries the same bytes");
    std::fs::remove_file(&path).ok();
}

#[test]
fn text_format_aligns_the_scan_table() {
    let output = run(&["scan-trivial", "--max-t", "25", "--format", "text"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout_of(&output);
    assert!(text.starts_with("command: scan-trivial\n"));
    assert!(text.contains("max_t: 25"));
    assert!(text.contains("kind"), "the table prints a header");
    assert!(text.contains("vanishing-pair"));
    assert!(text.contains("3:-,7:+"), "t = 21 appears with its sign pattern");
}

#[test]
fn csv_rows_carry_exact_rationals() {
    let output = run(&["ramification", "5", "--format", "csv"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout_of(&output);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("d,discriminants,witnesses,oracle_consistent"));
    let row = lines.next().expect("the top coset row");
    assert!(row.starts_with("5,"), "one entry for the top coset: {row}");
    assert!(row.contains("20") && row.contains("-> ("), "witnesses render inline: {row}");
    assert!(!text.contains('.'), "no floating point anywhere in the output");
}
