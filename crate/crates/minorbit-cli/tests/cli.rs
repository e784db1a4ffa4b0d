//! End-to-end exercises of the command-line surface: the exit-code contract,
//! output parsing, and schema round-trips.

use std::process::{Command, Output};

fn minorbit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minorbit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn check_exit_codes_follow_the_verdict() {
    let out = minorbit(&["check", "--type", "A", "--rank", "2", "--weight", "2"]);
    assert_eq!(exit_code(&out), 0, "{out:?}");
    assert!(stdout(&out).contains("mcm: true"));

    let out = minorbit(&["check", "--type", "A", "--rank", "2", "--weight", "3"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stdout(&out).contains("mcm: false"));

    let out = minorbit(&["check", "--type", "G", "--rank", "2", "--weight", "3"]);
    assert_eq!(exit_code(&out), 1);

    let out = minorbit(&["check", "--type", "G", "--rank", "2", "--weight", "2"]);
    assert_eq!(exit_code(&out), 0);
}

#[test]
fn check_reports_closed_form_agreement() {
    let out = minorbit(&["check", "--type", "D", "--rank", "4", "--weight", "1;1,0"]);
    let text = stdout(&out);
    assert!(text.contains("closed_form:"));
    assert!(text.contains("agrees"));

    // exceptional types have no closed form
    let out = minorbit(&[
        "check",
        "--type",
        "E",
        "--rank",
        "6",
        "--weight",
        "1,0,0,0,1",
    ]);
    assert!(stdout(&out).contains("closed_form: n/a"));
}

#[test]
fn check_rejects_malformed_input_with_exit_2() {
    for args in [
        vec!["check", "--type", "Q", "--rank", "2", "--weight", "0"],
        vec!["check", "--type", "A", "--rank", "0", "--weight", "0"],
        vec!["check", "--type", "A", "--rank", "3", "--weight", "x"],
        vec!["check", "--type", "A", "--rank", "3", "--weight", "0;1"],
        vec!["check", "--type", "C", "--rank", "3", "--weight", "2;1,0"],
        vec!["check", "--type", "D", "--rank", "4", "--weight", "1;1,-2"],
        vec!["check", "--type", "B", "--rank", "4", "--weight", "1;3/2,1"],
        vec!["check", "--type", "E", "--rank", "6", "--weight", "1,0"],
        vec!["check", "--type", "E", "--rank", "9", "--weight", "1"],
    ] {
        let out = minorbit(&args);
        assert_eq!(exit_code(&out), 2, "{args:?} -> {out:?}");
    }
}

#[test]
fn check_json_parses_and_carries_the_trace() {
    let out = minorbit(&[
        "check", "--type", "C", "--rank", "2", "--weight", "0;1", "--trace", "--format", "json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["is_mcm"], true);
    assert_eq!(doc["closed_form"], true);
    assert!(doc["trace"].as_array().unwrap().len() > 3);
}

#[test]
fn check_spin_weights_parse_halves() {
    let out = minorbit(&[
        "check",
        "--type",
        "B",
        "--rank",
        "4",
        "--weight",
        "0;3/2,1/2",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("weight: 0;3/2,1/2"));
}

#[test]
fn enumerate_prints_the_expected_counts() {
    let out = minorbit(&["enumerate", "--type", "E", "--rank", "6"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("count=97"), "{}", stdout(&out));

    let out = minorbit(&["enumerate", "--type", "E", "--rank", "7"]);
    assert!(stdout(&out).contains("count=99"));

    let out = minorbit(&["enumerate", "--type", "F", "--rank", "4", "--format", "csv"]);
    let text = stdout(&out);
    assert!(text.contains("count=10"));
    // header, comment line, 10 data rows, count line
    let data_rows = text
        .lines()
        .filter(|l| l.chars().next().is_some_and(|c| c.is_ascii_digit()))
        .count();
    assert_eq!(data_rows, 10);
}

#[test]
fn enumerate_classical_needs_a_box() {
    let out = minorbit(&["enumerate", "--type", "A", "--rank", "3"]);
    assert_eq!(exit_code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("box-relative"));

    let out = minorbit(&["enumerate", "--type", "A", "--rank", "2", "--box", "3"]);
    assert_eq!(exit_code(&out), 0);

    // and the box flag is rejected for exceptional scans
    let out = minorbit(&["enumerate", "--type", "G", "--rank", "2", "--box", "3"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn enumerate_json_round_trips_byte_stably() {
    let out = minorbit(&[
        "enumerate",
        "--type",
        "F",
        "--rank",
        "4",
        "--format",
        "json",
    ]);
    let text = stdout(&out);
    let json_part: String = text
        .lines()
        .take_while(|l| !l.starts_with("count="))
        .collect::<Vec<_>>()
        .join("\n")
        + "\n";
    let table: minorbit::McmTable = serde_json::from_str(&json_part).unwrap();
    assert_eq!(table.count, 10);
    assert_eq!(table.levi_type, "C3");
    let re_emitted = minorbit::engine::emit_table(&table, minorbit::TableFormat::Json);
    assert_eq!(re_emitted, json_part);
}

#[test]
fn enumerate_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g2.json");
    let out = minorbit(&[
        "enumerate",
        "--type",
        "G",
        "--rank",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("count=3"));
    let table: minorbit::McmTable =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(table.weights, vec![vec![0], vec![1], vec![2]]);
}

#[test]
fn crosscheck_exit_codes_and_counts() {
    let out = minorbit(&["crosscheck", "--type", "A", "--ranks", "2..2", "--box", "0"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("1 weights tested"));
    assert!(stdout(&out).contains("disagreements=0"));

    let out = minorbit(&[
        "crosscheck",
        "--type",
        "B",
        "--ranks",
        "3..4",
        "--box",
        "2",
        "--spin",
    ]);
    assert_eq!(exit_code(&out), 0, "{out:?}");

    let out = minorbit(&["crosscheck", "--type", "E", "--ranks", "6..6", "--box", "1"]);
    assert_eq!(exit_code(&out), 2);

    let out = minorbit(&["crosscheck", "--type", "C", "--ranks", "4..2", "--box", "1"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn rootinfo_prints_the_orbit_data() {
    let out = minorbit(&["rootinfo", "--type", "E", "--rank", "8"]);
    let text = stdout(&out);
    assert!(text.contains("theta: (0, 0, 0, 0, 0, 0, 1, 1)"));
    assert!(text.contains("levi_type: E7"));
    assert!(text.contains("min_orbit_dim: 58"));

    let out = minorbit(&["rootinfo", "--type", "C", "--rank", "3"]);
    assert!(stdout(&out).contains("rho: (3, 2, 1)"));

    let out = minorbit(&["rootinfo", "--type", "G", "--rank", "2"]);
    let text = stdout(&out);
    assert!(text.contains("levi_type: A1"));
    assert!(text.contains("levi_fundamental_weight_1: (1/2, -1/2, 0)"));

    let out = minorbit(&["rootinfo", "--type", "B", "--rank", "1"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn rootinfo_json_verifies_the_levi_pairings() {
    let out = minorbit(&["rootinfo", "--type", "E", "--rank", "6", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["levi_pairings_verified"], true);
    assert_eq!(doc["positive_roots"], 36);
    assert_eq!(
        doc["theta_covector_over_simple_coroots"],
        serde_json::json!([1, 2, 2, 3, 2, 1])
    );
}

#[test]
fn tables_match_the_committed_goldens() {
    let golden = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../tables");
    let dir = tempfile::tempdir().unwrap();
    let out = minorbit(&["tables", "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0, "{out:?}");
    for k in ["e6", "e7", "e8", "f4", "g2"] {
        for ext in ["json", "csv", "txt"] {
            let name = format!("{k}.{ext}");
            let fresh = std::fs::read(dir.path().join(&name)).unwrap();
            let committed = std::fs::read(golden.join(&name)).unwrap();
            assert_eq!(fresh, committed, "{name} drifted from the committed golden");
        }
    }
}

#[test]
fn tables_writes_all_fifteen_files() {
    let dir = tempfile::tempdir().unwrap();
    // keep this run cheap: E8 at full bound is exercised by the acceptance
    // suite, here the file plumbing is the target
    let out = minorbit(&[
        "tables",
        "--out-dir",
        dir.path().to_str().unwrap(),
        "--bound",
        "6",
        "--ceiling",
        "16",
    ]);
    assert_eq!(exit_code(&out), 0, "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("G2: count=3"));
    assert!(text.contains("F4: count=10"));
    for k in ["e6", "e7", "e8", "f4", "g2"] {
        for ext in ["json", "csv", "txt"] {
            assert!(dir.path().join(format!("{k}.{ext}")).exists(), "{k}.{ext}");
        }
    }

    let out = minorbit(&["tables", "--out-dir", "/proc/nonexistent/tables"]);
    assert_eq!(exit_code(&out), 2);
}
