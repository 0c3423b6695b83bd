use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use probquant_cli::evaluate_problem;
use probquant_cli::problem::{parse_json, Problem};

fn problems_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../problems")
}

fn probquant(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_probquant"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("probquant-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn value_line(o: &Output) -> f64 {
    let out = stdout(o);
    let line = out.lines().find(|l| l.starts_with("value: ")).expect("value line");
    line["value: ".len()..].parse().unwrap()
}

#[test]
fn worked_example_file() {
    let path = problems_dir().join("nearly_all_workers.json");
    for strategy in ["exact", "dp", "auto"] {
        let o = probquant(&["evaluate", path.to_str().unwrap(), "--strategy", strategy]);
        assert!(o.status.success(), "{}", stderr(&o));
        assert!((value_line(&o) - 0.346).abs() < 5e-4);
    }
}

#[test]
fn crisp_example_files() {
    let o = probquant(&["evaluate", problems_dir().join("at_least_80_crisp.json").to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("value: 0.000000"));
    let o = probquant(&["evaluate", problems_dir().join("at_least_about_80_crisp.json").to_str().unwrap()]);
    assert!(stdout(&o).contains("value: 0.222222"));
}

#[test]
fn json_output_carries_the_record() {
    let path = problems_dir().join("most_tall_unary.json");
    let o = probquant(&["evaluate", path.to_str().unwrap(), "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["evaluator"], "unary_dp");
    assert_eq!(v["quantifier"], "most");
    assert!(v["value"].as_f64().unwrap() > 0.0);
    assert!(v["elapsed"].as_f64().is_some());
}

#[test]
fn malformed_grade_exits_with_parse_code() {
    let path = write_temp(
        "bad_grade.json",
        r#"{"universe": {"size": 2}, "sets": {"a": [0.5, 1.2]},
            "quantifier": {"kind": "unary_quantitative", "fuzzy_number": {"shape": "exists"}},
            "arguments": ["a"]}"#,
    );
    let o = probquant(&["evaluate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("sets.a[1]"), "{}", stderr(&o));
}

#[test]
fn type_errors_report_the_field_path() {
    let path = write_temp(
        "bad_type.json",
        r#"{"universe": {"size": "four"}, "sets": {}, "quantifier": {"kind": "table"}, "arguments": []}"#,
    );
    let o = probquant(&["evaluate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("universe.size"), "{}", stderr(&o));
}

#[test]
fn unknown_argument_set() {
    let path = write_temp(
        "unknown_set.json",
        r#"{"universe": {"size": 2}, "sets": {"a": [0.5, 0.2]},
            "quantifier": {"kind": "unary_quantitative", "fuzzy_number": {"shape": "exists"}},
            "arguments": ["b"]}"#,
    );
    let o = probquant(&["evaluate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("arguments[0]"));
}

#[test]
fn size_guard_exits_with_code_3() {
    let grades = vec!["0.5"; 25].join(", ");
    let path = write_temp(
        "too_big.json",
        &format!(
            r#"{{"universe": {{"size": 25}}, "sets": {{"a": [{grades}]}},
                "quantifier": {{"kind": "unary_quantitative", "fuzzy_number": {{"shape": "exists"}}}},
                "arguments": ["a"], "strategy": "exact"}}"#
        ),
    );
    let o = probquant(&["evaluate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    // the DP evaluator handles the same instance
    let o = probquant(&["evaluate", path.to_str().unwrap(), "--strategy", "dp"]);
    assert!(o.status.success());
}

#[test]
fn evaluator_mismatch_exits_with_code_4() {
    let path = write_temp(
        "mismatch.json",
        r#"{"universe": {"size": 2}, "sets": {"a": [0.5, 0.2]},
            "quantifier": {"kind": "table", "table": {"values": [0.0, 0.5, 0.5, 1.0]}},
            "arguments": ["a"], "strategy": "dp"}"#,
    );
    let o = probquant(&["evaluate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
    let o = probquant(&["evaluate", path.to_str().unwrap(), "--strategy", "limit"]);
    assert_eq!(o.status.code(), Some(4));
    let o = probquant(&["evaluate", path.to_str().unwrap(), "--strategy", "exact"]);
    assert!(o.status.success());
    // the table is |Y| / 2, so the value is the mean grade
    assert!((value_line(&o) - 0.35).abs() < 1e-6);
}

#[test]
fn round_trip_is_bit_exact() {
    for name in [
        "nearly_all_workers.json",
        "at_least_80_crisp.json",
        "at_least_about_80_crisp.json",
        "most_tall_unary.json",
    ] {
        let text = std::fs::read_to_string(problems_dir().join(name)).unwrap();
        let parsed: Problem = parse_json(&text).unwrap();
        let reparsed: Problem = parse_json(&serde_json::to_string(&parsed).unwrap()).unwrap();
        assert_eq!(parsed, reparsed);
        let a = evaluate_problem(&parsed, None, 1).unwrap().record.value;
        let b = evaluate_problem(&reparsed, None, 1).unwrap().record.value;
        assert_eq!(a.to_bits(), b.to_bits(), "{name}");
    }
}

#[test]
fn threads_flag() {
    let path = problems_dir().join("nearly_all_workers.json");
    let o = probquant(&["evaluate", path.to_str().unwrap(), "--threads", "4"]);
    assert!(o.status.success());
    assert!((value_line(&o) - 0.345925).abs() < 1e-6);
}

#[test]
fn temporal_and_population_files() {
    let o = probquant(&["temporal", problems_dir().join("ramp_signal.json").to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let get = |key: &str| -> f64 {
        let line = out.lines().find(|l| l.starts_with(key)).unwrap();
        line[key.len()..].trim().parse().unwrap()
    };
    assert!((get("dp_value:") - 7.0 / 9.0).abs() < 0.03);
    assert!((get("limit_value:") - 7.0 / 9.0).abs() < 0.03);

    let path = problems_dir().join("tall_population.json");
    let a = probquant(&["population", path.to_str().unwrap(), "--json"]);
    let b = probquant(&["population", path.to_str().unwrap(), "--json"]);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn check_command() {
    let o = probquant(&["check", "--suite", "Z", "--probes", "5"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 6);
    let o = probquant(&["check", "--suite", "P", "--probes", "5", "--json"]);
    let reports: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 8);
}

#[test]
fn bench_command_csv() {
    let o = probquant(&["bench", "--m-range", "2:4", "--trials", "3", "--seed", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(headers.iter().collect::<Vec<_>>(), ["m", "evaluator", "mean_elapsed", "max_abs_diff"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 3 * 6);
    for row in rows.iter().filter(|r| r[1].ends_with("_dp")) {
        assert!(row[3].parse::<f64>().unwrap() < 1e-9);
    }
}
