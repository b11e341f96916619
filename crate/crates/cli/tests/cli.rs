use std::io::Write;
use std::process::{Command, Output};

use curvegenus::report::Report;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvegenus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn structured(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "structured"]);
    let o = run(&all);
    let text = stdout(&o);
    (
        o.status.code().unwrap(),
        serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}")),
    )
}

fn constraint_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn castelnuovo_in_p7() {
    let (code, v) = structured(&["bound", "castelnuovo", "--ambient", "7", "--d", "217"]);
    assert_eq!(code, 0);
    assert_eq!(v[0]["value"], "3780");
}

#[test]
fn p4_even_degree() {
    let (code, v) = structured(&["bound", "no-quadrics", "--r", "4", "--d", "24"]);
    assert_eq!(code, 0);
    assert_eq!(v[0]["value"], "55");
    assert!(v[0]["attained_by"].as_str().unwrap().contains("Veronese"));
    let table = stdout(&run(&["bound", "no-quadrics", "--r", "4", "--d", "24"]));
    assert!(table.contains("55"));
}

#[test]
fn out_of_range_is_annotated_not_refused() {
    let (code, v) = structured(&["bound", "no-quadrics", "--r", "4", "--d", "10"]);
    assert_eq!(code, 0);
    assert_eq!(v[0]["in_range"], false);
    assert!(v[0]["notes"][0].as_str().unwrap().contains("outside"));
}

#[test]
fn sweeps_emit_one_row_per_degree() {
    let (code, v) = structured(&["bound", "eh-pi2", "--d-range", "20..29"]);
    assert_eq!(code, 0);
    let ds: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["d"].as_str().unwrap()).collect();
    assert_eq!(ds, ["20", "21", "22", "23", "24", "25", "26", "27", "28", "29"]);
}

#[test]
fn scroll_families() {
    let (_, v) = structured(&["bound", "no-quadrics", "--r", "7", "--d", "5000"]);
    assert_eq!(v[0]["s"], "11");
    let (_, v) = structured(&["bound", "no-cubics", "--r", "10", "--d", "5000"]);
    assert_eq!(v[0]["s"], "47");
    assert_eq!(
        run(&["bound", "no-quadrics", "--r", "9", "--d", "500"]).status.code(),
        Some(2)
    );
}

#[test]
fn search_case_ii() {
    let f = constraint_file(
        r#"{"d": 30, "N": 3, "fixed": {"1": 4, "2": 9}, "lower": {"3": 14, "4": 19}, "strict": true, "label": "case II"}"#,
    );
    let (code, v) = structured(&["search", "--constraints", f.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["bound"], 85);
    assert_eq!(v["profile"], serde_json::json!([1, 4, 9, 14, 19, 22, 27, 30]));
    assert_eq!(v["strict"], true);
}

#[test]
fn search_recovers_castelnuovo() {
    let f = constraint_file("");
    let (code, v) = structured(&[
        "search",
        "--constraints",
        f.path().to_str().unwrap(),
        "--d",
        "21",
        "--ambient",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["bound"], 57);
}

#[test]
fn search_exit_codes() {
    let f = constraint_file(r#"{"d": 21, "N": 3, "fixed": {"2": 6}}"#);
    let o = run(&["search", "--constraints", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("h(2)"));

    let f = constraint_file(r#"{"d": 21, "N": 3, "extra": 1}"#);
    assert_eq!(
        run(&["search", "--constraints", f.path().to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["search", "--constraints", "/nonexistent/file.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["bound", "nonsense"]).status.code(), Some(2));
}

#[test]
fn surface_commands() {
    let (code, v) = structured(&["surface", "h0", "--surface", r#"{"kind": "veronese2"}"#, "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["kernel_dim"], 6);
    let o = run(&[
        "surface",
        "certify",
        "--surface",
        r#"{"kind": "veronese2", "target_dim": 4}"#,
    ]);
    assert_eq!(o.status.code(), Some(0));
    // the unprojected scroll lies on 15 quadrics
    let o = run(&[
        "surface",
        "certify",
        "--surface",
        r#"{"kind": "scroll", "a": 3, "b": 3}"#,
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn report_round_trips_and_exit_code_tracks_passes() {
    let o = run(&["verify", "paper", "--only", "params", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let report = Report::from_json(&text).unwrap();
    assert!(report.all_pass());
    assert_eq!(report.to_json(), text);
}

#[test]
fn appendix_replays_every_degree() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = run(&[
        "verify",
        "paper",
        "--only",
        "appendix",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report = Report::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    for d in 17..=143 {
        assert!(
            report
                .checks
                .iter()
                .any(|c| c.name.starts_with(&format!("appendix.d{d}."))),
            "d = {d}"
        );
    }
}

#[test]
fn seeded_engine_suite_is_deterministic() {
    let a = stdout(&run(&[
        "verify",
        "paper",
        "--only",
        "engine",
        "--seed",
        "3",
        "--format",
        "structured",
    ]));
    let b = stdout(&run(&[
        "verify",
        "paper",
        "--only",
        "engine",
        "--seed",
        "3",
        "--format",
        "structured",
    ]));
    assert_eq!(a, b);
    assert!(a.contains("\"seed\": \"3\""));
}
