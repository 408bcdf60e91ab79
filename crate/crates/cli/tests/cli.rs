use std::process::{Command, Output};

use fieldcheck::verify::SuiteReport;

fn fieldcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fieldcheck"))
        .args(args)
        .env_remove("FIELDCHECK_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const COUNTEREXAMPLE: &[&str] = &["run", "--scenario", "counterexample", "--degree", "8", "--window", "10"];

#[test]
fn counterexample_json_meets_expectations() {
    let o = fieldcheck(&[COUNTEREXAMPLE, &["--format", "json"]].concat());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let reports: Vec<SuiteReport> = serde_json::from_str(&text).unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].checks.len(), 4);
    assert_eq!(reports[0].params.degree, 8);

    // Parsing and re-rendering reproduces the output byte for byte.
    assert_eq!(fieldcheck_cli::render_json(&reports), text);
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(fieldcheck(&["run", "--degree", "-1"]).status.code(), Some(2));
    assert_eq!(fieldcheck(&["run", "--scenario", "nope"]).status.code(), Some(2));
    assert_eq!(fieldcheck(&["--help"]).status.code(), Some(0));
}

#[test]
fn explain_known_and_unknown() {
    let o = fieldcheck(&["explain", "associativity"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(z - w)^N"));

    let o = fieldcheck(&["explain", "weak-locality"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Res_z"));

    let o = fieldcheck(&["explain", "asociativity"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("associativity"));
}

#[test]
fn unwritable_output_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.json");
    let o = fieldcheck(&[COUNTEREXAMPLE, &["--out", path.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_fieldcheck"))
        .args([COUNTEREXAMPLE, &["--format", "json"]].concat())
        .env("FIELDCHECK_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(dir.path().join("counterexample.json")).unwrap();
    let reports: Vec<SuiteReport> = serde_json::from_str(&written).unwrap();
    assert_eq!(reports[0].suite, "counterexample");
}

#[test]
fn text_output_is_deterministic() {
    let args = ["run", "--scenario", "counterexample", "--degree", "5", "--window", "4"];
    let a = fieldcheck(&args);
    let b = fieldcheck(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("4 of 4 checks as expected"));
}
