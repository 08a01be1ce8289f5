//! Contract tests for the command-line surface: exact example outputs,
//! exit codes, input format detection, and engine agreement.

use std::io::Write;
use std::process::{Command, Output};

fn spinnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinnet"))
        .args(args)
        .output()
        .expect("run spinnet binary")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn corpus(name: &str) -> String {
    format!("{}/../../corpus/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn delta_two_prints_the_documented_polynomial() {
    let out = spinnet(&["recoupling", "delta", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1*A^-4 + 1*A^0 + 1*A^4\n");
}

#[test]
fn inadmissible_theta_is_the_zero_value_with_a_note() {
    let out = spinnet(&["recoupling", "theta", "1", "2", "4"]);
    assert_eq!(out.status.code(), Some(0), "0 is a value, not an error");
    assert_eq!(stdout(&out), "0\n");
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("inadmissible triple (1,2,4)"), "stderr: {err}");
}

#[test]
fn inadmissible_lambda_is_an_error() {
    let out = spinnet(&["recoupling", "lambda", "1", "2", "4"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("(1,2,4)"), "must print the failing triple: {err}");
}

#[test]
fn eval_theta_at_color_one_is_zero() {
    let out = spinnet(&["eval", "--file", &corpus("theta"), "--j", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0\n");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(spinnet(&["recoupling", "delta"]).status.code(), Some(2));
    assert_eq!(spinnet(&["recoupling", "delta", "x"]).status.code(), Some(2));
    assert_eq!(spinnet(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(spinnet(&["eval", "--file", &corpus("hopf")]).status.code(), Some(2));
    assert_eq!(spinnet(&["no-such-command"]).status.code(), Some(2));
    let missing = spinnet(&["eval", "--file", "no/such/file.json", "--j", "1"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn invalid_diagrams_exit_4() {
    // A graph-kind file fed to the link-only bracket.
    let out = spinnet(&["jones", "--file", &corpus("theta")]);
    assert_eq!(out.status.code(), Some(4));
    // A word that parses but is structurally invalid: 4, naming the slice.
    let mut tmp = tempfile::NamedTempFile::new().unwrap();
    write!(tmp, "cup 0\ncap 1\n").unwrap();
    let out = spinnet(&["eval", "--file", tmp.path().to_str().unwrap(), "--j", "1"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8(out.stderr).unwrap().contains("slice 1"));
    // A word that does not even parse: 2.
    let mut tmp = tempfile::NamedTempFile::new().unwrap();
    writeln!(tmp, "cupp 0").unwrap();
    let out = spinnet(&["eval", "--file", tmp.path().to_str().unwrap(), "--j", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn text_format_is_accepted() {
    let mut tmp = tempfile::NamedTempFile::new().unwrap();
    write!(tmp, "# a closed loop through one 2-valent vertex\ncup 0\nvertex 0 in=2 out=0\n")
        .unwrap();
    let out = spinnet(&["eval", "--file", tmp.path().to_str().unwrap(), "--j", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "1*A^-4 + 1*A^0 + 1*A^4\n", "one loop at color 2 is Δ₂");
}

#[test]
fn explicit_color_map_overrides() {
    let mut colors = tempfile::NamedTempFile::new().unwrap();
    write!(colors, "{{\"0\": 2, \"1\": 2}}").unwrap();
    let out = spinnet(&[
        "eval",
        "--file",
        &corpus("two_vertex_cycle"),
        "--colors",
        colors.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    // A 2-vertex costs 1/Δ, so a cycle through two of them is 1/Δ₂ · paired
    // loop value Δ₂·Δ₂ ... = 1 after both vertex normalizations.
    assert_eq!(stdout(&out), "1*A^0\n");
}

#[test]
fn fast_and_oracle_engines_agree_on_corpus_files() {
    for (name, j) in [("theta", "2"), ("unknot_vertex", "1"), ("two_vertex_cycle", "2")] {
        let fast = spinnet(&["eval", "--file", &corpus(name), "--j", j]);
        let oracle = spinnet(&["eval", "--file", &corpus(name), "--j", j, "--engine", "oracle"]);
        assert_eq!(fast.status.code(), Some(0));
        assert_eq!(oracle.status.code(), Some(0));
        assert_eq!(stdout(&fast), stdout(&oracle), "{name} at j={j}");
        let alias = spinnet(&["oracle", "--file", &corpus(name), "--j", j]);
        assert_eq!(stdout(&alias), stdout(&fast), "oracle subcommand on {name}");
    }
    // Links too: the pair value of the Hopf link at color 1.
    let fast = spinnet(&["eval", "--file", &corpus("hopf"), "--j", "1"]);
    let oracle = spinnet(&["oracle", "--file", &corpus("hopf"), "--j", "1"]);
    assert_eq!(stdout(&fast), stdout(&oracle));
}

#[test]
fn jones_of_mirror_trefoils_are_bar_images() {
    let out = spinnet(&["jones", "--file", &corpus("trefoil"), "--normalized"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "-1*A^-16 + 1*A^-12 + 1*A^-4\n");
}

#[test]
fn json_envelope_has_input_echo_and_engine_metadata() {
    let out = spinnet(&["--json", "eval", "--file", &corpus("theta"), "--j", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(v["command"], "eval");
    assert_eq!(v["engine"]["mode"], "fast");
    assert_eq!(v["engine"]["threads"], 1);
    assert_eq!(v["input"]["diagram"]["format"], "spinnet-diagram/1");
    assert_eq!(v["input"]["j"], 1);
    assert_eq!(v["result"]["text"], "0");
}

#[test]
fn expand_vertex_lists_admissible_terms() {
    let out = spinnet(&["expand-vertex", "--labels", "1,1/1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("2 term(s)"), "{text}");
    assert!(text.contains("labels [0, 1]"), "{text}");
    assert!(text.contains("labels [2, 1]"), "{text}");
    // Alternative tree shape: same number of admissible channels.
    let alt = spinnet(&["expand-vertex", "--labels", "1,1,1,1", "--tree", "1,0"]);
    assert!(stdout(&alt).contains("2 term(s)"));
    // Odd boundary: the zero vertex, reported as a value.
    let odd = spinnet(&["expand-vertex", "--labels", "1,1,1"]);
    assert_eq!(odd.status.code(), Some(0));
    assert!(stdout(&odd).contains("0 term(s)"));
}

#[test]
fn verify_reports_named_checks() {
    let out = spinnet(&["verify", "--suite", "qpoly"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("ok   qpoly::quantum-integer-recurrence"));
    assert!(text.trim_end().ends_with("0 failed"));
    let json = spinnet(&["--json", "verify", "--suite", "qpoly"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v["result"]["failed"], 0);
    assert!(v["result"]["checks"].as_array().unwrap().len() >= 4);
}
