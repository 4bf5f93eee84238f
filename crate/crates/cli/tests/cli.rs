use std::process::{Command, Output};

use polylog_core::catalog::EquationSpec;
use polylog_core::report::RunReport;
use serde_json::Value;

fn polylog(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polylog"))
        .args(args)
        .env_remove("POLYLOG_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn xi7_term_count_prints_274() {
    let o = polylog(&["check", "--name", "xi7-term-count"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("274"));
}

#[test]
fn eval_cl_at_i_is_catalans_constant() {
    let o = polylog(&["eval-cl", "--m", "2", "--z", "0+1i", "--precision", "50"]);
    assert_eq!(o.status.code(), Some(0));
    // Catalan's constant.
    assert!(stdout(&o).starts_with("0.91596559417721901505460351493238411077414937428"), "{}", stdout(&o));
}

#[test]
fn eval_li_of_a_half() {
    // Li_2(1/2) = pi^2/12 - log(2)^2/2.
    let o = polylog(&["eval-li", "--m", "2", "--z", "0.5", "--precision", "40"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("0.58224052646501250590265632015968"), "{}", stdout(&o));
}

#[test]
fn verify_goncharov22_both_modes() {
    let args = ["verify", "--equation", "goncharov22", "--mode", "both", "--seed", "7", "--points", "5", "--json"];
    let a = polylog(&args);
    assert_eq!(a.status.code(), Some(0));
    let report = RunReport::from_json(&json(&a)).unwrap();
    assert!(report.passed);
    assert_eq!(report.seed, 7);
    assert_eq!(report.verdicts.len(), 2);
    assert_eq!(json(&a)["schema"], "polylog-run-report/1");
    // Identical runs agree byte for byte once timings are removed.
    let b = polylog(&args);
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timings");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(strip(json(&a)), strip(json(&b)));
}

#[test]
fn seed_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_polylog"))
        .args(["verify", "--equation", "five-term", "--mode", "symbolic", "--json"])
        .env("POLYLOG_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(json(&o)["seed"], 99);
}

#[test]
fn fourlog_symbolic_uses_log_symbol_algebra() {
    let o = polylog(&["verify", "--equation", "fourlog-n3", "--mode", "symbolic", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdicts"][0]["name"], "log-symbol-algebra");
}

#[test]
fn failing_check_exits_1() {
    let o = polylog(&["check", "--name", "gamma21", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["passed"], false);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(polylog(&["verify", "--equation", "no-such-equation"]).status.code(), Some(2));
    assert_eq!(polylog(&["verify", "--bogus"]).status.code(), Some(2));
    assert_eq!(polylog(&["check", "--name", "no-such-check"]).status.code(), Some(2));
    assert_eq!(polylog(&["eval-cl", "--m", "2", "--z", "abc"]).status.code(), Some(2));
    assert_eq!(polylog(&["report"]).status.code(), Some(2));
    assert_eq!(polylog(&["--jobs", "0", "list"]).status.code(), Some(2));
}

#[test]
fn roots_of_x_squared_minus_two() {
    let o = polylog(&["roots", "--poly", "x^2 - 2", "--precision", "30", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let roots: Vec<String> = json(&o)["roots"].as_array().unwrap().iter().map(|r| r.as_str().unwrap().to_string()).collect();
    assert_eq!(roots.len(), 2);
    assert!(roots.iter().any(|r| r.starts_with("1.41421356237309504880")), "{roots:?}");
    assert!(roots.iter().any(|r| r.starts_with("-1.41421356237309504880")), "{roots:?}");
    let o = polylog(&["roots", "--coeff", "1", "--coeff", "0", "--coeff", "1", "--precision", "30"]);
    let text = stdout(&o);
    assert!(text.contains("1.00000") && text.contains('i'), "{text}");
}

#[test]
fn list_and_show() {
    let o = polylog(&["list", "--json"]);
    let rows = json(&o);
    assert_eq!(rows.as_array().unwrap().len(), polylog_core::catalog::NAMES.len());
    let o = polylog(&["show", "five-term", "--json"]);
    let spec = EquationSpec::from_json(&json(&o)).unwrap();
    assert_eq!(spec.class_count(), 5);
    assert_eq!(spec.to_json(), json(&o));
}

#[test]
fn jobs_flag() {
    let o = polylog(&["--jobs", "1", "verify", "--equation", "five-term", "--mode", "numeric", "--points", "3"]);
    assert_eq!(o.status.code(), Some(0));
}
