//! End-to-end checks of the command-line surface: exit codes, the --check
//! oracle gate, instruction-set restriction, and determinism under a fixed
//! seed.

use std::process::{Command, Output};

use serde_json::Value;

fn intram(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intram"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn eval_prepared_documented_example() {
    let out = intram(&[
        "eval", "--method", "prepared", "--poly", "[3,2,1]", "--domain", "4", "--x", "2",
        "--check", "--tally",
    ]);
    let json = stdout_json(&out);
    assert_eq!(json["value"], "11");
    assert!(json["tally"]["div"].as_u64().unwrap() > 0);
}

#[test]
fn perm_packed_documented_example() {
    let out = intram(&["perm", "--method", "packed", "--matrix", "[[1,2],[3,4]]", "--check"]);
    assert_eq!(stdout_json(&out)["value"], "10");
}

#[test]
fn restricted_ops_exit_code_3() {
    let out = intram(&[
        "eval", "--method", "prepared", "--poly", "[3,2,1]", "--domain", "4", "--x", "2",
        "--ops", "+,-,*",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not in the enabled instruction set"), "{err}");
}

#[test]
fn usage_error_exit_code_2() {
    assert_eq!(intram(&["no-such-command"]).status.code(), Some(2));
    let bad_ops = intram(&[
        "eval", "--method", "horner", "--poly", "[1]", "--x", "0", "--ops", "frobnicate",
    ]);
    assert_eq!(bad_ops.status.code(), Some(2));
    let bad_json = intram(&["eval", "--method", "horner", "--poly", "{oops", "--x", "0"]);
    assert_eq!(bad_json.status.code(), Some(2));
}

#[test]
fn precondition_failure_exit_code_4_names_the_bound() {
    let out = intram(&[
        "eval", "--method", "prepared", "--poly", "[3,2,1]", "--domain", "4", "--x", "9",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("outside the prepared domain"), "{err}");

    let out = intram(&["pow-tower", "--base", "2", "--k", "4", "--witness", "3"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn prime_is_deterministic_under_fixed_seed() {
    let run = || {
        let out = intram(&["prime", "--above", "1000000", "--seed", "42", "--tally"]);
        let json = stdout_json(&out);
        (json["value"].clone(), json["tally"].clone(), json["seed"].clone())
    };
    let first = run();
    let second = run();
    assert_eq!(first, second);
    assert_eq!(first.2, Value::from(42));
}

#[test]
fn hex_input_is_accepted() {
    let out = intram(&["eval", "--method", "horner", "--poly", "[\"0x10\"]", "--x", "0"]);
    assert_eq!(stdout_json(&out)["value"], "16");
}

#[test]
fn seq_values_and_language_modes() {
    let out = intram(&["seq", "--values", "[0,1,4,9]", "--at", "3", "--check"]);
    assert_eq!(stdout_json(&out)["value"], "9");

    let out = intram(&[
        "seq", "--members", "[1,3]", "--universe", "3", "--at", "2", "--check",
    ]);
    assert_eq!(stdout_json(&out)["value"], Value::Bool(false));
}

#[test]
fn checked_fast_methods_run_clean() {
    let cases: &[&[&str]] = &[
        &["eval", "--method", "blocked", "--poly", "[1,0,1,1,0,1]", "--coeff-bound", "2", "--x", "3", "--check"],
        &["eval", "--method", "adaptive", "--poly", "[3,2,1]", "--x", "1000000", "--check"],
        &["eval-multi", "--vars", "2", "--degree", "2", "--poly", r#"[{"exponents":[1,1],"coeff":1}]"#, "--x", "[3,4]", "--check"],
        &["pow-tower", "--base", "3", "--k", "4", "--check"],
        &["matmul", "--method", "packed", "--left", "[[1,2],[3,4]]", "--right", "[[5,6],[7,8]]", "--check"],
        &["matpow", "--matrix", "[[1,1],[0,1]]", "--k", "4", "--check"],
        &["crt", "--congruences", "[[1,2],[2,3],[3,5]]", "--check"],
        &["coprime", "--r", "3", "--count", "4", "--check"],
        &["gcd-floor", "--dims", "2", "--r", "5", "--s", "2", "--check"],
        &["threesum", "--x", "[1,2]", "--y", "[3,4]", "--z", "[9,5]", "--check"],
        &["mills", "--n", "3", "--check"],
        &["rho", "--poly", "[1,1]", "--terms", "3", "--extract", "2", "--check"],
        &["recurrence", "--poly", "[0,1]", "--c", "2", "--check"],
    ];
    for args in cases {
        let out = intram(args);
        assert!(
            out.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn expected_values_on_small_commands() {
    let out = intram(&["matpow", "--matrix", "[[1,1],[0,1]]", "--k", "4"]);
    assert_eq!(
        stdout_json(&out)["value"],
        serde_json::json!([["1", "16"], ["0", "1"]])
    );

    let out = intram(&["crt", "--congruences", "[[1,2],[2,3],[3,5]]"]);
    let json = stdout_json(&out);
    assert_eq!(json["value"]["solution"], "23");
    assert_eq!(json["value"]["modulus"], "30");

    let out = intram(&["coprime", "--r", "3", "--count", "4"]);
    assert_eq!(
        stdout_json(&out)["value"],
        serde_json::json!(["3", "4", "13", "157"])
    );

    let out = intram(&["mills", "--n", "2"]);
    assert_eq!(stdout_json(&out)["value"], "11");

    let out = intram(&["det", "--matrix", "[[2,0],[0,3]]"]);
    assert_eq!(stdout_json(&out)["value"], "6");

    let out = intram(&["threesum", "--x", "[1]", "--y", "[1]", "--z", "[3]"]);
    assert_eq!(stdout_json(&out)["value"], Value::Bool(false));

    let out = intram(&["recurrence", "--poly", "[0,1]", "--c", "2"]);
    assert_eq!(stdout_json(&out)["value"], serde_json::json!(["1", "2"]));
}

#[test]
fn validate_ranges_single_class() {
    let out = intram(&["validate-ranges", "--class", "1"]);
    let json = stdout_json(&out);
    assert_eq!(json["value"][0]["polynomials"], 462);
    assert_eq!(json["value"][0]["mismatches"], 0);
}

#[test]
fn newton_reports_certified_root() {
    let out = intram(&["newton", "--poly", "[-2,0,1]", "--bits", "20", "--lo", "1", "--hi", "2"]);
    let json = stdout_json(&out);
    let root = json["value"].as_str().unwrap();
    assert!(root.contains('/'), "expected a fraction, got {root}");
}

#[test]
fn bench_emits_csv() {
    let out = intram(&["bench", "--samples", "50"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("class,method,count,ns_per_eval"));
    assert_eq!(text.lines().count(), 4);
    for method in ["prepared64", "horner64", "table"] {
        assert!(text.contains(method), "{text}");
    }
}

#[test]
fn version_mentions_cost_model() {
    let out = intram(&["--version"]);
    assert!(out.status.success());
    // Short version: just the crate version.
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("intram"));
}
