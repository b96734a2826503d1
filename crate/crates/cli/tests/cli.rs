use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn leavitt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leavitt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("one JSON document")
}

#[test]
fn normalize_projection_complement() {
    let o = leavitt(&["normalize", "--graph", &data("toeplitz.g"), "b b*"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "v - a a*\n");
}

#[test]
fn expression_examples() {
    let t = data("toeplitz.g");
    for (input, expected) in [("a* a", "v"), ("2 a b* + v", "v"), ("1", "v + u")] {
        let o = leavitt(&["normalize", "--graph", &t, input]);
        assert_eq!(stdout(&o), format!("{expected}\n"), "{input}");
    }
    let o = leavitt(&["multiply", "--graph", &t, "a*", "a a"]);
    assert_eq!(stdout(&o), "a\n");
    let o = leavitt(&["star", "--graph", &t, "-1/2 a a a*"]);
    assert_eq!(stdout(&o), "-1/2 a a* a*\n");
}

#[test]
fn witt_suite_passes() {
    let o = leavitt(&[
        "verify",
        "witt",
        "--graph",
        &data("omega1.g"),
        "--max-index",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("PASS: 81 checks, 0 failed\n"));
}

#[test]
fn witness_on_a2() {
    let o = leavitt(&[
        "inner-witness",
        "--graph",
        &data("a2.g"),
        "--mixed",
        "e1",
        "e1",
        "--max-len",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "v1\n");
}

#[test]
fn no_witness_is_a_failed_check() {
    let o = leavitt(&[
        "inner-witness",
        "--graph",
        &data("toeplitz.g"),
        "--cycle",
        "a",
        "--max-len",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "no witness of length ≤ 4\n");
}

#[test]
fn derivations_from_flags_and_files_agree() {
    let t = data("toeplitz.g");
    let file = data("d_a.json");
    let by_flag = leavitt(&["deriv", "apply", "--graph", &t, "--cycle", "a", "a a*"]);
    let by_file = leavitt(&["deriv", "apply", "--graph", &t, "--file", &file, "a a*"]);
    assert_eq!(stdout(&by_flag), "-a + a a a*\n");
    assert_eq!(stdout(&by_flag), stdout(&by_file));
    let starred = leavitt(&["deriv", "apply", "--graph", &t, "--cycle-star", "a", "a"]);
    assert_eq!(stdout(&starred), "v\n");
    let inner = leavitt(&["deriv", "apply", "--graph", &t, "--inner", "-a", "b"]);
    assert_eq!(stdout(&inner), "-a b\n");
}

#[test]
fn bracket_of_projection_and_cycle() {
    let o = leavitt(&[
        "bracket",
        "--graph",
        &data("toeplitz.g"),
        "mixed:a,a",
        "cycle:a a",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let twice = leavitt(&[
        "deriv",
        "apply",
        "--graph",
        &data("toeplitz.g"),
        "--cycle",
        "a a",
        "a",
    ]);
    assert_eq!(stdout(&twice), "a a a\n");
    assert!(stdout(&o).contains("a ↦ 2 a a a\n"), "{}", stdout(&o));
}

#[test]
fn check_derivation_exit_codes() {
    let t = data("toeplitz.g");
    let good = leavitt(&[
        "check-derivation",
        "--graph",
        &t,
        "--file",
        &data("d_a.json"),
    ]);
    assert_eq!(good.status.code(), Some(0));
    let bad = leavitt(&[
        "check-derivation",
        "--graph",
        &t,
        "--file",
        &data("not_a_derivation.json"),
        "--format",
        "json",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    let doc = json(&bad);
    assert_eq!(doc["passed"], Value::Bool(false));
    let ids: Vec<&str> = doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    let mut unique = ids.clone();
    unique.dedup();
    assert_eq!(ids, unique);
}

#[test]
fn compositions_close() {
    for g in ["toeplitz.g", "omega1.g", "a2.g", "two_cycle.g"] {
        let o = leavitt(&["compositions", "--graph", &data(g)]);
        assert_eq!(o.status.code(), Some(0), "{g}");
    }
}

#[test]
fn basis_of_a2() {
    let o = leavitt(&[
        "basis",
        "--graph",
        &data("a2.g"),
        "--max-len",
        "4",
        "--format",
        "json",
    ]);
    let doc = json(&o);
    assert_eq!(doc["count"], 4);
    assert_eq!(doc["words"][3], "e1*");
}

#[test]
fn input_errors_exit_two() {
    let t = data("toeplitz.g");
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (
            vec!["normalize", "--graph", &t, "a + c"],
            "unknown name `c`",
        ),
        (
            vec!["normalize", "--graph", &t, "1/0 a"],
            "division by zero",
        ),
        (vec!["normalize", "a"], "needs --graph"),
        (
            vec!["deriv", "apply", "--graph", &t, "--cycle", "b", "a"],
            "not a directed cycle",
        ),
        (
            vec!["verify", "witt", "--graph", &t],
            "single vertex with one loop",
        ),
        (
            vec!["normalize", "--graph", "/nonexistent.g", "a"],
            "/nonexistent.g",
        ),
        (vec!["verify", "r2", "--graph", &t], "built-in graphs"),
    ];
    for (args, needle) in cases {
        let o = leavitt(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).contains(needle), "{args:?}: {}", stderr(&o));
    }
    let o = leavitt(&["normalize", "--graph", &data("bad_special.g"), "a"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 5"), "{}", stderr(&o));
    assert!(stderr(&o).contains("its source is `v`"), "{}", stderr(&o));
    let usage = leavitt(&["verify", "nonsense"]);
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn json_reports_are_schema_stable_and_reproducible() {
    let args = [
        "verify",
        "functional-eqs",
        "--count",
        "5",
        "--format",
        "json",
        "--seed",
        "7",
    ];
    let first = leavitt(&args);
    let second = leavitt(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let doc = json(&first);
    assert_eq!(doc["seed"], 7);
    for check in doc["checks"].as_array().unwrap() {
        for key in ["suite", "id", "status", "detail"] {
            assert!(check[key].is_string(), "{check}");
        }
    }
    let error = leavitt(&[
        "normalize",
        "--graph",
        &data("toeplitz.g"),
        "a +",
        "--format",
        "json",
    ]);
    assert_eq!(error.status.code(), Some(2));
    assert!(json(&error)["error"].as_str().unwrap().contains("column 4"));
}

#[test]
fn suites_on_user_graphs() {
    let o = leavitt(&[
        "verify",
        "inner-formulas",
        "--graph",
        &data("two_cycle.g"),
        "--count",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS inner-formulas/two_cycle:"));
    for (suite, graph) in [
        ("matrix", "a2.g"),
        ("an-inner", "a2.g"),
        ("laurent", "omega1.g"),
        ("jacobson", "toeplitz.g"),
    ] {
        let o = leavitt(&["verify", suite, "--graph", &data(graph)]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
    }
    let o = leavitt(&["verify", "toeplitz", "--max-index", "2", "--max-len", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = leavitt(&["verify", "r2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
