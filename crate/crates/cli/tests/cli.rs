//! End-to-end tests of the `isoquad` binary: exit codes, JSON stability,
//! and agreement between the table and JSON views.

use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isoquad"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("stdout is one JSON document")
}

/// Value of the first info row with the given name.
fn info_value(doc: &serde_json::Value, name: &str) -> String {
    doc["info"]
        .as_array()
        .unwrap()
        .iter()
        .find(|row| row["name"] == name)
        .unwrap_or_else(|| panic!("no info row named {name:?}"))["value"]
        .as_str()
        .expect("info values are strings")
        .to_string()
}

// ===== worked examples =====

#[test]
fn ranks_range_passes_with_expected_values() {
    let out = run(&["ranks", "--g", "2..4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for row in [
        "g=2 flip chain        8",
        "g=3 flip chain        48",
        "g=4 flip chain        256",
    ] {
        assert!(text.contains(row), "missing row {row:?} in:\n{text}");
    }
    assert!(text.ends_with("status: pass\n"));

    let single = run(&["ranks", "--g", "2..2", "--json"]);
    assert_eq!(code(&single), 0);
    let doc = json(&single);
    assert_eq!(doc["status"], "pass");
    assert_eq!(doc["checks"].as_array().unwrap().len(), 5);
    assert_eq!(doc["checks"][0]["actual"], "8");
}

#[test]
fn identity_small_range_passes() {
    let out = run(&["identity", "--max-g", "3", "--json"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    let checks = doc["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 6);
    assert!(checks.iter().all(|c| c["pass"] == true));
    assert_eq!(checks[2]["actual"], "48");
    assert_eq!(checks[3]["actual"], "1/2");
}

#[test]
fn sod_reports_count_and_rank() {
    let out = run(&["sod", "--g", "2", "--k", "1", "--json"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(info_value(&doc, "component count"), "6");
    assert_eq!(info_value(&doc, "stage rank"), "7");

    let listed = run(&["sod", "--g", "3", "--k", "0", "--json"]);
    let doc = json(&listed);
    assert_eq!(info_value(&doc, "component count"), "1");
    assert_eq!(info_value(&doc, "stage rank"), "1");
}

#[test]
fn sod_list_is_deterministic_and_ordered() {
    let a = run(&["sod", "--g", "2", "--k", "1", "--list", "--json"]);
    let b = run(&["sod", "--g", "2", "--k", "1", "--list", "--json"]);
    assert_eq!(out_bytes(&a), out_bytes(&b));
    let doc = json(&a);
    assert_eq!(info_value(&doc, "component 1"), "I={} dim=1 rank=2");
    assert_eq!(info_value(&doc, "component 2"), "I={1} dim=0 rank=1");
    assert_eq!(info_value(&doc, "component 6"), "I={5} dim=0 rank=1");
}

#[test]
fn flips_trace_matches_worked_example() {
    let out = run(&["flips", "--g", "3", "--trace", "--json"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    let step0 = info_value(&doc, "step 0");
    let step1 = info_value(&doc, "step 1");
    assert!(
        step0.starts_with("n=7 ") && step0.contains("delta=21"),
        "{step0}"
    );
    assert!(
        step1.starts_with("n=22 ") && step1.contains("delta=22"),
        "{step1}"
    );
    assert_eq!(doc["checks"][0]["actual"], "48");
}

#[test]
fn flips_poincare_prints_stage_polynomials() {
    let out = run(&["flips", "--g", "2", "--poincare"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("stage 1 polynomial: 1 + 6q + q^2"));
    assert!(text.contains("status: pass"));
}

#[test]
fn count_with_naive_prints_the_count_twice() {
    let out = run(&[
        "count",
        "--p",
        "11",
        "--g",
        "2",
        "--params",
        "1,2,3,4,5",
        "--naive",
        "--json",
    ]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(info_value(&doc, "count"), "144");
    let check = &doc["checks"][0];
    assert_eq!(check["expected"], "144");
    assert_eq!(check["actual"], "144");
    assert_eq!(check["pass"], true);
}

#[test]
fn count_compare_records_difference_without_failing() {
    let out = run(&[
        "count",
        "--p",
        "7",
        "--g",
        "2",
        "--rule",
        "consecutive",
        "--compare",
        "--json",
    ]);
    assert_eq!(
        code(&out),
        0,
        "a nonzero difference is reported, not judged"
    );
    let doc = json(&out);
    assert_eq!(info_value(&doc, "count"), "64");
    assert_eq!(info_value(&doc, "prediction"), "92");
    assert_eq!(info_value(&doc, "difference"), "-28");
    assert_eq!(doc["status"], "pass");
}

// ===== exit codes =====

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["ranks", "--g", "1..1"][..],
        &["ranks", "--g", "4..2"],
        &["ranks", "--g", "2-4"],
        &["identity", "--max-g", "20"],
        &["sod", "--g", "3", "--k", "3"],
        &["sod", "--g", "1", "--k", "0"],
        &["flips", "--g", "1"],
        &["count", "--g", "2", "--params", "1,2,3,4,5"],
        &["count", "--p", "11", "--g", "2"],
        &[
            "count",
            "--p",
            "11",
            "--g",
            "2",
            "--params",
            "1,2",
            "--rule",
            "consecutive",
        ],
        &["count", "--p", "9", "--g", "2", "--params", "1,2,3,4,5"],
        &["count", "--p", "11", "--g", "2", "--params", "1,2,3"],
        &["snc", "--k", "0", "--params-file", "/dev/null"],
    ] {
        let out = run(args);
        assert_eq!(code(&out), 2, "args {args:?}: {}", stderr(&out));
        assert!(!stderr(&out).is_empty(), "args {args:?} should explain");
    }
    // Errors native to the argument parser use the same code.
    assert_eq!(code(&run(&["ranks"])), 2);
    assert_eq!(code(&run(&["no-such-command"])), 2);
}

#[test]
fn budget_exhaustion_exits_3() {
    let out = run(&["count", "--p", "11", "--g", "3", "--rule", "consecutive"]);
    assert_eq!(code(&out), 3);
    let msg = stderr(&out);
    assert!(
        msg.contains("28768909071"),
        "reports the candidate total: {msg}"
    );

    let capped = run(&[
        "count",
        "--p",
        "13",
        "--g",
        "2",
        "--params",
        "1,2,3,4,5",
        "--budget",
        "10",
    ]);
    assert_eq!(code(&capped), 3);
}

#[test]
fn even_characteristic_exits_4() {
    let out = run(&["count", "--p", "2", "--g", "2", "--params", "0,1,2,3,4"]);
    assert_eq!(code(&out), 4);
}

#[test]
fn duplicate_parameters_exit_5() {
    let inline = run(&["count", "--p", "11", "--g", "2", "--params", "1,2,3,4,4"]);
    assert_eq!(code(&inline), 5);
    assert!(stderr(&inline).contains("positions 4 and 5"));

    // Parameters congruent mod p collide even if written differently.
    let reduced = run(&["count", "--p", "11", "--g", "2", "--params", "1,2,3,4,12"]);
    assert_eq!(code(&reduced), 5);
}

#[test]
fn file_errors_exit_6() {
    let dir = tempfile::tempdir().unwrap();

    let bad_line = dir.path().join("bad.txt");
    fs::write(&bad_line, "1\nbogus\n3\n").unwrap();
    let out = run(&[
        "snc",
        "--k",
        "2",
        "--params-file",
        bad_line.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 6);
    assert!(stderr(&out).contains("line 2"));

    let empty = dir.path().join("empty.txt");
    fs::write(&empty, "# only comments\n\n").unwrap();
    assert_eq!(
        code(&run(&[
            "snc",
            "--k",
            "2",
            "--params-file",
            empty.to_str().unwrap()
        ])),
        6
    );

    let missing = dir.path().join("does-not-exist.txt");
    assert_eq!(
        code(&run(&[
            "snc",
            "--k",
            "2",
            "--params-file",
            missing.to_str().unwrap()
        ])),
        6
    );

    let incomplete = dir.path().join("incomplete.toml");
    fs::write(&incomplete, "p = 11\n").unwrap();
    assert_eq!(
        code(&run(&["count", "--config", incomplete.to_str().unwrap()])),
        6
    );

    let conflicted = dir.path().join("conflicted.toml");
    fs::write(
        &conflicted,
        "p = 11\ng = 2\nparams = [1, 2, 3, 4, 5]\nrule = \"consecutive\"\n",
    )
    .unwrap();
    assert_eq!(
        code(&run(&["count", "--config", conflicted.to_str().unwrap()])),
        6
    );

    let unknown = dir.path().join("unknown.toml");
    fs::write(
        &unknown,
        "p = 11\ng = 2\nrule = \"consecutive\"\nextra = 1\n",
    )
    .unwrap();
    assert_eq!(
        code(&run(&["count", "--config", unknown.to_str().unwrap()])),
        6
    );
}

// ===== snc files =====

#[test]
fn snc_accepts_distinct_rationals_with_comments() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("points.txt");
    fs::write(
        &file,
        "# eleven points\n1\n2\n3\n4\n5\n6\n7\n8\n9\n10\n11 # last\n",
    )
    .unwrap();
    let out = run(&[
        "snc",
        "--k",
        "5",
        "--params-file",
        file.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["status"], "pass");
    assert_eq!(info_value(&doc, "hyperplanes"), "11");
}

#[test]
fn snc_rejects_duplicates_identifying_the_pair() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("dup.txt");
    fs::write(&file, "1\n2\n1/2\n3\n2/4\n").unwrap();
    let out = run(&["snc", "--k", "2", "--params-file", file.to_str().unwrap()]);
    assert_eq!(code(&out), 5);
    let msg = stderr(&out);
    assert!(
        msg.contains("1/2") && msg.contains("positions 3 and 5"),
        "{msg}"
    );
}

// ===== output stability =====

#[test]
fn json_runs_are_byte_identical() {
    for args in [
        &["ranks", "--g", "2..6", "--json"][..],
        &[
            "count",
            "--p",
            "13",
            "--g",
            "2",
            "--rule",
            "consecutive",
            "--verbose",
            "--json",
        ],
        &["experiment", "--g", "2", "--primes", "5,7,11", "--json"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(code(&a), 0, "args {args:?}");
        assert_eq!(out_bytes(&a), out_bytes(&b), "args {args:?}");
    }
}

#[test]
fn json_integers_are_decimal_strings() {
    let out = run(&[
        "count",
        "--p",
        "5",
        "--g",
        "2",
        "--params",
        "0,1,2,3,4",
        "--json",
    ]);
    let doc = json(&out);
    let count = info_value(&doc, "count");
    assert_eq!(count, "56");
    assert!(count.chars().all(|c| c.is_ascii_digit()));
}

#[test]
fn human_numbers_equal_json_fields() {
    let args = [
        "count",
        "--p",
        "7",
        "--g",
        "2",
        "--params",
        "1,2,3,4,5",
        "--naive",
        "--compare",
    ];
    let table = stdout(&run(&args));
    let mut json_args = args.to_vec();
    json_args.push("--json");
    let doc = json(&run(&json_args));

    for name in ["count", "prediction", "difference"] {
        let value = info_value(&doc, name);
        assert!(
            table.contains(&format!("{name}: {value}")),
            "table is missing {name}: {value}\n{table}"
        );
    }
    for check in doc["checks"].as_array().unwrap() {
        let actual = check["actual"].as_str().unwrap();
        assert!(table.contains(actual), "table is missing {actual}");
    }
}

#[test]
fn verbose_witness_listing_matches_the_count() {
    let out = run(&[
        "count",
        "--p",
        "5",
        "--g",
        "2",
        "--params",
        "0,1,2,3,4",
        "--verbose",
        "--json",
    ]);
    let doc = json(&out);
    let witnesses = doc["info"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|row| row["name"].as_str().unwrap().starts_with("witness "))
        .count();
    assert_eq!(witnesses.to_string(), info_value(&doc, "count"));
}

#[test]
fn config_file_and_flags_produce_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("instance.toml");
    fs::write(&file, "p = 13\ng = 2\nparams = [1, 2, 3, 4, 5]\n").unwrap();
    let from_file = run(&["count", "--config", file.to_str().unwrap(), "--json"]);
    let from_flags = run(&[
        "count",
        "--p",
        "13",
        "--g",
        "2",
        "--params",
        "1,2,3,4,5",
        "--json",
    ]);
    assert_eq!(code(&from_file), 0);
    assert_eq!(out_bytes(&from_file), out_bytes(&from_flags));
}

#[test]
fn experiment_records_differences_without_judging() {
    let out = run(&["experiment", "--g", "2", "--primes", "4,7", "--json"]);
    assert_eq!(code(&out), 0, "failed primes do not abort the batch");
    let doc = json(&out);
    assert!(info_value(&doc, "p=4 error").contains("not prime"));
    assert_eq!(info_value(&doc, "p=7 count"), "64");
    assert_eq!(info_value(&doc, "p=7 prediction"), "92");
    assert_eq!(info_value(&doc, "p=7 difference"), "-28");
    assert_eq!(info_value(&doc, "all differences zero"), "false");
    assert_eq!(doc["status"], "pass");
}

fn out_bytes(out: &Output) -> &[u8] {
    &out.stdout
}
