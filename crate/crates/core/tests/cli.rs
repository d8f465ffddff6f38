//! The `stacky` binary: documented examples and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn example(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs/examples")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn stacky(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stacky"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write_temp(name: &str, text: &str) -> String {
    let path = std::env::temp_dir().join(format!("stacky-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn bh_of_s3_has_rank_three() {
    let out = stacky(&[
        "motive",
        "bh",
        "--input",
        &example("s3_quotient.json"),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["poincare"], "3");
    assert_eq!(v["productMatrix"].as_array().unwrap().len(), 9);
}

#[test]
fn characteristic_flag_overrides_document() {
    let out = stacky(&[
        "motive",
        "bh",
        "--input",
        &example("s3_quotient.json"),
        "--characteristic",
        "3",
        "--format",
        "json",
    ]);
    let v = json(&out);
    assert_eq!(v["poincare"], "2");
    assert_eq!(v["characteristic"], 3);
    assert!(v.get("productMatrix").is_none());
}

#[test]
fn orbifold_curve_from_flags_and_document_agree() {
    let flags = stacky(&[
        "motive", "curve", "--genus", "0", "--orders", "3,3", "--format", "json",
    ]);
    let doc = stacky(&[
        "motive",
        "curve",
        "--input",
        &example("curve_0_3_3.json"),
        "--format",
        "json",
    ]);
    assert_eq!(json(&flags)["poincare"], "5 + L");
    assert_eq!(flags.stdout, doc.stdout);
}

#[test]
fn gerbe_example_splits_off_a_cover() {
    let out = stacky(&[
        "motive",
        "gerbe",
        "--input",
        &example("z3_gerbe.json"),
        "--format",
        "json",
    ]);
    assert_eq!(json(&out)["poincare"], "1 + [H1_1] + [Cover(E,2)] + L");
}

#[test]
fn verify_all_passes_on_s3() {
    let out = stacky(&[
        "verify",
        "--check",
        "all",
        "--input",
        &example("s3_quotient.json"),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let reports = json(&out)["reports"].as_array().unwrap().clone();
    assert_eq!(reports.len(), 5);
    assert!(reports.iter().all(|r| r["pass"] == true));
}

#[test]
fn failing_check_exits_with_one() {
    let doc = r#"{"group": {"degree": 2, "generators": [[1, 0]]}, "cover": {"images": [0, 0, 1], "targetSize": 2}}"#;
    let path = write_temp("uneven.json", doc);
    let out = stacky(&["verify", "--check", "splitting", "--input", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL splitting"));
}

#[test]
fn input_errors_exit_with_two_and_name_the_field() {
    let bad_perm = write_temp(
        "bad-perm.json",
        r#"{"group": {"degree": 3, "generators": [[1, 1, 0]]}}"#,
    );
    let out = stacky(&["motive", "bh", "--input", &bad_perm]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("group.generators[0]"));

    let unknown = write_temp("unknown.json", r#"{"grup": {}}"#);
    assert_eq!(
        stacky(&["group", "--input", &unknown]).status.code(),
        Some(2)
    );

    let short = write_temp(
        "short.json",
        r#"{"group": {"degree": 3, "generators": [[1, 2, 0]]}, "model": {"hset": {"size": 2, "generatorImages": [[1, 0, 2]]}}}"#,
    );
    let out = stacky(&["motive", "quotient", "--input", &short]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("model.hset.generatorImages[0]"));

    assert_eq!(
        stacky(&["motive", "curve", "--genus", "0", "--orders", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        stacky(&["motive", "bh", "--input", "/nonexistent/doc.json"])
            .status
            .code(),
        Some(2)
    );
}
