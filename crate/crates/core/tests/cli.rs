//! End-to-end runs of the `conelab` binary against the shipped corpus.
//!
//! Golden outputs live in `tests/golden/`. Set `UPDATE_GOLDEN=1` to rewrite
//! them after an intended change.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn manifest() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn conelab(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_conelab"));
    cmd.current_dir(manifest()).args(args).env_remove("CONELAB_BUDGET");
    cmd
}

fn run(args: &[&str]) -> Output {
    conelab(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn golden_path(name: &str) -> PathBuf {
    manifest().join("tests/golden").join(format!("{name}.json"))
}

/// Runs with `--json --deterministic`, compares stdout with the golden file
/// and checks the exit code.
fn golden(name: &str, args: &[&str], code: i32) -> Value {
    let mut full = args.to_vec();
    full.extend(["--json", "--deterministic"]);
    let out = run(&full);
    assert_eq!(out.status.code(), Some(code), "{name}: {}", String::from_utf8_lossy(&out.stdout));
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &out.stdout).unwrap();
    }
    let want = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&want),
        "{name} differs from its golden file"
    );
    json(&out)
}

#[test]
fn identity_cone_on_the_point_source_is_a_limit() {
    let v = golden(
        "check_limit_identity_cone",
        &[
            "check-limit",
            "--diagram",
            "corpus/diagrams/point_source_of_arrow.catj",
            "--cone",
            "corpus/cones/point_source_of_arrow.catj",
            "--cone-name",
            "cone0",
        ],
        0,
    );
    assert_eq!(v["verdict"], "pass");
    for key in ["oracle", "h", "htilde"] {
        assert_eq!(v["result"][key], true, "{key}");
    }
}

#[test]
fn htilde_of_the_walking_iso_is_whi() {
    let v = golden("whi_htilde_walking_iso", &["whi", "--input", "corpus/double_categories/htilde_of_walking_iso.catj"], 0);
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn non_limit_cone_fails_with_a_witness() {
    let v = golden(
        "check_limit_non_limit",
        &[
            "check-limit",
            "--diagram",
            "corpus/diagrams/empty_in_arrow.catj",
            "--cone",
            "corpus/cones/empty_in_arrow.non_limit.catj",
        ],
        1,
    );
    assert_eq!(v["verdict"], "fail");
    assert!(v["counterexample"].is_object());
    for key in ["oracle", "h", "htilde"] {
        assert_eq!(v["result"][key], false, "{key}");
    }
}

#[test]
fn other_golden_reports() {
    let cases: &[(&str, &[&str], i32)] = &[
        ("whi_from_two_category", &["whi", "--htilde", "--input", "corpus/two_categories/involution_2cell.catj"], 0),
        ("whi_h_of_walking_iso", &["whi", "--input", "corpus/double_categories/h_of_walking_iso.catj"], 1),
        (
            "companion_walking_iso",
            &["companion", "--htilde", "--input", "corpus/two_categories/walking_iso.catj", "--horizontal", "2"],
            0,
        ),
        ("biequiv_identity", &["biequiv", "--input", "corpus/diagrams/arrow_identity.catj"], 0),
        ("biequiv_point_source", &["biequiv", "--input", "corpus/diagrams/point_source_of_arrow.catj"], 1),
        (
            "dbl_biequiv_inclusion",
            &["dbl-biequiv", "--input", "corpus/double_functors/htilde_inclusion_of_walking_iso.catj"],
            0,
        ),
        (
            "trivfib_inclusion",
            &["trivfib", "--input", "corpus/double_functors/htilde_inclusion_of_walking_iso.catj"],
            1,
        ),
        (
            "cone_explicit",
            &["cone", "--construction", "explicit", "--input", "corpus/diagrams/cospan_in_arrow.catj"],
            0,
        ),
        ("slice_general", &["slice", "--input", "corpus/double_categories/h_of_arrow.catj", "--object", "1"], 0),
        (
            "oracle_limit",
            &[
                "oracle-limit",
                "--diagram",
                "corpus/diagrams/point_source_of_arrow.catj",
                "--cone",
                "corpus/cones/point_source_of_arrow.catj",
                "--cone-name",
                "cone0",
            ],
            0,
        ),
        ("nerve_arrow", &["nerve", "--input", "corpus/double_categories/h_of_arrow.catj"], 0),
        ("segal_walking_iso", &["segal", "--input", "corpus/double_categories/htilde_of_walking_iso.catj"], 0),
        (
            "iso_arrow",
            &[
                "iso",
                "--input",
                "corpus/double_categories/h_of_arrow.catj",
                "--other",
                "corpus/double_categories/htilde_of_arrow.catj",
            ],
            0,
        ),
        (
            "iso_walking_iso",
            &[
                "iso",
                "--input",
                "corpus/double_categories/h_of_walking_iso.catj",
                "--other",
                "corpus/double_categories/htilde_of_walking_iso.catj",
            ],
            1,
        ),
        ("validate_broken_interchange", &["validate", "--input", "corpus/broken/broken_interchange.catj"], 1),
        ("validate_syntax_error", &["validate", "--input", "corpus/broken/syntax_error.catj"], 2),
    ];
    for &(name, args, code) in cases {
        golden(name, args, code);
    }
}

#[test]
fn nerve_levels_of_the_arrow() {
    let out = run(&["nerve", "--input", "corpus/double_categories/h_of_arrow.catj", "--json"]);
    let v = json(&out);
    let sizes = v["result"]["sizes"].as_array().expect("sizes");
    for (m, row) in sizes.iter().enumerate() {
        for n in row.as_array().unwrap() {
            assert_eq!(n.as_u64(), Some(m as u64 + 2));
        }
    }
}

#[test]
fn deterministic_output_is_byte_stable() {
    let args = [
        "check-limit",
        "--diagram",
        "corpus/diagrams/cospan_in_arrow.catj",
        "--cone",
        "corpus/cones/cospan_in_arrow.catj",
        "--json",
        "--deterministic",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a).get("timing_ms").is_none());
    // Without the flag, timing is reported.
    let c = run(&args[..args.len() - 1]);
    assert!(json(&c)["timing_ms"].is_number());
}

#[test]
fn budget_comes_from_the_flag_or_the_environment() {
    let args = ["segal", "--input", "corpus/double_categories/h_of_arrow.catj", "--json"];
    let out = conelab(&args).env("CONELAB_BUDGET", "5").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["error"]["class"], "budget_exceeded");
    assert_eq!(v["budget"]["limit"], 5);

    // The flag wins over the environment.
    let mut with_flag = args.to_vec();
    with_flag.extend(["--budget", "1000000"]);
    let out = conelab(&with_flag).env("CONELAB_BUDGET", "5").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["budget"]["limit"], 1_000_000);
}

#[test]
fn adjoint_equivalence_nerve_exhausts_a_small_budget() {
    let out = run(&[
        "nerve",
        "--input",
        "corpus/double_categories/htilde_of_adjoint_equivalence.catj",
        "--bound",
        "1,3",
        "--budget",
        "100000",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["class"], "budget_exceeded");
}

#[test]
fn usage_errors_exit_with_two() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());

    let out = run(&["whi", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["class"], "usage");

    let out = run(&["nerve", "--input", "corpus/double_categories/h_of_arrow.catj", "--bound", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_and_version_succeed() {
    for flag in ["--help", "--version"] {
        let out = run(&[flag]);
        assert_eq!(out.status.code(), Some(0), "{flag}");
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn missing_files_and_names_are_errors() {
    let out = run(&["whi", "--input", "corpus/no_such_file.catj", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["class"], "io");

    let out = run(&["whi", "--input", "corpus/double_categories/h_of_arrow.catj", "--name", "nope", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["class"], "not_found");
}

#[test]
fn lax_mode_accepts_unknown_keys() {
    let strict = run(&["validate", "--input", "corpus/broken/unknown_key.catj"]);
    assert_eq!(strict.status.code(), Some(1));
    let lax = run(&["validate", "--lax", "--input", "corpus/broken/unknown_key.catj"]);
    assert_eq!(lax.status.code(), Some(0));
}

#[test]
fn text_output_names_the_verdict() {
    let out = run(&["whi", "--input", "corpus/double_categories/htilde_of_walking_iso.catj"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "verdict: pass"), "{text}");
}
