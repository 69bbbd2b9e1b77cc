//! End-to-end tests for the `vlk` binary: exact text output, JSON record
//! shapes, exit codes, and run-to-run determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::OnceLock;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_vlk"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin()
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

#[test]
fn conway_text_output_is_exact_for_vt() {
    let out = run(&["conway", "fixtures/vt.vld"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let expected = "\
# fixtures/vt.vld
writhe: 2
components: 1
conway: -1 + -1*y + -1*x*y^-1 + 1*x*y + 1*x^2*y^-1 + 1*x^2
conway_normalized: -1 + -1*y + -1*x*y^-1 + 1*x*y + 1*x^2*y^-1 + 1*x^2
conway_tform: -1*t^-2 + -1*t^-2*y + -1*y^-1 + 1*y + 1*t^2*y^-1 + 1*t^2
eval_x1: 0
vanishes_y_eq_minus_x: true
vanishes_y_eq_minus_1: true
";
    assert_eq!(stdout_of(&out), expected);
}

#[test]
fn conway_reports_zero_for_classical_knots() {
    for name in ["tref.vld", "hopf.vld", "fig8.vld", "kink.vld", "r2pair.vld"] {
        let out = run(&["conway", &format!("fixtures/{name}")]);
        assert!(out.status.success(), "{name} failed: {}", stderr_of(&out));
        let text = stdout_of(&out);
        assert!(
            text.contains("\nconway: 0\n"),
            "{name} should have vanishing invariant, got:\n{text}"
        );
    }
}

#[test]
fn conway_json_record_has_expected_fields() {
    let out = run(&["conway", "--format", "json", "fixtures/vh.vld"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1, "one NDJSON record per input file");
    let record: serde_json::Value = serde_json::from_str(lines[0]).expect("valid JSON");
    assert_eq!(record["file"], "fixtures/vh.vld");
    assert_eq!(record["writhe"], 1);
    assert_eq!(record["components"], 2);
    let terms = record["conway"].as_array().expect("term array");
    assert_eq!(terms.len(), 4);
    // Terms are [x_exp, y_exp, coeff-as-string], sorted.
    assert_eq!(terms[0][0], 0);
    assert_eq!(terms[0][1], 0);
    assert_eq!(terms[0][2], "1");
    assert_eq!(record["vanishes_y_eq_minus_x"], true);
    assert_eq!(record["vanishes_y_eq_minus_1"], true);
    assert_eq!(record["eval_x1"].as_array().unwrap().len(), 3);
}

#[test]
fn conway_accepts_multiple_files_in_order() {
    let out = run(&[
        "conway",
        "--format",
        "json",
        "fixtures/vt.vld",
        "fixtures/vh.vld",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let files: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["file"].clone())
        .collect();
    assert_eq!(files, vec!["fixtures/vt.vld", "fixtures/vh.vld"]);
}

#[test]
fn alexander_text_output_is_exact_for_hopf() {
    let out = run(&["alexander", "fixtures/hopf.vld"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let expected = "\
# fixtures/hopf.vld
generators: e1 f1
relator: f1 e1 f1^-1 e1^-1
relator: e1 f1 e1^-1 f1^-1
matrix:
  [-1 + 1*t, 1 + -1*t]
  [1 + -1*t, -1 + 1*t]
ideal: -1 + 1*t; 1 + -1*t; 1 + -1*t; -1 + 1*t
alexander: -1 + 1*t
alexander_mod_2: 1 + 1*t
alexander_mod_3: 2 + 1*t
alexander_mod_5: 4 + 1*t
";
    assert_eq!(stdout_of(&out), expected);
}

#[test]
fn alexander_json_record_round_trips() {
    let out = run(&[
        "alexander",
        "--format",
        "json",
        "--primes",
        "2,7",
        "fixtures/tref.vld",
    ]);
    assert!(out.status.success());
    let record: serde_json::Value =
        serde_json::from_str(stdout_of(&out).lines().next().unwrap()).unwrap();
    assert_eq!(record["file"], "fixtures/tref.vld");
    assert_eq!(record["generators"].as_array().unwrap().len(), 3);
    assert_eq!(record["relators"].as_array().unwrap().len(), 3);
    assert_eq!(record["alexander"], "1 + -1*t + 1*t^2");
    assert_eq!(record["alex_mod_p"]["2"], "1 + 1*t + 1*t^2");
    assert_eq!(record["alex_mod_p"]["7"], "1 + 6*t + 1*t^2");
    assert!(
        record["alex_mod_p"].get("3").is_none(),
        "only requested primes"
    );
}

#[test]
fn alexander_rejects_composite_modulus() {
    let out = run(&["alexander", "--primes", "4", "fixtures/hopf.vld"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("error:"));
}

#[test]
fn gauss_code_input_works_via_extension_and_subcommand() {
    // A .gauss file is accepted anywhere a diagram path is.
    let g = fixture("tmp_tref.gauss");
    std::fs::write(&g, "O1+U2+O3+U1+O2+U3+\n").unwrap();
    let out = run(&["conway", g.to_str().unwrap()]);
    std::fs::remove_file(&g).unwrap();
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    assert!(stdout_of(&out).contains("\nconway: 0\n"));

    // gauss2vld accepts a literal code and prints the crossing lines.
    let out = run(&["gauss2vld", "O1+U2+O3+U1+O2+U3+"]);
    assert!(out.status.success());
    let expected = "\
X + g6 g1 g3 g4
X + g4 g5 g1 g2
X + g2 g3 g5 g6
";
    assert_eq!(stdout_of(&out), expected);
}

#[test]
fn gauss2vld_output_reparses_to_the_same_invariant() {
    let out = run(&["gauss2vld", "O1+U2-O3-U1+O4+U3-O2-U4+"]);
    assert!(out.status.success());
    let vld = stdout_of(&out);
    let code = vlk::diagram::parse_vld(&vld).expect("emitted VLD parses");
    assert_eq!(code.n_crossings(), 4);
    let fig8 = vlk::fixtures::fig8();
    assert_eq!(
        vlk::alexander::alexander_polynomial(&code),
        vlk::alexander::alexander_polynomial(&fig8)
    );
}

#[test]
fn verify_suites_pass_with_small_iteration_counts() {
    for (suite, iters) in [
        ("skein", "8"),
        ("moves", "4"),
        ("evals", "8"),
        ("union", "6"),
        ("alex-skein", "1"),
    ] {
        let out = run(&["verify", suite, "--seed", "7", "--iterations", iters]);
        let text = stdout_of(&out);
        assert!(
            out.status.success(),
            "suite {suite} failed (stdout: {text}, stderr: {})",
            stderr_of(&out)
        );
        assert!(text.contains(": PASS"), "suite {suite} output: {text}");
    }
}

#[test]
fn verify_runs_are_deterministic_for_a_fixed_seed() {
    let a = run(&["verify", "skein", "--seed", "11", "--iterations", "10"]);
    let b = run(&["verify", "skein", "--seed", "11", "--iterations", "10"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(
        a.stdout, b.stdout,
        "same seed must give byte-identical output"
    );
    let c = run(&["verify", "skein", "--seed", "12", "--iterations", "10"]);
    assert!(c.status.success());
    assert_ne!(
        a.stdout, c.stdout,
        "different seed should visit a different corpus"
    );
}

#[test]
fn batch_processes_good_and_bad_entries() {
    let dir = std::env::temp_dir().join(format!("vlk-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let manifest = dir.join("manifest.txt");
    std::fs::write(
        &manifest,
        format!(
            "# two good entries and one missing file\n{}\n\n{}\nno-such-file.vld\n",
            fixture("vh.vld").display(),
            fixture("kink.vld").display()
        ),
    )
    .unwrap();
    let out = run(&["batch", manifest.to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    let records: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 3, "comments and blanks are skipped");
    assert_eq!(records[0]["ok"], true);
    assert!(records[0]["conway"].is_object());
    assert!(records[0]["alexander"].is_object());
    assert_eq!(records[1]["ok"], true);
    assert_eq!(records[2]["ok"], false);
    assert!(records[2]["error"]
        .as_str()
        .unwrap()
        .contains("no-such-file.vld"));
    assert!(records[2].get("conway").is_none());

    // A non-empty manifest where nothing works is an error...
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "missing-a.vld\nmissing-b.vld\n").unwrap();
    let out = run(&["batch", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    // ...but an empty manifest is quietly fine.
    let empty = dir.join("empty.txt");
    std::fs::write(&empty, "# nothing here\n").unwrap();
    let out = run(&["batch", empty.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "");

    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn missing_input_file_exits_2_and_names_the_file() {
    let out = run(&["conway", "definitely-not-here.vld"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("definitely-not-here.vld"));

    let out = run(&["alexander", "also-missing.vld"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("also-missing.vld"));
}

/// Validator for the record schema shipped in `docs/`.
fn record_schema() -> &'static jsonschema::Validator {
    static V: OnceLock<jsonschema::Validator> = OnceLock::new();
    V.get_or_init(|| {
        let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/vlk-records.schema.json");
        let text = std::fs::read_to_string(path).expect("schema file is shipped");
        let schema: serde_json::Value = serde_json::from_str(&text).expect("schema is JSON");
        jsonschema::validator_for(&schema).expect("schema compiles")
    })
}

fn assert_valid_record(line: &str, context: &str) {
    let value: serde_json::Value = serde_json::from_str(line).expect("record is JSON");
    let errors: Vec<String> = record_schema()
        .iter_errors(&value)
        .map(|e| e.to_string())
        .collect();
    assert!(
        errors.is_empty(),
        "{context}: schema violations {errors:?} in {line}"
    );
}

#[test]
fn json_outputs_validate_against_the_shipped_schema() {
    let fixture_args: Vec<String> = ["vt", "vh", "kink", "tref", "hopf", "r2pair", "fig8"]
        .iter()
        .map(|n| format!("fixtures/{n}.vld"))
        .collect();
    let mut args = vec!["conway".to_string(), "--format".into(), "json".into()];
    args.extend(fixture_args.iter().cloned());
    let out = run(&args.iter().map(String::as_str).collect::<Vec<_>>());
    assert!(out.status.success());
    for line in stdout_of(&out).lines() {
        assert_valid_record(line, "conway record");
    }

    let mut args = vec!["alexander".to_string(), "--format".into(), "json".into()];
    args.extend(fixture_args.iter().cloned());
    let out = run(&args.iter().map(String::as_str).collect::<Vec<_>>());
    assert!(out.status.success());
    for line in stdout_of(&out).lines() {
        assert_valid_record(line, "alexander record");
    }

    let dir = std::env::temp_dir().join(format!("vlk-cli-schema-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let manifest = dir.join("manifest.txt");
    std::fs::write(
        &manifest,
        format!("{}\nmissing.vld\n", fixture("vt.vld").display()),
    )
    .unwrap();
    let out = run(&["batch", manifest.to_str().unwrap()]);
    assert!(out.status.success());
    for line in stdout_of(&out).lines() {
        assert_valid_record(line, "batch record");
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn record_schema_rejects_malformed_records() {
    let out = run(&["conway", "--format", "json", "fixtures/vt.vld"]);
    let line = stdout_of(&out);
    let mut v: serde_json::Value = serde_json::from_str(line.trim()).unwrap();

    // Dropping a required field must be caught.
    v.as_object_mut().unwrap().remove("writhe");
    assert!(!record_schema().is_valid(&v));

    // A batch success record without its payload must be caught.
    let bad = serde_json::json!({"file": "x.vld", "ok": true});
    assert!(!record_schema().is_valid(&bad));
    // ...and so must a failure record that still carries a payload flag.
    let bad = serde_json::json!({"file": "x.vld", "ok": false});
    assert!(!record_schema().is_valid(&bad));

    // Coefficients are decimal strings, not numbers.
    let out = run(&["conway", "--format", "json", "fixtures/vh.vld"]);
    let mut v: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    v["conway"][0][2] = serde_json::json!(1);
    assert!(!record_schema().is_valid(&v));
}

#[test]
fn malformed_diagram_file_exits_2_with_context() {
    let dir = std::env::temp_dir().join(format!("vlk-cli-parse-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("broken.vld");
    std::fs::write(&bad, "X + a b c\n").unwrap();
    let out = run(&["conway", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("broken.vld"));
    std::fs::remove_dir_all(&dir).unwrap();
}
