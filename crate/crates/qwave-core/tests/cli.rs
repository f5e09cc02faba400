//! End-to-end checks of the command-line interface: exit codes, error
//! envelopes, piping between subcommands, and output determinism.

use std::io::Write as _;
use std::process::{Command, Output, Stdio};

fn qwave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwave"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn qwave_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qwave"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary exits")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_json(out: &Output) -> serde_json::Value {
    let text = String::from_utf8(out.stderr.clone()).unwrap();
    serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("bad envelope {text:?}: {e}"))
}

fn error_kind(out: &Output) -> String {
    stderr_json(out)["error"]["kind"].as_str().unwrap().to_string()
}

#[test]
fn gen_verifies_within_float_tolerance() {
    let bank = qwave(&["gen", "6"]);
    assert!(bank.status.success());
    let verify = qwave_stdin(&["verify", "-"], &stdout_str(&bank));
    assert!(verify.status.success(), "{}", stdout_str(&verify));
}

#[test]
fn gen_rejects_rational_field() {
    let out = qwave(&["gen", "2", "--field", "rational"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_kind(&out), "mode_mismatch");
}

#[test]
fn gen_rejects_unsupported_genus() {
    let out = qwave(&["gen", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_kind(&out), "unsupported_genus");
}

#[test]
fn rationalize_reproduces_reference_taps_and_verifies_exactly() {
    let bank = stdout_str(&qwave(&["gen", "2"]));
    let out = qwave_stdin(&["rationalize", "-", "--strategy", "dyadic:6"], &bank);
    assert!(out.status.success());
    let dto: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let h0: Vec<&str> = dto["bank"]["h0"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(h0, ["3008/4385", "5184/4385", "1377/4385", "-799/4385"]);
    assert_eq!(dto["max_tap_denominator"], "4385");
    assert_eq!(dto["moment_report"][1], "33/4385");

    let bank_json = serde_json::to_string(&dto["bank"]).unwrap();
    let verify = qwave_stdin(&["verify", "-"], &bank_json);
    assert!(verify.status.success());
}

#[test]
fn rationalize_output_is_byte_identical_across_runs() {
    let bank = stdout_str(&qwave(&["gen", "3"]));
    let a = qwave_stdin(&["rationalize", "-", "--strategy", "best:0.001"], &bank);
    let b = qwave_stdin(&["rationalize", "-", "--strategy", "best:0.001"], &bank);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_perturbed_bank_exits_two_with_residual_report() {
    // One tap moved by 1e-6, reflection kept consistent so the file
    // ingests; the quadratic condition is what fails.
    let bank = r#"{"genus":2,"field":"rational",
        "h0":["12/17","20/17","5/17","-2999983/17000000"],
        "h1":["2999983/17000000","5/17","-20/17","12/17"]}"#;
    let out = qwave_stdin(&["verify", "-", "--output", "plain"], bank);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "not_paraunitary");
    assert!(stdout_str(&out).contains("pass:                false"));
}

#[test]
fn verify_float_near_miss_respects_tolerance_flag() {
    let bank = stdout_str(&qwave(&["gen", "2"]));
    let strict = qwave_stdin(&["verify", "-", "--tolerance", "1e-18"], &bank);
    assert_eq!(strict.status.code(), Some(2));
    let loose = qwave_stdin(&["verify", "-", "--tolerance", "1e-10"], &bank);
    assert!(loose.status.success());
}

#[test]
fn malformed_json_exits_one() {
    let out = qwave_stdin(&["verify", "-"], "{nope");
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_kind(&out), "json_error");
}

#[test]
fn mismatched_reflection_is_rejected_on_ingest() {
    let bank = r#"{"genus":1,"field":"rational","h0":["1","1"],"h1":["1","1"]}"#;
    let out = qwave_stdin(&["verify", "-"], bank);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_kind(&out), "structure_mismatch");
}

#[test]
fn unknown_arguments_exit_one() {
    let out = qwave(&["gen", "2", "--banana"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_kind(&out), "malformed_input");
}

#[test]
fn screen_streams_sorted_json_lines_deterministically() {
    let bank = stdout_str(&qwave(&["gen", "2"]));
    let args = ["screen", "-", "--strategy", "screen:0.02,100"];
    let a = qwave_stdin(&args, &bank);
    let b = qwave_stdin(&args, &bank);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<serde_json::Value> = stdout_str(&a)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["max_tap_denominator"], "17");
    assert_eq!(lines[1]["max_tap_denominator"], "53");
    assert_eq!(lines[2]["max_tap_denominator"], "65");
}

#[test]
fn screen_budget_exceeded_exits_three() {
    let bank = stdout_str(&qwave(&["gen", "2"]));
    let out = qwave_stdin(
        &["screen", "-", "--epsilon", "0.4", "--dmax", "5000", "--budget", "10"],
        &bank,
    );
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_kind(&out), "budget_exceeded");
}

#[test]
fn screen_requires_bounds() {
    let bank = stdout_str(&qwave(&["gen", "2"]));
    let out = qwave_stdin(&["screen", "-"], &bank);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_kind(&out), "invalid_parameter");
}

#[test]
fn pr_test_rational_bank_is_exact_and_records_seed() {
    // h1[0] written unreduced; ingestion compares values, not spellings.
    let bank = r#"{"genus":2,"field":"rational",
        "h0":["12/17","20/17","5/17","-3/17"],
        "h1":["6/34","5/17","-20/17","12/17"]}"#;
    let out = qwave_stdin(&["pr-test", "-", "--seed", "123", "--trials", "5"], bank);
    assert!(out.status.success());
    let dto: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(dto["seed"], 123);
    assert_eq!(dto["pass"], true);
    assert_eq!(dto["max_abs_error"], 0.0);
    assert_eq!(dto["exact"], true);
}

#[test]
fn pr_test_float_bank_passes_within_tolerance() {
    let bank = stdout_str(&qwave(&["gen", "4"]));
    let out = qwave_stdin(&["pr-test", "-", "--tolerance", "1e-9"], &bank);
    assert!(out.status.success(), "{}", stdout_str(&out));
}

#[test]
fn phi_then_lift_returns_the_same_rational_bank() {
    let bank = r#"{"genus":3,"field":"rational",
        "h0":["2888/5249","5944/5249","3104/5249","-1056/5249","-743/5249","361/5249"],
        "h1":["-361/5249","-743/5249","1056/5249","3104/5249","-5944/5249","2888/5249"]}"#;
    let phi = qwave_stdin(&["phi", "-"], bank);
    assert!(phi.status.success(), "{}", String::from_utf8_lossy(&phi.stderr));
    let dto: serde_json::Value = serde_json::from_str(&stdout_str(&phi)).unwrap();
    assert_eq!(dto["n"], 2);
    assert_eq!(dto["gammas"][0], "-1/2");
    assert_eq!(dto["gammas"][1], "1/8");

    let lifted = qwave_stdin(&["lift", "-"], &stdout_str(&phi));
    assert!(lifted.status.success());
    let out: serde_json::Value = serde_json::from_str(&stdout_str(&lifted)).unwrap();
    assert_eq!(out["bank"]["h0"][0], "2888/5249");
    assert_eq!(out["bank"]["h1"][5], "2888/5249");
}

#[test]
fn lift_pads_to_requested_genus() {
    let phi = r#"{"n":1,"gammas":["-1/4"]}"#;
    let out = qwave_stdin(&["lift", "-", "--genus", "3"], phi);
    assert!(out.status.success());
    let dto: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(dto["bank"]["genus"], 3);
    assert_eq!(dto["bank"]["h0"].as_array().unwrap().len(), 6);
    let verify = qwave_stdin(
        &["verify", "-"],
        &serde_json::to_string(&dto["bank"]).unwrap(),
    );
    assert!(verify.status.success());
}

#[test]
fn field_guard_applies_to_file_inputs() {
    let bank = stdout_str(&qwave(&["gen", "2"]));
    let out = qwave_stdin(&["verify", "-", "--field", "rational"], &bank);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_kind(&out), "mode_mismatch");
    let ok = qwave_stdin(&["verify", "-", "--field", "float64"], &bank);
    assert!(ok.status.success());
}

#[test]
fn moments_respects_pmax() {
    let bank = r#"{"genus":2,"field":"rational",
        "h0":["12/17","20/17","5/17","-3/17"],
        "h1":["3/17","5/17","-20/17","12/17"]}"#;
    let out = qwave_stdin(&["moments", "-", "--pmax", "3", "--output", "csv"], bank);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "row,value,decimal");
    assert_eq!(lines[1], "M0,0,0.0");
    assert_eq!(lines[2], "M1,1/17,0.0588235294117647");
    assert_eq!(lines.len(), 5);
}

#[test]
fn tables_regenerates_reference_data_deterministically() {
    let a = qwave(&["tables"]);
    let b = qwave(&["tables"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout_str(&a);
    assert!(text.contains("\"12/17\""));
    assert!(text.contains("\"-137/512\""));
    assert!(text.contains("\"2677170944/5703228401\""));
    assert!(text.contains("\"-283/512\""));
    let csv = stdout_str(&qwave(&["tables", "--output", "csv"]));
    assert!(csv.contains("2,M1,0.0,1/17"));
}

#[test]
fn help_exits_zero() {
    let out = qwave(&["--help"]);
    assert!(out.status.success());
    assert!(stdout_str(&out).contains("rationalize"));
}
