//! End-to-end tests of the `pfwin` binary: every subcommand is exercised
//! through a real process spawn, checking output schemas, exit-code classes
//! (0 success, 1 failed check, 2 invalid input, 3 word/path error), and the
//! cache's byte-for-byte transparency.
//!
//! The cache is disabled via `PFWIN_CACHE=off` in all tests except the ones
//! that probe the cache itself, so the suite never touches the user's cache
//! directory.

use serde_json::Value;
use std::process::{Command, Output};

fn pfwin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pfwin"))
        .args(args)
        .env("PFWIN_CACHE", "off")
        .output()
        .expect("spawn pfwin")
}

fn pfwin_with_cache(cache: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pfwin"))
        .args(args)
        .env("PFWIN_CACHE", cache)
        .output()
        .expect("spawn pfwin")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).expect("stdout is JSON")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process exited normally")
}

// ---------------------------------------------------------------- cohomology

#[test]
fn cohomology_matches_documented_schema() {
    let out = pfwin(&["cohomology", "O(-7)", "--json"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(
        stdout(&out).trim(),
        r#"{"space":"g27","bundle":{"l":0,"m":-7},"cohomology":[{"degree":10,"dim":1}]}"#
    );
}

#[test]
fn cohomology_dual_shorthand_normalizes() {
    // S^v(0) is the dual tautological bundle, i.e. S(1) up to the rank-two
    // determinant identification; its sections are the ambient seven-space.
    let out = pfwin(&["cohomology", "S^v(0)", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let v = json(&out);
    assert_eq!(v["bundle"]["l"], 1);
    assert_eq!(v["bundle"]["m"], 1);
    assert_eq!(v["cohomology"], serde_json::json!([{"degree": 0, "dim": 7}]));
}

#[test]
fn cohomology_projective_space_line_bundle() {
    let out = pfwin(&["cohomology", "--space", "p6", "O(-7)", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let v = json(&out);
    assert_eq!(v["space"], "p6");
    assert_eq!(v["cohomology"], serde_json::json!([{"degree": 6, "dim": 1}]));
}

#[test]
fn cohomology_projective_space_rejects_higher_rank() {
    let out = pfwin(&["cohomology", "--space", "p6", "S(0)"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("invalid input"));
}

#[test]
fn malformed_bundle_expressions_exit_2() {
    for expr in ["Q(0)", "Sym S(0)", "O(x)", "Sym^2 O(0)", "S(1"] {
        let out = pfwin(&["cohomology", expr]);
        assert_eq!(exit_code(&out), 2, "expression {expr:?} should be rejected");
        assert!(stderr(&out).contains("invalid input"), "stderr for {expr:?}");
    }
}

// ----------------------------------------------------------------------- ext

#[test]
fn ext_profile_of_tautological_bundle_is_simple() {
    let out = pfwin(&["ext", "S(0)", "S(0)", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let v = json(&out);
    assert_eq!(v["ext"], serde_json::json!([{"degree": 0, "dim": 1}]));
}

#[test]
fn ext_certificate_on_grassmannian_total_space() {
    let out = pfwin(&["ext", "--space", "xg", "O(0)", "O(-6)", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let v = json(&out);
    assert_eq!(v["vanishes"], true);
    assert_eq!(v["scanned"], serde_json::json!({"from": 0, "to": 6}));
    assert_eq!(v["witness"], Value::Null);
}

#[test]
fn ext_certificate_on_dual_chart_reports_control_failure() {
    // The out-of-window pair (O, O(7)) must fail, certifying that the
    // vanishing test is not vacuous.  Reporting a certificate is a success
    // of the tool, so the exit code stays 0.
    let out = pfwin(&["ext", "--space", "xp", "O(0)", "O(7)", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let v = json(&out);
    assert_eq!(v["vanishes"], false);
    assert_eq!(v["witness"]["lambda"], serde_json::json!([]));
    assert_eq!(v["witness"]["t"], 0);
    assert_eq!(v["witness"]["p6_twist"], 7);
    assert_eq!(v["witness"]["multiplicity"], 1);
}

#[test]
fn ext_unknown_space_exits_2() {
    let out = pfwin(&["ext", "--space", "x9", "O(0)", "O(0)"]);
    assert_eq!(exit_code(&out), 2);
}

// -------------------------------------------------------------------- window

#[test]
fn standard_window_passes_exceptionality() {
    let out = pfwin(&["window", "--m", "0,0,0", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let v = json(&out);
    assert_eq!(v["generators"].as_array().unwrap().len(), 21);
    assert_eq!(v["exceptional"], true);
    assert_eq!(v["pass"], true);
}

#[test]
fn negative_window_tuples_parse() {
    for tuple in ["-1,0,0", "-1,-1,-1", "-2,-1,0"] {
        let out = pfwin(&["window", "--m", tuple, "--json"]);
        assert_eq!(exit_code(&out), 0, "tuple {tuple} rejected: {}", stderr(&out));
        assert_eq!(json(&out)["pass"], true, "tuple {tuple}");
    }
}

#[test]
fn invalid_window_tuple_exits_2() {
    let out = pfwin(&["window", "--m", "0,2,2"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("m1 <= m0 + 1"));
}

#[test]
fn full_window_certificate_is_unimodular() {
    let out = pfwin(&["window", "--m", "6,7,8", "--full", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let v = json(&out);
    assert_eq!(v["gram_unit_triangular"], true);
    let det = v["fullness_det"].as_i64().expect("integer determinant");
    assert!(det == 1 || det == -1, "fullness determinant {det} not a unit");
    assert_eq!(v["pass"], true);
}

// -------------------------------------------------------------------- mutate

#[test]
fn mutation_chain_replays_with_identities() {
    let out = pfwin(&["mutate", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let v = json(&out);
    let steps = v["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 4);
    assert_eq!(steps[2]["after"], serde_json::json!([-1, -1, -1]));
    assert_eq!(steps[3]["after"], serde_json::json!([-2, -1, 0]));
    assert_eq!(v["class_identities"], true);
    assert_eq!(v["serre_identity_windows"].as_array().unwrap().len(), 6);
    assert_eq!(v["pass"], true);
}

// --------------------------------------------------------------------- euler

#[test]
fn euler_pairings_match_known_values() {
    let out = pfwin(&["euler", "O(0)", "O(1)", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let v = json(&out);
    assert_eq!(v["chi_g"], 21);
    assert_eq!(v["chi_y"], 14);

    let out = pfwin(&["euler", "O(0)", "S(-3)", "--json"]);
    let v = json(&out);
    assert_eq!(v["chi_g"], 0);
    assert_eq!(v["chi_y"], -637);
}

// ----------------------------------------------------------------------- cy3

#[test]
fn calabi_yau_lattice_report_is_stable() {
    let out = pfwin(&["cy3", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let v = json(&out);
    assert_eq!(v["rank"], 4);
    assert_eq!(v["invariant_factors"], serde_json::json!([7, 7, 14, 14]));
    assert_eq!(v["transvections_preserve_pairing"], true);
    assert_eq!(v["line_twists_preserve_pairing"], true);
    assert_eq!(v["pass"], true);
    // The quotient pairing is antisymmetric.
    let p = v["pairing"].as_array().unwrap();
    for i in 0..4 {
        for j in 0..4 {
            let a = p[i][j].as_i64().unwrap();
            let b = p[j][i].as_i64().unwrap();
            assert_eq!(a, -b, "pairing not antisymmetric at ({i}, {j})");
        }
    }
}

// ----------------------------------------------------------------- monodromy

#[test]
fn big_circle_word_is_the_identity() {
    let out = pfwin(&["monodromy", "gG", "g2", "g1", "g0", "gP", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let v = json(&out);
    assert_eq!(v["is_identity"], true);
    assert_eq!(v["pass"], true);
}

#[test]
fn ladder_word_reduces_to_wall_generator() {
    let ladder = pfwin(&["monodromy", "psi1^-1 psi0", "--json"]);
    let wall = pfwin(&["monodromy", "g0", "--json"]);
    assert_eq!(exit_code(&ladder), 0);
    let lv = json(&ladder);
    let wv = json(&wall);
    assert_eq!(lv["reduced"], "g0");
    assert_eq!(lv["matrix"], wv["matrix"]);
}

#[test]
fn adjacent_inverses_cancel_to_identity() {
    let out = pfwin(&["monodromy", "g0", "g0^-1", "--json"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(json(&out)["is_identity"], true);
}

#[test]
fn unmatched_path_token_exits_3() {
    let out = pfwin(&["monodromy", "psi0"]);
    assert_eq!(exit_code(&out), 3);
    assert!(stderr(&out).contains("path"));
}

#[test]
fn unknown_word_token_exits_3() {
    let out = pfwin(&["monodromy", "gQ"]);
    assert_eq!(exit_code(&out), 3);
    assert!(stderr(&out).contains("word parse"));
}

#[test]
fn relations_audit_passes() {
    let out = pfwin(&["monodromy", "gG", "--check-relations", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let v = json(&out);
    assert_eq!(v["relations"]["all_hold"], true);
    assert_eq!(v["pass"], true);
}

// -------------------------------------------------------------------- verify

#[test]
fn single_verification_check_passes() {
    let out = pfwin(&["verify", "--check", "bwb-calibration", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"][0]["name"], "bwb-calibration");
    assert_eq!(v["checks"][0]["passed"], true);
}

#[test]
fn unknown_verification_check_exits_2() {
    let out = pfwin(&["verify", "--check", "no-such-check"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("expected one of"));
}

#[test]
fn failing_verification_check_exits_1() {
    // The strict shift-transfer intertwining identity is genuinely false
    // (restriction annihilates the transfer's correction term), so the
    // check reports a failure and the tool must say so honestly: exit 1,
    // with the first failing check named on stderr.
    let out = pfwin(&["verify", "--check", "window-shift-transfer", "--json"]);
    assert_eq!(exit_code(&out), 1);
    let v = json(&out);
    assert_eq!(v["passed"], false);
    assert_eq!(v["checks"][0]["passed"], false);
    assert!(stderr(&out).contains("window-shift-transfer"));
}

// --------------------------------------------------------------------- cache

#[test]
fn cache_replay_is_byte_identical_and_preserves_exit_codes() {
    let dir = std::env::temp_dir().join(format!("pfwin-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("create cache dir");
    let cache = dir.to_str().expect("utf-8 temp path");

    let args = ["ext", "--space", "xp", "O(0)", "O(7)", "--json"];
    let off = pfwin(&args);
    let cold = pfwin_with_cache(cache, &args);
    let entries = || std::fs::read_dir(&dir).unwrap().count();
    assert_eq!(entries(), 1, "cold run should store one entry");
    let warm = pfwin_with_cache(cache, &args);
    assert_eq!(entries(), 1, "warm run should not add entries");
    assert_eq!(stdout(&off), stdout(&cold), "cache changed the output");
    assert_eq!(stdout(&cold), stdout(&warm), "replay changed the output");
    assert_eq!(exit_code(&warm), 0);

    // Human rendering goes through the same payload, cached or not.
    let human = ["cohomology", "O(-7)"];
    let h_cold = pfwin_with_cache(cache, &human);
    let h_warm = pfwin_with_cache(cache, &human);
    assert_eq!(stdout(&h_cold), stdout(&h_warm));
    assert_eq!(stdout(&h_cold), stdout(&pfwin(&human)));

    // A corrupted entry is ignored and recomputed, not trusted.
    for entry in std::fs::read_dir(&dir).unwrap() {
        std::fs::write(entry.unwrap().path(), b"{not json").unwrap();
    }
    let healed = pfwin_with_cache(cache, &args);
    assert_eq!(stdout(&healed), stdout(&off));
    assert_eq!(exit_code(&healed), 0);

    let _ = std::fs::remove_dir_all(&dir);
}

#[cfg(unix)]
#[test]
fn closed_pipe_terminates_quietly() {
    // `pfwin cy3 | head -1` must not panic with a broken-pipe backtrace;
    // the process should die on SIGPIPE like other line-oriented tools.
    use std::os::unix::process::ExitStatusExt;
    let mut child = Command::new(env!("CARGO_BIN_EXE_pfwin"))
        .args(["cy3"])
        .env("PFWIN_CACHE", "off")
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .expect("spawn pfwin");
    drop(child.stdout.take());
    let status = child.wait().expect("wait for pfwin");
    let quiet = status.success() || status.signal() == Some(libc_sigpipe());
    assert!(quiet, "unexpected status {status:?}");
    let mut err = String::new();
    use std::io::Read;
    child.stderr.take().unwrap().read_to_string(&mut err).unwrap();
    assert!(!err.contains("panicked"), "broken pipe panicked: {err}");
}

#[cfg(unix)]
fn libc_sigpipe() -> i32 {
    13
}

#[test]
fn cache_off_spellings_disable_the_cache() {
    for value in ["off", "none", "0", ""] {
        let out = pfwin_with_cache(value, &["euler", "O(0)", "O(1)", "--json"]);
        assert_eq!(exit_code(&out), 0, "PFWIN_CACHE={value:?}");
        assert_eq!(json(&out)["chi_y"], 14);
    }
}
