use super::*;

fn doc(text: &str) -> InputDocument {
    parse_str(text).unwrap()
}

const NIL_PAIR: &str = r#"{
  "mode": "pair",
  "dimension": 4,
  "lie": [[1, 2, 3, "-1"]],
  "forms": [[[1, 4, "1"], [2, 3, "1"]], [[1, 4, "1"], [2, 3, "-1"]]]
}"#;

#[test]
fn parse_reports_every_violation_with_paths() {
    let text = r#"{"mode":"pair","dimension":4,"forms":[[[1,5,"1"],[2,1,"1"]],[[1,2,"1/0"],[1,2,"1"],[1,2,"2"]]]}"#;
    let msg = parse_str(text).unwrap_err().to_string();
    for needle in ["forms[0][0]", "forms[0][1]", "forms[1][0]", "forms[1][2]"] {
        assert!(msg.contains(needle), "{needle} missing from {msg}");
    }
}

#[test]
fn syntax_errors_carry_position() {
    let msg = parse_str("{\"mode\": \"pair\",\n  \"dimension\": }").unwrap_err().to_string();
    assert!(msg.contains("line 2"), "{msg}");
}

#[test]
fn unknown_fields_are_rejected() {
    assert!(parse_str(r#"{"mode":"pair","dimension":2,"forms":[[],[]],"extra":1}"#).is_err());
}

#[test]
fn jacobi_failure_is_a_parse_level_error() {
    let text = r#"{"mode":"triple","dimension":3,"lie":[[1,2,1,"1"],[1,3,2,"1"]],"forms":[[[1,2,"1"]],[[1,3,"1"]],[[2,3,"1"]]]}"#;
    assert!(matches!(parse_str(text), Err(Error::Jacobi(_))));
}

#[test]
fn sha_is_of_raw_bytes() {
    let a = doc(NIL_PAIR);
    let b = doc(&format!("{NIL_PAIR}\n"));
    assert_eq!(a.sha256.len(), 64);
    assert_ne!(a.sha256, b.sha256);
}

#[test]
fn pair_report_on_nilpotent_algebra() {
    let d = doc(NIL_PAIR);
    let (body, checks) = pair_report(&algebra_of(&d), &d.forms[0], &d.forms[1]).unwrap();
    assert_eq!(body["tag"], "SymplecticPair");
    assert!(checks.iter().filter(|c| c.required).all(|c| c.pass), "{checks:?}");
}

#[test]
fn mode_flag_mismatch_is_an_error() {
    let out = run_args(["recop", "--mode", "float", "verify-example", "flat-hk-4"]);
    assert_eq!(out.exit_code, EXIT_ERROR);
    let out = run_args(["recop", "--tolerance", "1e-3", "verify-example", "flat-hk-4"]);
    assert_eq!(out.exit_code, EXIT_ERROR);
}

#[test]
fn verify_example_passes() {
    let out = run_args(["recop", "--mode", "exact", "verify-example", "flat-hk-4"]);
    assert_eq!(out.exit_code, EXIT_PASS, "{}", out.render());
    assert_eq!(out.report["result"]["tag"], "HyperholomorphicSymplectic");
}

#[test]
fn unknown_example_is_an_error() {
    let out = run_args(["recop", "verify-example", "no-such"]);
    assert_eq!(out.exit_code, EXIT_ERROR);
    assert_eq!(out.report["status"], "error");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run_args(["recop", "frobnicate"]).exit_code, EXIT_ERROR);
}
