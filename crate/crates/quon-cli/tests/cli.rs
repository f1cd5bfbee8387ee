//! End-to-end tests of the installed binary: exit codes, output bytes,
//! error columns, and the JSON round trip.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn quon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn normal_order_prints_the_defining_relation() {
    let out = quon(&["normal-order", "--m", "2", "a(f) a+(g)"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "q p[2] a+(g) a(f)\n<f,g>\n");
}

#[test]
fn normal_order_latex_uses_bracket_notation() {
    let out = quon(&["normal-order", "--m", "2", "--format", "latex", "a(f) a+(g)"]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "q\\, p_{2}\\, A^{+}(g)\\, A(f) + \\langle f,g\\rangle\n"
    );
}

#[test]
fn normal_order_json_round_trips() {
    let out = quon(&["normal-order", "--m", "3", "--format", "json", "a(f) a+(g) a(h) p[1]"]);
    assert!(out.status.success());
    let reparsed = quon::symbolic::NormalForm::from_json(&stdout_of(&out)).unwrap();
    let word = quon::symbolic::Word::new(
        3,
        vec![
            quon::symbolic::OperatorSymbol::annihilator("f"),
            quon::symbolic::OperatorSymbol::creator("g"),
            quon::symbolic::OperatorSymbol::annihilator("h"),
            quon::symbolic::OperatorSymbol::projector(1),
        ],
    )
    .unwrap();
    let direct = quon::symbolic::normal_order_wick(&word).unwrap();
    assert!(quon::symbolic::normal_form_equal(&reparsed, &direct).unwrap());
}

#[test]
fn both_engines_agree_on_the_sample_word() {
    let out = quon(&["normal-order", "--m", "2", "--mode", "both", "a(f) a+(g) a+(h)"]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("<f,g> a+(h)"));
}

#[test]
fn unclosed_parenthesis_reports_column_four() {
    let out = quon(&["normal-order", "--m", "2", "a+(g"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("column 4"));
}

#[test]
fn empty_expression_is_a_usage_error() {
    let out = quon(&["normal-order", "--m", "2", "  "]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("empty expression"));
}

#[test]
fn expression_can_come_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_quon"))
        .args(["normal-order", "--m", "2", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"a(f) a+(g)")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "q p[2] a+(g) a(f)\n<f,g>\n"
    );
}

#[test]
fn vacuum_prints_pairing_polynomials() {
    let out = quon(&["vacuum", "--m", "2", "a(f1) a(f2) a+(g1) a+(g2)"]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "<f1,g1> <f2,g2>: q\n<f1,g2> <f2,g1>: 1\n"
    );
}

#[test]
fn vacuum_evaluates_rationals_exactly() {
    let out = quon(&["vacuum", "--m", "2", "--q", "1/3", "a(f1) a(f2) a+(g1) a+(g2)"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "<f1,g1> <f2,g2>: 1/3\n<f1,g2> <f2,g1>: 1\n");
}

#[test]
fn vacuum_projector_semantics_depend_on_the_range() {
    // With m=1 the q-term's merged projector level is 0, which vanishes on
    // the vacuum; formally it survives.
    let concrete = quon(&["vacuum", "--m", "1", "a(f1) a(f2) a+(g1) a+(g2)"]);
    assert_eq!(stdout_of(&concrete), "<f1,g2> <f2,g1>: 1\n");
    let formal = quon(&[
        "vacuum",
        "--m",
        "1",
        "--concrete-projectors",
        "off",
        "a(f1) a(f2) a+(g1) a+(g2)",
    ]);
    assert_eq!(
        stdout_of(&formal),
        "<f1,g1> <f2,g2>: q\n<f1,g2> <f2,g1>: 1\n"
    );
}

#[test]
fn vacuum_of_an_unbalanced_word_is_zero() {
    let out = quon(&["vacuum", "--m", "2", "a+(g)"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "0\n");
}

#[test]
fn moments_match_the_free_case() {
    let out = quon(&[
        "moments", "--q", "0", "--m", "2", "--dim", "2", "--levels", "3", "--orders", "6",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "m1 = 0\nm2 = 1\nm3 = 0\nm4 = 2\nm5 = 0\nm6 = 5\n");
}

#[test]
fn moment_orders_beyond_the_truncation_exit_three() {
    let out = quon(&["moments", "--q", "0", "--m", "2", "--levels", "3", "--orders", "7"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn out_of_range_q_is_a_usage_error() {
    let out = quon(&["moments", "--q", "1.5", "--m", "2", "--orders", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn count_matches_small_closed_forms() {
    for (args, expected) in [
        (vec!["count", "--what", "ncpp", "--n", "2"], "2\n"),
        (vec!["count", "--what", "pp", "--n", "2"], "3\n"),
        (vec!["count", "--what", "patterns", "--n", "3"], "5\n"),
        (vec!["count", "--what", "feynman", "--pattern", "-++"], "3\n"),
        (
            vec!["count", "--what", "feynman", "--pattern", "-++", "--k", "1"],
            "2\n",
        ),
    ] {
        let out = quon(&args);
        assert!(out.status.success(), "{args:?}");
        assert_eq!(stdout_of(&out), expected, "{args:?}");
    }
}

#[test]
fn count_without_its_size_flag_is_a_usage_error() {
    let out = quon(&["count", "--what", "pp"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumeration_caps_exit_three() {
    let out = quon(&["count", "--what", "pp", "--n", "100"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_suite_reports_pass() {
    let out = quon(&["verify", "--suite", "pi-equals-c", "--max-len", "4"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("\"suite\": \"pi-equals-c\""));
    assert!(text.contains("\"pass\": true"));
}

#[test]
fn verify_beyond_the_suite_cap_exits_three() {
    let out = quon(&["verify", "--suite", "pi-equals-c", "--max-len", "11"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_all_emits_four_reports() {
    let out = quon(&["verify", "--suite", "all", "--max-len", "4", "--cases", "20"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out).matches("\"pass\": true").count(), 4);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["normal-order", "--m", "3", "a(f) p[1] a+(g) a(h) a+(k)"];
    assert_eq!(quon(&args).stdout, quon(&args).stdout);
}
