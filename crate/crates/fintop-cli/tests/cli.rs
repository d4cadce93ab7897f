//! End-to-end tests of the binary: exit codes, output shapes, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fintop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fintop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 output")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn parse_prints_normalized_map_with_predicates() {
    let out = fintop(&["parse", "{u->a,b<-v}-->{u->a=b<-v}"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("points: 4 -> 3"), "{text}");
    assert!(text.contains("a -> a=b"), "{text}");
    assert!(text.contains("surjective"), "{text}");
    assert!(text.contains("closed"), "{text}");
}

#[test]
fn parse_accepts_the_empty_space() {
    let out = fintop(&["parse", "{}"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("points (0)"));
}

#[test]
fn parse_rejects_malformed_input_with_position() {
    let out = fintop(&["parse", "{a->"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("byte 3"), "{}", stderr(&out));
}

#[test]
fn parse_rejects_unmatched_domain_labels() {
    let out = fintop(&["lift", "{c}-->{o->c}", "{o->c}-->{o}"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("does not appear in the codomain"), "{}", stderr(&out));
}

#[test]
fn lift_reports_success_with_exit_zero() {
    let out = fintop(&["lift", "{}-->{o}", "{a,b}-->{a=b}"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("holds"));
}

#[test]
fn lift_reports_failure_with_counterexample_and_exit_one() {
    let out = fintop(&["lift", "{}-->{x->a<-y}", "{u->a,b<-v}-->{u->a=b<-v}"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("fails"), "{text}");
    assert!(text.contains("counterexample square"), "{text}");
    assert!(text.contains("top:"), "{text}");
    assert!(text.contains("bottom:"), "{text}");
}

#[test]
fn lift_witnesses_lists_every_square() {
    let out = fintop(&["lift", "{}-->{o}", "{a,b}-->{a=b}", "--witnesses"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("square 1:"));
}

#[test]
fn classify_shows_direct_and_lifting_columns() {
    let out = fintop(&["classify", "{o}-->{o->c}"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("direct  lifting"), "{text}");
    for line in ["open ", "dense_image"] {
        let row = text.lines().find(|l| l.starts_with(line)).expect(line);
        assert!(row.contains("yes"), "{row}");
    }
    for line in ["closed ", "proper_finite"] {
        let row = text.lines().find(|l| l.starts_with(line)).expect(line);
        assert!(row.contains("no"), "{row}");
    }
}

#[test]
fn classify_space_matches_expected_predicates() {
    let out = fintop(&["classify", "{o->c}"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for name in ["extremally_disconnected", "T0", "connected"] {
        let row = text.lines().find(|l| l.starts_with(name)).expect(name);
        assert!(row.contains("yes"), "{row}");
    }
    let t1 = text.lines().find(|l| l.starts_with("T1")).unwrap();
    assert!(t1.contains("no"), "{t1}");
}

#[test]
fn verify_passes_on_extremally_disconnected_spaces() {
    let out = fintop(&["verify", "extremally_disconnected", "--bound", "4"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("47 instances, 0 mismatches"));
}

#[test]
fn verify_bound_zero_is_a_vacuous_pass() {
    let out = fintop(&["verify", "surjective", "--bound", "0"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("1 instances, 0 mismatches"));
}

#[test]
fn verify_rejects_unknown_predicates() {
    let out = fintop(&["verify", "no_such_predicate"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown predicate"));
}

#[test]
fn verify_out_writes_json_records() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("verify_t0.jsonl");
    let out = fintop(&["verify", "T0", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let written = std::fs::read_to_string(&path).unwrap();
    let record: serde_json::Value = serde_json::from_str(written.lines().next().unwrap()).unwrap();
    assert_eq!(record["command"], "verify");
    assert_eq!(record["verdicts"]["instances_checked"], 47);
}

#[test]
fn orthogonal_lists_the_surjections_at_bound_2() {
    let out = fintop(&["orthogonal", "{ {}-->{o} }^r", "--bound", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("11 members"), "{text}");
    assert!(text.contains("{a,b}-->{a=b}"), "{text}");
    assert!(!text.contains("{}-->{a}\n"), "{text}");
}

#[test]
fn orthogonal_dense_image_class_at_bound_2() {
    let out = fintop(&["orthogonal", "{ {c}-->{o->c} }^l", "--bound", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("19 members"), "{text}");
    assert!(text.contains("{a}-->{a<->b}"), "{text}");
}

#[test]
fn orthogonal_injections_at_bound_2_exclude_the_fold() {
    let out = fintop(&["orthogonal", "{ {a<->b}-->{a=b} }^l", "--bound", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "{}-->{a}"), "{text}");
    assert!(!text.lines().any(|l| l == "{a,b}-->{a=b}"), "{text}");
}

#[test]
fn orthogonal_iterated_expressions_carry_a_caveat() {
    let out = fintop(&["orthogonal", "{ {}-->{o} }^rl", "--bound", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("note:"), "{}", stdout(&out));
}

#[test]
fn census_summarizes_spaces_and_maps() {
    let out = fintop(&["census", "--bound", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("5 spaces"), "{text}");
    assert!(text.contains("31 maps"), "{text}");
}

#[test]
fn census_rejects_bounds_beyond_the_guard() {
    let out = fintop(&["census", "--bound", "9"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("exceeds"), "{}", stderr(&out));
}

#[test]
fn parse_file_processes_one_expression_per_line() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("corpus.txt");
    std::fs::write(&path, "# comment\n{a->b}\n\n{}-->{o}\n{ {}-->{o} }^r\n").unwrap();
    let out = fintop(&["parse", "--file", path.to_str().unwrap(), "--json"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3, "{text}");
    for line in text.lines() {
        let record: serde_json::Value = serde_json::from_str(line).unwrap();
        for field in ["command", "inputs", "verdicts", "key"] {
            assert!(record.get(field).is_some(), "missing {field} in {line}");
        }
    }
}

#[test]
fn json_records_are_byte_identical_across_runs() {
    let args = ["verify", "T0", "--json"];
    let first = fintop(&args);
    let second = fintop(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);

    let args = ["orthogonal", "{ {}-->{o} }^rr", "--bound", "2", "--json"];
    let first = fintop(&args);
    let second = fintop(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn json_lift_record_has_the_schema_fields() {
    let out = fintop(&["lift", "{}-->{o}", "{a,b}-->{a=b}", "--json"]);
    assert_eq!(code(&out), 0);
    let record: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(record["command"], "lift");
    assert_eq!(record["inputs"][0], "{}-->{o}");
    assert_eq!(record["verdicts"]["holds"], true);
    assert!(record["key"].as_str().unwrap().contains('|'));
}
