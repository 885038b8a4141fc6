//! End-to-end tests of the binary: exit codes, determinism, report
//! round-trips, and the documented file format.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use enriques_cli::report::{CensusTable, ClassifyReport, CoverReport, Report};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_enriques"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8 stderr")
}

fn write_action(name: &str, contents: &str) -> PathBuf {
    let dir = tempfile::tempdir().expect("tempdir").keep();
    let path = dir.join(name);
    fs::write(&path, contents).expect("write action file");
    path
}

const EXAMPLE_1_FILE: &str = "\
label example 1
gen e1 = (-1, 0/1, 0/1) x (+1, 1/2, 0/1)
gen e2 = (+1, 1/2, 0/1) x (-1, 0/1, 0/1)
";

#[test]
fn example_1_report_values() {
    let out = run(&["example", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("surface type: NodalEnriques"));
    assert!(text.contains("f1 f2 = 4, A1 A2 = 1/1"));
    assert!(text.contains("nodes: 8"));
    assert!(text.contains("Example1"));
}

#[test]
fn example_2_report_values() {
    let out = run(&["example", "2", "--json"]);
    assert!(out.status.success());
    let report: Report = serde_json::from_str(&stdout(&out)).expect("valid report json");
    assert_eq!(report.group_order, 8);
    assert_eq!(report.fibre_numbers.f1f2, 8);
    assert_eq!(report.codes.dim, 2);
    assert_eq!(report.template.kind, "Example2");
    assert_eq!(report.invariants.surface_type, "NodalEnriques");
}

#[test]
fn example_3_is_a_usage_error() {
    let out = run(&["example", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_file_matches_builtin_example() {
    let path = write_action("example1.act", EXAMPLE_1_FILE);
    let from_file = run(&["analyze", path.to_str().unwrap(), "--json"]);
    assert!(from_file.status.success());
    let builtin = run(&["example", "1", "--json"]);
    assert_eq!(stdout(&from_file), stdout(&builtin));
}

#[test]
fn reports_are_byte_deterministic() {
    for args in [
        vec!["example", "2", "--json"],
        vec!["census", "--denom-bound", "1", "--json"],
        vec!["bicanonical", "4"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(stdout(&a), stdout(&b));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn json_report_round_trips() {
    let out = run(&["example", "1", "--json"]);
    let text = stdout(&out);
    let report: Report = serde_json::from_str(&text).expect("parses");
    let again = serde_json::to_string_pretty(&report).expect("serializes");
    assert_eq!(text.trim_end(), again);
    let reparsed: Report = serde_json::from_str(&again).expect("parses again");
    assert_eq!(report, reparsed);
}

#[test]
fn parse_errors_carry_position_and_exit_2() {
    let cases = [
        ("bad_sign.act", "gen a = (+2, 0/1, 0/1) x (+1, 0/1, 0/1)\n", "1:10"),
        ("bad_rat.act", "gen a = (+1, 1/0, 0/1) x (+1, 0/1, 0/1)\n", "denominator"),
        ("bad_sep.act", "gen a = (+1, 0/1, 0/1) y (+1, 0/1, 0/1)\n", "expected `x`"),
        ("empty.act", "# nothing here\n", "no generators"),
        ("bad_arity.act", "gen a = (+1, 0/1) x (+1, 0/1, 0/1)\n", "1:17"),
    ];
    for (name, contents, needle) in cases {
        let path = write_action(name, contents);
        let out = run(&["analyze", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "file {name}");
        let err = stderr(&out);
        assert!(
            err.contains(needle),
            "stderr for {name} missing `{needle}`: {err}"
        );
    }
}

#[test]
fn missing_file_is_a_usage_error() {
    let out = run(&["analyze", "/nonexistent/action.act"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analysis_errors_emit_json_object_and_exit_1() {
    // One factor is fixed pointwise by the flip on the other: not free in
    // codimension 1.
    let path = write_action(
        "curve_fixing.act",
        "gen g = (-1, 0/1, 0/1) x (+1, 0/1, 0/1)\n",
    );
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_str(stderr(&out).trim()).expect("json on stderr");
    assert_eq!(err["error"]["code"], "NotCodimOneFree");
}

#[test]
fn classify_reports_the_kummer_rejection() {
    let path = write_action(
        "kummer.act",
        "gen k = (-1, 0/1, 0/1) x (-1, 0/1, 0/1)\n",
    );
    let out = run(&["classify", path.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let report: ClassifyReport = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(report.template.kind, "NotEnriques8Nodal");
    let reason = report.template.reason.unwrap();
    assert!(reason.contains("16 nodes"));
    assert!(reason.contains("chi=2"));
}

#[test]
fn cover_lists_the_three_proper_subquotients() {
    let path = write_action("example1.act", EXAMPLE_1_FILE);
    let out = run(&["cover", path.to_str().unwrap(), "--subgroup", "all", "--json"]);
    assert!(out.status.success());
    let report: CoverReport = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(report.rows.len(), 3);
    let mut types: Vec<(String, i64)> = report
        .rows
        .iter()
        .map(|r| (r.surface_type.clone(), r.chi))
        .collect();
    types.sort();
    assert_eq!(
        types,
        vec![
            ("Bielliptic".to_string(), 0),
            ("Bielliptic".to_string(), 0),
            ("K3Kummer".to_string(), 2),
        ]
    );
    assert!(report.rows.iter().all(|r| r.agrees));
}

#[test]
fn cover_by_index_and_bad_index() {
    let path = write_action("example1.act", EXAMPLE_1_FILE);
    let one = run(&["cover", path.to_str().unwrap(), "--subgroup", "2", "--json"]);
    assert!(one.status.success());
    let report: CoverReport = serde_json::from_str(&stdout(&one)).expect("valid json");
    assert_eq!(report.rows.len(), 1);

    let bad = run(&["cover", path.to_str().unwrap(), "--subgroup", "9"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn bicanonical_values() {
    let out = run(&["bicanonical", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("<= 2"));
    assert!(text.contains("lambda1 = 2, lambda2 = 2, A1 A2 = 1"));

    let out3 = run(&["bicanonical", "3"]);
    assert!(out3.status.success());
    assert!(stdout(&out3).contains("<= 2"));

    // Below the theorem's hypothesis: an analysis error.
    let out2 = run(&["bicanonical", "2"]);
    assert_eq!(out2.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_str(stderr(&out2).trim()).expect("json");
    assert_eq!(err["error"]["code"], "OutOfScope");
}

#[test]
fn census_has_no_unmatched_rows() {
    let out = run(&["census", "--denom-bound", "2", "--json"]);
    assert!(out.status.success());
    let table: CensusTable = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(table.unmatched_enriques, 0);
    assert!(table.enriques_classes > 0);
    assert_eq!(table.total_groups, 2110);
    // Every verified row normalizes to one of the two templates.
    for row in &table.classes {
        if let Some(v) = &row.verdict {
            assert!(
                v.starts_with("Example1") || v.starts_with("Example2"),
                "unexpected verdict {v}"
            );
        }
    }
}

#[test]
fn census_bound_is_validated() {
    let out = run(&["census", "--denom-bound", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out0 = run(&["census", "--denom-bound", "0"]);
    assert_eq!(out0.status.code(), Some(2));
}

#[test]
fn codes_subcommand_reports_the_bracket() {
    let path = write_action("example1.act", EXAMPLE_1_FILE);
    let out = run(&["codes", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("dim = 3"));
    assert!(text.contains("dim V bracket: [3, 4]"));
}

#[test]
fn order_8_action_with_degenerate_translation_classifies_by_reduction() {
    // The pure translation moves only the second factor; the quotient is an
    // order-4-template surface on an isogenous product.
    let path = write_action(
        "reduced.act",
        "label degenerate order-8 action
gen e1 = (+1, 0/1, 0/1) x (+1, 1/2, 0/1)
gen e2 = (+1, 1/2, 0/1) x (-1, 0/1, 0/1)
gen e3 = (-1, 0/1, 0/1) x (+1, 0/1, 1/2)
",
    );
    let out = run(&["classify", path.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let report: ClassifyReport = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(report.group_order, 8);
    assert_eq!(report.template.kind, "Example1");
    assert_eq!(report.template.reductions.len(), 1);
    assert!(report.template.reductions[0].contains("factor 2"));
}
