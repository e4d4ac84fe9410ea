use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ontobridge")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Logical axioms of an ontology file, counted from its text: every
/// top-level axiom line that is neither a declaration nor an annotation
/// assertion.
fn logical_lines(text: &str) -> usize {
    text.lines()
        .map(str::trim)
        .filter(|l| l.contains('(') && !l.starts_with("Prefix(") && !l.starts_with("Ontology("))
        .filter(|l| !l.starts_with("Declaration(") && !l.starts_with("AnnotationAssertion("))
        .count()
}

fn conference_run(dir: &TempDir, extra: &[&str]) -> (Output, PathBuf, PathBuf) {
    let out = dir.path().join("out.ofn");
    let report = dir.path().join("report.json");
    let (cmt, conf, confof) = (fixture("cmt.ofn"), fixture("conference.ofn"), fixture("confOf.ofn"));
    let (a12, a13, a23) = (fixture("cmt-conference.rdf"), fixture("cmt-confOf.rdf"), fixture("conference-confOf.rdf"));
    let mut args = vec![
        "integrate",
        "--ontology", s(&cmt),
        "--ontology", s(&conf),
        "--ontology", s(&confof),
        "--alignment", s(&a12),
        "--alignment", s(&a13),
        "--alignment", s(&a23),
        "--output", s(&out),
        "--report", s(&report),
    ];
    args.extend_from_slice(extra);
    (run(&args), out, report)
}

fn report_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn bridge_n_to_n_reports_kept_cells() {
    let dir = TempDir::new().unwrap();
    let (res, out, report) =
        conference_run(&dir, &["--mode", "bridge", "--style", "refactor", "--topology", "n-to-n"]);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    let r = report_json(&report);
    // 7 + 5 + 4 cells, one of them with an unsupported `<` relation
    let skipped: u64 = r["skipped_cells"].as_object().unwrap().values().map(|v| v.as_u64().unwrap()).sum();
    assert_eq!(r["bridged_cells"], 16 - skipped);
    assert_eq!(r["bridged_cells"], 15);
    let sources: usize =
        ["cmt.ofn", "conference.ofn", "confOf.ofn"].iter().map(|f| logical_lines(&std::fs::read_to_string(fixture(f)).unwrap())).sum();
    let written = std::fs::read_to_string(&out).unwrap();
    assert_eq!(logical_lines(&written), sources + 15);
    assert_eq!(r["logical_axioms"], sources + 15);
    assert_eq!(r["axiom_law"], "PASS");
}

#[test]
fn integrate_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let (_, out, report) = conference_run(&dir, &["--topology", "two-to-two"]);
    let first = (std::fs::read(&out).unwrap(), report_json(&report));
    let (_, out, report) = conference_run(&dir, &["--topology", "two-to-two"]);
    let second = (std::fs::read(&out).unwrap(), report_json(&report));
    assert_eq!(first.0, second.0);
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timings");
        v
    };
    assert_eq!(strip(first.1), strip(second.1));
}

#[test]
fn aggregate_of_one_is_a_refactored_copy() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("copy.ofn");
    let input = fixture("coherent.ofn");
    let res = run(&["integrate", "--mode", "aggregate", "--ontology", s(&input), "--output", s(&out)]);
    assert_eq!(code(&res), 0);
    let report: Value = serde_json::from_slice(&res.stdout).unwrap();
    let original = std::fs::read_to_string(&input).unwrap();
    let written = std::fs::read_to_string(&out).unwrap();
    assert_eq!(logical_lines(&written), logical_lines(&original));
    assert_eq!(report["logical_axioms"], logical_lines(&original));
    assert!(written.contains("http://example.org/integrated/001#"));
    assert!(!written.contains("<http://example.org/zoo#"));
}

#[test]
fn unknown_header_iri_is_a_pair_resolution_error() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("o.ofn");
    let (cmt, a) = (fixture("cmt.ofn"), fixture("bridge_o2-o1.rdf"));
    let res = run(&["integrate", "--ontology", s(&cmt), "--ontology", s(&cmt), "--alignment", s(&a), "--output", s(&out)]);
    assert_eq!(code(&res), 2);
    assert!(String::from_utf8_lossy(&res.stderr).contains("no input ontology has IRI"));
    assert!(!out.exists());
}

#[test]
fn explicit_pair_out_of_range_fails() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("o.ofn");
    let (o1, o2, a) = (fixture("bridge_o1.ofn"), fixture("bridge_o2.ofn"), fixture("bridge_o2-o1.rdf"));
    let spec = format!("2:3={}", s(&a));
    let res = run(&["integrate", "--ontology", s(&o1), "--ontology", s(&o2), "--alignment", &spec, "--output", s(&out)]);
    assert_eq!(code(&res), 2);
    let spec = format!("2:1={}", s(&a));
    let res = run(&["integrate", "--ontology", s(&o1), "--ontology", s(&o2), "--alignment", &spec, "--output", s(&out)]);
    assert_eq!(code(&res), 0);
}

#[test]
fn missing_and_malformed_inputs_exit_2() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("o.ofn");
    let res = run(&["integrate", "--ontology", "/nonexistent/x.ofn", "--output", s(&out)]);
    assert_eq!(code(&res), 2);
    let bad = dir.path().join("bad.ofn");
    std::fs::write(&bad, "Ontology(<http://x> SubClassOf(").unwrap();
    assert_eq!(code(&run(&["integrate", "--ontology", s(&bad), "--output", s(&out)])), 2);
    assert_eq!(code(&run(&["check", s(&bad)])), 2);
    assert_eq!(code(&run(&["integrate", "--ontology", s(&fixture("cmt.ofn")), "--mode", "nonsense", "--output", s(&out)])), 2);
}

#[test]
fn full_merge_needs_two_ontologies() {
    let dir = TempDir::new().unwrap();
    let (res, _, _) = conference_run(&dir, &["--mode", "full-merge"]);
    assert_eq!(code(&res), 2);
}

#[test]
fn incoherent_bridge_is_written_and_repair_fixes_it() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("o.ofn");
    let report = dir.path().join("r.json");
    let (o1, o2, a) = (fixture("bridge_o1.ofn"), fixture("bridge_o2.ofn"), fixture("bridge_o2-o1.rdf"));
    let base = ["integrate", "--ontology", s(&o1), "--ontology", s(&o2), "--alignment", s(&a), "--output", s(&out), "--report", s(&report)];
    assert_eq!(code(&run(&base)), 0);
    let r = report_json(&report);
    assert_eq!(r["unsat_count"], 3);
    assert_eq!(r["coherent"], false);
    assert!(out.exists());

    let mut repaired = base.to_vec();
    repaired.push("--repair");
    assert_eq!(code(&run(&repaired)), 0);
    let r = report_json(&report);
    assert_eq!(r["unsat_count"], 0);
    assert_eq!(r["bridged_cells"], 1);
}

#[test]
fn text_report_format() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("o.ofn");
    let res = run(&["integrate", "--ontology", s(&fixture("coherent.ofn")), "--output", s(&out), "--report-format", "text"]);
    assert_eq!(code(&res), 0);
    assert!(stdout(&res).contains("coherent: yes"));
}

#[test]
fn check_exit_codes() {
    let res = run(&["check", s(&fixture("coherent.ofn"))]);
    assert_eq!(code(&res), 0);
    assert!(stdout(&res).contains("unsatisfiable classes: 0"));

    let res = run(&["check", s(&fixture("three_class_incoherent.ofn"))]);
    assert_eq!(code(&res), 1);
    let text = stdout(&res);
    for c in ["#C", "#A1", "#A2"] {
        assert!(text.lines().any(|l| l.trim().starts_with("http") && l.trim().ends_with(c)), "{c} missing:\n{text}");
    }
    assert!(text.contains("justifications:"));
    assert!(text.contains("DisjointClasses("));

    let res = run(&["check", s(&fixture("three_class_inconsistent.ofn"))]);
    assert_eq!(code(&res), 3);
    assert!(stdout(&res).contains("consistent: no"));

    assert_eq!(code(&run(&["check", "/nonexistent.ofn"])), 2);
}

#[test]
fn filter_alignment_counts_and_idempotence() {
    let dir = TempDir::new().unwrap();
    let once = dir.path().join("once.rdf");
    let twice = dir.path().join("twice.rdf");
    let res = run(&["filter-alignment", s(&fixture("filter_sample.rdf")), s(&once), "--one-to-one"]);
    assert_eq!(code(&res), 0);
    assert_eq!(stdout(&res).trim(), "kept 2 dropped 1");
    let res = run(&["filter-alignment", s(&once), s(&twice), "--one-to-one"]);
    assert_eq!(stdout(&res).trim(), "kept 2 dropped 0");
    assert_eq!(std::fs::read(&once).unwrap(), std::fs::read(&twice).unwrap());

    // every measure in the sample is below 1
    let res = run(&["filter-alignment", s(&fixture("filter_sample.rdf")), s(&once), "--threshold", "1.0"]);
    assert_eq!(stdout(&res).trim(), "kept 0 dropped 3");

    assert_eq!(code(&run(&["filter-alignment", s(&fixture("filter_sample.rdf")), s(&once), "--threshold", "1.5"])), 2);
    assert_eq!(code(&run(&["filter-alignment", s(&fixture("cmt.ofn")), s(&once)])), 2);
}
