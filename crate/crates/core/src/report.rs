//! Metrics of one integration run and their JSON / text rendering.
//!
//! The JSON keys are fixed; counts are integers and timings are seconds
//! rounded to the millisecond.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::alignment::Relation;
use crate::integrator::{IntegrationOutcome, Mode, Style};
use crate::model::EntityKind;
use crate::parser::write_axiom;
use crate::reasoner::{hierarchy_depth, ConsistencyVerdict, InconsistencyReason, Taxonomy, UnsatReport, CHECKER_SCOPE};

/// Unsatisfiable classes listed by name in a report.
pub const UNSAT_SAMPLE: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub parse_seconds: f64,
    pub integrate_seconds: f64,
    pub reason_seconds: f64,
    pub total_seconds: f64,
}

fn millis(d: Duration) -> u64 {
    (d.as_secs_f64() * 1000.0).round() as u64
}

impl Timings {
    /// Rounds to milliseconds; `total` is raised to the sum of the parts
    /// if rounding or a caller's clock put it below.
    pub fn from_durations(parse: Duration, integrate: Duration, reason: Duration, total: Duration) -> Self {
        let parts = [millis(parse), millis(integrate), millis(reason)];
        let total = millis(total).max(parts.iter().sum());
        let secs = |ms: u64| ms as f64 / 1000.0;
        Timings {
            parse_seconds: secs(parts[0]),
            integrate_seconds: secs(parts[1]),
            reason_seconds: secs(parts[2]),
            total_seconds: secs(total),
        }
    }

    pub fn zero() -> Self {
        Timings::from_durations(Duration::ZERO, Duration::ZERO, Duration::ZERO, Duration::ZERO)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JustificationSummary {
    pub class: String,
    pub disjoint: [String; 2],
    pub path1: Vec<String>,
    pub path2: Vec<String>,
    /// Axioms in functional syntax.
    pub axioms: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub mode: String,
    pub style: String,
    pub sources: usize,
    /// Every entity kind, zero counts included.
    pub entities: BTreeMap<String, usize>,
    pub logical_axioms: usize,
    pub declarations: usize,
    pub annotation_assertions: usize,
    /// Logical axioms over all sources before deduplication.
    pub source_logical_axioms: usize,
    pub bridged_cells: usize,
    /// Bridged cells whose relation is `?`.
    pub bridged_questionable: usize,
    pub bridging_axioms: usize,
    pub merged_entities: usize,
    /// Source logical axioms plus bridged cells.
    pub expected_logical_axioms: usize,
    /// `PASS` or `FAIL` for aggregate and bridge runs; `N/A` for full merge.
    pub axiom_law: String,
    pub unsat_count: usize,
    pub unsat_roots: usize,
    pub unsat_sample: Vec<String>,
    pub justifications: Vec<JustificationSummary>,
    pub coherent: bool,
    pub consistent: bool,
    pub inconsistency_reasons: Vec<String>,
    pub hierarchy_depth: usize,
    pub timings: Timings,
    pub skipped_cells: BTreeMap<String, usize>,
    pub checker_scope: String,
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Aggregate => "aggregate",
        Mode::Bridge => "bridge",
        Mode::FullMerge => "full-merge",
    }
}

fn style_name(s: Style) -> &'static str {
    match s {
        Style::Refactor => "refactor",
        Style::Reference => "reference",
    }
}

pub fn describe_reason(r: &InconsistencyReason) -> String {
    match r {
        InconsistencyReason::UnsatisfiableInstance { class, individual } => {
            format!("{individual} is an instance of unsatisfiable {class}")
        }
        InconsistencyReason::DisjointTypes { individual, first, second } => {
            format!("{individual} is an instance of disjoint {first} and {second}")
        }
        InconsistencyReason::SameAndDifferent { first, second } => {
            format!("{first} and {second} are both same and different")
        }
    }
}

/// Collects the metrics of one run. `taxonomy`, `unsat` and `verdict` must
/// come from `outcome.ontology`.
pub fn compute_metrics(
    outcome: &IntegrationOutcome,
    taxonomy: &Taxonomy,
    unsat: &UnsatReport,
    verdict: &ConsistencyVerdict,
    timings: Timings,
) -> MetricsReport {
    let o = &outcome.ontology;
    let logical = o.logical_axiom_count();
    let expected = outcome.expected_logical_axioms();
    let axiom_law = match outcome.mode {
        Mode::FullMerge => "N/A",
        _ if logical == expected => "PASS",
        _ => "FAIL",
    };
    let justifications = unsat
        .justifications
        .values()
        .map(|j| JustificationSummary {
            class: j.class.to_string(),
            disjoint: [j.disjoint.0.to_string(), j.disjoint.1.to_string()],
            path1: j.path1.iter().map(|i| i.to_string()).collect(),
            path2: j.path2.iter().map(|i| i.to_string()).collect(),
            axioms: j
                .axioms
                .iter()
                .map(|a| {
                    let mut s = String::new();
                    write_axiom(&mut s, a);
                    s
                })
                .collect(),
        })
        .collect();
    MetricsReport {
        mode: mode_name(outcome.mode).into(),
        style: style_name(outcome.style).into(),
        sources: outcome.sources.len(),
        entities: EntityKind::ALL.into_iter().map(|k| (k.name().to_string(), o.entities().count(k))).collect(),
        logical_axioms: logical,
        declarations: o.declaration_count(),
        annotation_assertions: o.annotation_assertion_count(),
        source_logical_axioms: outcome.source_logical_axioms(),
        bridged_cells: outcome.bridged_cells,
        bridged_questionable: outcome.bridges.iter().filter(|b| b.cell.relation == Relation::Questionable).count(),
        bridging_axioms: outcome.bridging_axioms(),
        merged_entities: outcome.merged.len(),
        expected_logical_axioms: expected,
        axiom_law: axiom_law.into(),
        unsat_count: unsat.len(),
        unsat_roots: unsat.roots.len(),
        unsat_sample: unsat.unsat.iter().take(UNSAT_SAMPLE).map(|i| i.to_string()).collect(),
        justifications,
        coherent: unsat.is_coherent(),
        consistent: verdict.consistent,
        inconsistency_reasons: verdict.reasons.iter().map(describe_reason).collect(),
        hierarchy_depth: hierarchy_depth(taxonomy),
        timings,
        skipped_cells: outcome
            .skipped_by_reason()
            .into_iter()
            .map(|(r, n)| (r.as_str().to_string(), n))
            .collect(),
        checker_scope: CHECKER_SCOPE.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

pub fn render(report: &MetricsReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Text => render_text(report),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_text(r: &MetricsReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "mode: {} ({}), {} source(s)", r.mode, r.style, r.sources);
    let _ = writeln!(s, "entities:");
    for (kind, n) in &r.entities {
        let _ = writeln!(s, "  {kind:<20} {n:>10}");
    }
    let _ = writeln!(s, "logical axioms:        {:>10}", r.logical_axioms);
    let _ = writeln!(s, "  from sources:        {:>10}", r.source_logical_axioms);
    let _ = writeln!(s, "  bridging:            {:>10}", r.bridging_axioms);
    let _ = writeln!(s, "  expected:            {:>10}  [{}]", r.expected_logical_axioms, r.axiom_law);
    let _ = writeln!(s, "declarations:          {:>10}", r.declarations);
    let _ = writeln!(s, "annotation assertions: {:>10}", r.annotation_assertions);
    let _ = writeln!(s, "bridged cells:         {:>10}", r.bridged_cells);
    if r.bridged_questionable > 0 {
        let _ = writeln!(s, "  of which `?`:        {:>10}", r.bridged_questionable);
    }
    if r.merged_entities > 0 {
        let _ = writeln!(s, "merged entities:       {:>10}", r.merged_entities);
    }
    for (reason, n) in &r.skipped_cells {
        let _ = writeln!(s, "skipped {reason}: {n}");
    }
    let _ = writeln!(s, "hierarchy depth: {}", r.hierarchy_depth);
    let _ = writeln!(s, "coherent: {}", yes_no(r.coherent));
    let _ = writeln!(s, "unsatisfiable classes: {} ({} root(s))", r.unsat_count, r.unsat_roots);
    for c in &r.unsat_sample {
        let _ = writeln!(s, "  {c}");
    }
    for j in &r.justifications {
        let _ = writeln!(s, "why {} is unsatisfiable:", j.class);
        for a in &j.axioms {
            let _ = writeln!(s, "    {a}");
        }
    }
    let _ = writeln!(s, "consistent: {}", yes_no(r.consistent));
    for reason in &r.inconsistency_reasons {
        let _ = writeln!(s, "  {reason}");
    }
    let t = &r.timings;
    let _ = writeln!(
        s,
        "time (s): parse {:.3}, integrate {:.3}, reason {:.3}, total {:.3}",
        t.parse_seconds, t.integrate_seconds, t.reason_seconds, t.total_seconds
    );
    let _ = writeln!(s, "checker scope: {}", r.checker_scope);
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alignment::Alignment;
    use crate::integrator::{aggregate, bridge, IntegrationPlan, PairAlignment, Topology};
    use crate::model::{Iri, Ontology, OutputConfig};
    use crate::parser::parse_ontology;
    use crate::reasoner::{classify, is_consistent, unsatisfiable_classes};

    fn iri(s: &str) -> Iri {
        Iri::new(s).unwrap()
    }

    fn chain(base: &str, n: usize) -> Ontology {
        let body: String = (0..n).map(|i| format!("SubClassOf(:C{} :C{})\n", i + 1, i)).collect();
        let text = format!("Prefix(:=<{base}#>)\nOntology(<{base}>\n{body})");
        parse_ontology(&text).unwrap().0
    }

    fn metrics(outcome: &IntegrationOutcome) -> MetricsReport {
        let t = classify(&outcome.ontology);
        let u = unsatisfiable_classes(&outcome.ontology, &t);
        let v = is_consistent(&outcome.ontology, &t, &u);
        compute_metrics(outcome, &t, &u, &v, Timings::zero())
    }

    #[test]
    fn expected_count_adds_bridged_cells() {
        let sources = vec![chain("http://s.org/a", 10), chain("http://s.org/b", 12), chain("http://s.org/c", 8)];
        let cells = [(1, 2, 0), (1, 2, 3), (2, 3, 1), (2, 3, 5), (1, 3, 7)];
        let alignments: Vec<PairAlignment> = cells
            .iter()
            .map(|&(i, j, k)| {
                let name = |x: usize| ["a", "b", "c"][x - 1];
                let mut a = Alignment::new(sources[i - 1].iri().clone(), sources[j - 1].iri().clone());
                a.push(
                    iri(&format!("http://s.org/{}#C{k}", name(i))),
                    iri(&format!("http://s.org/{}#C{k}", name(j))),
                    Relation::Equivalent,
                    1.0,
                );
                PairAlignment::new((i, j), a)
            })
            .collect();
        let plan = IntegrationPlan::new(Mode::Bridge, Style::Refactor, Topology::NToN);
        let out = bridge(&sources, &alignments, &OutputConfig::new(iri("http://out")), &plan).unwrap();
        let r = metrics(&out);
        assert_eq!(r.source_logical_axioms, 30);
        assert_eq!(r.bridged_cells, 5);
        assert_eq!(r.expected_logical_axioms, 35);
        assert_eq!(r.logical_axioms, 35);
        assert_eq!(r.axiom_law, "PASS");
    }

    #[test]
    fn aggregate_expects_only_source_axioms() {
        let sources = vec![chain("http://s.org/a", 3), chain("http://s.org/b", 4)];
        let out = aggregate(&sources, &OutputConfig::new(iri("http://out")), Style::Reference).unwrap();
        let r = metrics(&out);
        assert_eq!((r.expected_logical_axioms, r.bridged_cells, r.axiom_law.as_str()), (7, 0, "PASS"));
        assert_eq!(r.hierarchy_depth, 5);
    }

    #[test]
    fn json_round_trip_and_text_flags() {
        let out = aggregate(&[chain("http://s.org/a", 0)], &OutputConfig::new(iri("http://out")), Style::Refactor)
            .unwrap();
        let mut r = metrics(&out);
        r.timings = Timings::from_durations(
            Duration::from_micros(1_234_567),
            Duration::from_micros(2_000_400),
            Duration::from_millis(7),
            Duration::from_millis(3_000),
        );
        assert_eq!(r.timings.total_seconds, 3.242);
        let json = render(&r, ReportFormat::Json);
        let back: MetricsReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["hierarchy_depth"], serde_json::json!(0));
        assert!(render(&r, ReportFormat::Text).contains("coherent: yes"));
    }
}
