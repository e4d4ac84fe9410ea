mod common;

use std::collections::BTreeSet;

use common::{fixture, iri};
use ontobridge::synth::{coherent_ontology, noisy_alignment, rng};
use ontobridge::{
    bridge, classify, compute_metrics, is_consistent, parse_alignment, parse_ontology, render, unsatisfiable_classes,
    Axiom, EntityKind, IntegrationPlan, MetricsReport, Mode, Ontology, OutputConfig, PairAlignment, ReportFormat,
    Style, Timings, Topology,
};
use proptest::prelude::*;

fn report_for(sources: &[Ontology], alignments: &[PairAlignment], plan: &IntegrationPlan) -> (MetricsReport, Ontology) {
    let out = bridge(sources, alignments, &OutputConfig::new(iri("http://example.org/integrated")), plan).unwrap();
    let t = classify(&out.ontology);
    let u = unsatisfiable_classes(&out.ontology, &t);
    let v = is_consistent(&out.ontology, &t, &u);
    (compute_metrics(&out, &t, &u, &v, Timings::zero()), out.ontology)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn counts_match_a_recount(seed in any::<u64>()) {
        let mut r = rng(seed);
        let bases = ["http://q.org/a", "http://q.org/b"];
        let sources: Vec<Ontology> = bases.iter().map(|b| coherent_ontology(&mut r, b, 25, 10)).collect();
        let a = noisy_alignment(&mut r, bases[0], 25, bases[1], 25, 8, 8);
        let plan = IntegrationPlan::new(Mode::Bridge, Style::Refactor, Topology::TwoToTwo);
        let (report, o) = report_for(&sources, &[PairAlignment::new((1, 2), a)], &plan);

        let mut logical = 0;
        let mut declarations = 0;
        let mut annotations = 0;
        for ax in o.axioms() {
            match ax {
                Axiom::Declaration(..) => declarations += 1,
                Axiom::AnnotationAssertion { .. } => annotations += 1,
                _ => logical += 1,
            }
        }
        prop_assert_eq!(report.logical_axioms, logical);
        prop_assert_eq!(report.declarations, declarations);
        prop_assert_eq!(report.annotation_assertions, annotations);
        prop_assert_eq!(report.entities["Class"], o.entities().count(EntityKind::Class));
        prop_assert_eq!(report.axiom_law.as_str(), "PASS");
        prop_assert_eq!(report.coherent, report.unsat_count == 0);

        let back: MetricsReport = serde_json::from_str(&render(&report, ReportFormat::Json)).unwrap();
        prop_assert_eq!(back, report);
    }
}

#[test]
fn json_keys_are_stable() {
    let sources: Vec<Ontology> =
        ["cmt.ofn", "confOf.ofn"].iter().map(|f| parse_ontology(&fixture(f)).unwrap().0).collect();
    let a = parse_alignment(&fixture("cmt-confOf.rdf")).unwrap();
    let plan = IntegrationPlan::new(Mode::Bridge, Style::Refactor, Topology::TwoToTwo);
    let (report, _) = report_for(&sources, &[PairAlignment::new((1, 2), a)], &plan);
    let value: serde_json::Value = serde_json::from_str(&render(&report, ReportFormat::Json)).unwrap();
    let keys: BTreeSet<&str> = value.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert_eq!(
        keys,
        BTreeSet::from([
            "mode",
            "style",
            "sources",
            "entities",
            "logical_axioms",
            "declarations",
            "annotation_assertions",
            "source_logical_axioms",
            "bridged_cells",
            "bridged_questionable",
            "bridging_axioms",
            "merged_entities",
            "expected_logical_axioms",
            "axiom_law",
            "unsat_count",
            "unsat_roots",
            "unsat_sample",
            "justifications",
            "coherent",
            "consistent",
            "inconsistency_reasons",
            "hierarchy_depth",
            "timings",
            "skipped_cells",
            "checker_scope",
        ])
    );
    assert!(value["timings"]["total_seconds"].is_number());
    assert_eq!(value["bridged_cells"], serde_json::json!(5));
}
