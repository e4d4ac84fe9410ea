mod common;

use std::collections::BTreeSet;

use common::{fixture, iri};
use ontobridge::synth::{coherent_ontology, noisy_alignment, rng};
use ontobridge::{
    bridge, classify, parse_alignment, parse_ontology, repair_alignments, repair_pair, unsatisfiable_classes,
    Alignment, IntegrationPlan, Mode, Ontology, OutputConfig, PairAlignment, Style, Topology,
};
use proptest::prelude::*;

fn cfg() -> OutputConfig {
    OutputConfig::new(iri("http://example.org/integrated"))
}

fn bridged_unsat(o1: &Ontology, o2: &Ontology, a: &Alignment, style: Style) -> BTreeSet<ontobridge::Iri> {
    let plan = IntegrationPlan::new(Mode::Bridge, style, Topology::TwoToTwo);
    let out = bridge(&[o1.clone(), o2.clone()], &[PairAlignment::new((1, 2), a.clone())], &cfg(), &plan).unwrap();
    let t = classify(&out.ontology);
    unsatisfiable_classes(&out.ontology, &t).unsat
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn repair_of_coherent_pair_reaches_zero(seed in any::<u64>(), n1 in 5usize..40, n2 in 5usize..40, noise in 0usize..15) {
        let mut r = rng(seed);
        let o1 = coherent_ontology(&mut r, "http://p.org/a", n1, n1 / 2);
        let o2 = coherent_ontology(&mut r, "http://p.org/b", n2, n2 / 2);
        let a = noisy_alignment(&mut r, "http://p.org/a", n1, "http://p.org/b", n2, n1.min(n2) / 2, noise);
        for style in [Style::Refactor, Style::Reference] {
            let out = repair_pair(&o1, &o2, &a, &cfg(), style).unwrap();
            prop_assert!(out.residual_unsat.is_empty());
            prop_assert!(bridged_unsat(&o1, &o2, &out.kept, style).is_empty());

            // kept and removed partition the input
            let mut orders: Vec<usize> = out.kept.cells.iter().map(|c| c.doc_order).collect();
            orders.extend(out.removed.iter().map(|r| r.cell.doc_order));
            orders.sort_unstable();
            prop_assert_eq!(orders, (0..a.len()).collect::<Vec<_>>());
            prop_assert!(out.iterations <= a.len() + 1);

            for (k, step) in out.removed.iter().enumerate() {
                prop_assert_eq!(step.iteration, k + 1);
                // the removed cell was implicated and is the weakest of them
                prop_assert!(step.implicated.contains(&step.cell));
                for c in &step.implicated {
                    prop_assert!(step.cell.measure <= c.measure);
                }
            }
        }
    }
}

#[test]
fn three_class_fixture_drops_weaker_cell() {
    let (o1, _) = parse_ontology(&fixture("bridge_o1.ofn")).unwrap();
    let (o2, _) = parse_ontology(&fixture("bridge_o2.ofn")).unwrap();
    let a = parse_alignment(&fixture("bridge_o2-o1.rdf")).unwrap();
    assert!(!bridged_unsat(&o2, &o1, &a, Style::Refactor).is_empty());

    let out = repair_pair(&o2, &o1, &a, &cfg(), Style::Refactor).unwrap();
    assert_eq!(out.removed.len(), 1);
    assert_eq!(out.removed[0].cell.entity2.as_str(), "http://example.org/o1#A2");
    assert_eq!(out.kept.cells.len(), 1);
    assert_eq!(out.kept.cells[0].entity2.as_str(), "http://example.org/o1#A1");
    assert!(bridged_unsat(&o2, &o1, &out.kept, Style::Refactor).is_empty());
}

#[test]
fn source_fault_is_residual() {
    let text = "Prefix(:=<http://p.org/s#>) Ontology(<http://p.org/s> SubClassOf(:A :D1) SubClassOf(:A :D2) DisjointClasses(:D1 :D2))";
    let (o1, _) = parse_ontology(text).unwrap();
    let o2 = Ontology::new(iri("http://p.org/t"));
    let empty = Alignment::new(o1.iri().clone(), o2.iri().clone());
    let out = repair_pair(&o1, &o2, &empty, &cfg(), Style::Reference).unwrap();
    assert!(out.removed.is_empty());
    assert_eq!(out.residual_unsat, BTreeSet::from([iri("http://p.org/s#A")]));
}

#[test]
fn pairs_are_repaired_independently() {
    let mut r = rng(5);
    let bases = ["http://p.org/a", "http://p.org/b", "http://p.org/c"];
    let sources: Vec<Ontology> = bases.iter().map(|b| coherent_ontology(&mut r, b, 30, 15)).collect();
    let alignments: Vec<PairAlignment> = [(1, 2), (1, 3), (2, 3)]
        .iter()
        .map(|&(i, j)| PairAlignment::new((i, j), noisy_alignment(&mut r, bases[i - 1], 30, bases[j - 1], 30, 10, 10)))
        .collect();
    let plan = IntegrationPlan::new(Mode::Bridge, Style::Refactor, Topology::NToN);
    let repaired = repair_alignments(&sources, &alignments, &cfg(), &plan).unwrap();
    assert_eq!(repaired.len(), 3);
    for (rep, pa) in repaired.iter().zip(&alignments) {
        let (i, j) = pa.pair;
        assert!(bridged_unsat(&sources[i - 1], &sources[j - 1], &rep.outcome.kept, Style::Refactor).is_empty());
    }
}
