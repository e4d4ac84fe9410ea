//! Shared inputs for the benchmarks.

use ontobridge::synth::{scale_suite, ScaleSpec};
use ontobridge::{
    bridge, classify, is_consistent, parse_alignment, parse_ontology, serialize_alignment, serialize_ontology,
    unsatisfiable_classes, Iri, IntegrationPlan, Mode, Ontology, OutputConfig, PairAlignment, Style, Topology,
};

pub const SEED: u64 = 2024;

/// The synthetic three-ontology suite scaled by `factor`, serialized.
pub struct SerializedSuite {
    pub ontologies: Vec<String>,
    pub alignments: Vec<((usize, usize), String)>,
}

pub fn serialized_suite(factor: f64) -> SerializedSuite {
    let suite = scale_suite(SEED, ScaleSpec::LARGE.scaled(factor));
    SerializedSuite {
        ontologies: suite.ontologies.iter().map(serialize_ontology).collect(),
        alignments: suite.alignments.iter().map(|pa| (pa.pair, serialize_alignment(&pa.alignment))).collect(),
    }
}

pub fn parse_suite(s: &SerializedSuite) -> (Vec<Ontology>, Vec<PairAlignment>) {
    let ontologies = s.ontologies.iter().map(|t| parse_ontology(t).expect("synthetic ontology").0).collect();
    let alignments = s
        .alignments
        .iter()
        .map(|(pair, x)| PairAlignment::new(*pair, parse_alignment(x).expect("synthetic alignment")))
        .collect();
    (ontologies, alignments)
}

pub fn output_config() -> OutputConfig {
    OutputConfig::new(Iri::new("http://example.org/integrated").expect("valid IRI"))
}

pub fn bridge_plan() -> IntegrationPlan {
    IntegrationPlan::new(Mode::Bridge, Style::Refactor, Topology::NToN)
}

/// Parse, bridge, reason and serialize; returns the unsatisfiable count.
pub fn full_pipeline(s: &SerializedSuite) -> usize {
    let (ontologies, alignments) = parse_suite(s);
    let out = bridge(&ontologies, &alignments, &output_config(), &bridge_plan()).expect("bridge");
    let t = classify(&out.ontology);
    let unsat = unsatisfiable_classes(&out.ontology, &t);
    let verdict = is_consistent(&out.ontology, &t, &unsat);
    let text = serialize_ontology(&out.ontology);
    std::hint::black_box((verdict, text));
    unsat.len()
}
