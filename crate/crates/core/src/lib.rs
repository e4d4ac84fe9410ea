//! Ontology integration driven by pre-computed alignments.
//!
//! Ontologies are read from a subset of OWL 2 functional-style syntax and
//! alignments from the RDF/XML Alignment format. [`integrator`] combines
//! several ontologies by plain aggregation, by adding one equivalence axiom
//! per correspondence (the bridge), or by fusing two ontologies entity by
//! entity. [`reasoner`] is a structural coherence checker over named
//! classes, [`repair`] drops correspondences that make a bridge incoherent
//! and [`report`] summarizes a run.
//!
//! ```
//! use ontobridge::{bridge, parse_ontology, Alignment, Iri, IntegrationPlan, Mode, OutputConfig,
//!                  PairAlignment, Relation, Style, Topology};
//!
//! let (a, _) = parse_ontology("Prefix(:=<http://a.org/o#>) Ontology(<http://a.org/o> SubClassOf(:Paper :Doc))").unwrap();
//! let (b, _) = parse_ontology("Prefix(:=<http://b.org/o#>) Ontology(<http://b.org/o> Declaration(Class(:Article)))").unwrap();
//! let mut m = Alignment::new(a.iri().clone(), b.iri().clone());
//! m.push(Iri::new("http://a.org/o#Paper").unwrap(), Iri::new("http://b.org/o#Article").unwrap(), Relation::Equivalent, 0.9);
//!
//! let plan = IntegrationPlan::new(Mode::Bridge, Style::Refactor, Topology::TwoToTwo);
//! let cfg = OutputConfig::new(Iri::new("http://example.org/integrated").unwrap());
//! let out = bridge(&[a, b], &[PairAlignment::new((1, 2), m)], &cfg, &plan).unwrap();
//! assert_eq!(out.ontology.logical_axiom_count(), 2);
//! ```

pub mod alignment;
pub mod integrator;
pub mod model;
pub mod parser;
pub mod reasoner;
pub mod repair;
pub mod report;
pub mod synth;

pub use alignment::{
    parse_alignment, serialize_alignment, threshold_filter, to_one_to_one, Alignment, AlignmentError, Cell, Relation,
};
pub use integrator::{
    aggregate, bridge, full_merge, integrate, plan_alignment_pairs, BridgeKind, IntegrationError, IntegrationOutcome,
    IntegrationPlan, Mode, PairAlignment, SkipReason, Style, Topology,
};
pub use model::{
    merged_iri, refactor_iri, Axiom, EntityKind, Iri, Literal, ModelError, NaryKind, Ontology, OutputConfig,
};
pub use parser::{parse_ontology, serialize_ontology, ParseDiagnostics, ParseError};
pub use reasoner::{
    classify, hierarchy_depth, is_consistent, justify_unsat, unsatisfiable_classes, ConsistencyVerdict,
    Justification, Taxonomy, UnsatReport,
};
pub use repair::{repair_alignments, repair_pair, RepairOutcome};
pub use report::{compute_metrics, render, MetricsReport, ReportFormat, Timings};
