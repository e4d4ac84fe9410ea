//! Alignment repair: drop correspondences until bridging a pair of
//! ontologies no longer makes classes unsatisfiable.
//!
//! Each iteration bridges the pair, justifies every unsatisfiable root and
//! removes the single weakest cell behind a bridging axiom of those
//! justifications (lowest measure; ties drop the later cell, then the
//! smaller `entity1`). Repair stops when the bridge is coherent or no
//! justification involves a bridging axiom.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;

use crate::alignment::{threshold_filter, to_one_to_one, Alignment, Cell};
use crate::integrator::{bridge, IntegrationError, IntegrationPlan, Mode, PairAlignment, Style, Topology};
use crate::model::{Axiom, Iri, Ontology, OutputConfig};
use crate::reasoner::{classify, unsatisfiable_classes, Justifier};

#[derive(Debug, Clone, PartialEq)]
pub struct RemovedCell {
    pub cell: Cell,
    /// Unsatisfiable root whose justification led to the removal.
    pub root: Iri,
    /// Every cell behind a bridging axiom of that justification.
    pub implicated: Vec<Cell>,
    /// 1-based iteration.
    pub iteration: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepairOutcome {
    pub kept: Alignment,
    pub removed: Vec<RemovedCell>,
    pub iterations: usize,
    pub initial_unsat: usize,
    /// Classes still unsatisfiable in the repaired bridge, named as in a
    /// two-source bridge of the pair.
    pub residual_unsat: BTreeSet<Iri>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairRepair {
    pub pair: (usize, usize),
    pub outcome: RepairOutcome,
}

fn weaker(a: &Cell, b: &Cell) -> bool {
    a.measure
        .total_cmp(&b.measure)
        .then(b.doc_order.cmp(&a.doc_order))
        .then(a.entity1.cmp(&b.entity1))
        .is_lt()
}

/// Repairs the alignment between `first` (entity1 side) and `second`.
pub fn repair_pair(
    first: &Ontology,
    second: &Ontology,
    alignment: &Alignment,
    cfg: &OutputConfig,
    style: Style,
) -> Result<RepairOutcome, IntegrationError> {
    let sources = [first.clone(), second.clone()];
    let plan = IntegrationPlan::new(Mode::Bridge, style, Topology::TwoToTwo);
    let mut kept = alignment.clone();
    let mut removed = Vec::new();
    let mut initial_unsat = None;
    let mut iterations = 0;
    loop {
        iterations += 1;
        let outcome = bridge(&sources, &[PairAlignment::new((1, 2), kept.clone())], cfg, &plan)?;
        let taxonomy = classify(&outcome.ontology);
        let report = unsatisfiable_classes(&outcome.ontology, &taxonomy);
        initial_unsat.get_or_insert(report.len());
        if report.is_coherent() {
            return Ok(RepairOutcome { kept, removed, iterations, initial_unsat: initial_unsat.unwrap_or(0), residual_unsat: BTreeSet::new() });
        }

        let by_axiom: HashMap<&Axiom, &Cell> = outcome.bridges.iter().map(|b| (&b.axiom, &b.cell)).collect();
        let justifier = Justifier::new(&outcome.ontology, &taxonomy);
        let mut choice: Option<(Cell, &Iri, Vec<Cell>)> = None;
        for root in &report.roots {
            let Ok(j) = justifier.justify(root) else { continue };
            let implicated: Vec<Cell> = j.axioms.iter().filter_map(|a| by_axiom.get(a).map(|c| (*c).clone())).collect();
            let Some(weakest) = implicated.iter().reduce(|w, c| if weaker(c, w) { c } else { w }) else {
                continue;
            };
            if choice.as_ref().is_none_or(|(best, _, _)| weaker(weakest, best)) {
                choice = Some((weakest.clone(), root, implicated));
            }
        }
        let Some((victim, root, implicated)) = choice else {
            return Ok(RepairOutcome {
                kept,
                removed,
                iterations,
                initial_unsat: initial_unsat.unwrap_or(0),
                residual_unsat: report.unsat,
            });
        };
        kept.cells.retain(|c| c.doc_order != victim.doc_order);
        removed.push(RemovedCell { cell: victim, root: root.clone(), implicated, iteration: iterations });
    }
}
/// Repairs every alignment of the plan's topology independently, after the
/// plan's threshold and 1-to-1 filtering. Alignments outside the topology
/// come back unchanged.
pub fn repair_alignments(
    ontologies: &[Ontology],
    alignments: &[PairAlignment],
    cfg: &OutputConfig,
    plan: &IntegrationPlan,
) -> Result<Vec<PairRepair>, IntegrationError> {
    let n = ontologies.len();
    let allowed: HashSet<(usize, usize)> = match plan.mode {
        Mode::FullMerge => HashSet::from([(1, 2)]),
        _ if n >= 2 => crate::integrator::plan_alignment_pairs(n, plan.topology)?.into_iter().collect(),
        _ => HashSet::new(),
    };
    alignments
        .par_iter()
        .map(|pa| {
            let (i, j) = pa.pair;
            let mut a = threshold_filter(&pa.alignment, plan.threshold)?;
            if plan.one_to_one {
                a = to_one_to_one(&a);
            }
            let valid = i != j && (1..=n).contains(&i) && (1..=n).contains(&j);
            let outcome = if valid && allowed.contains(&(i.min(j), i.max(j))) {
                repair_pair(&ontologies[i - 1], &ontologies[j - 1], &a, cfg, plan.style)?
            } else {
                RepairOutcome { kept: a, removed: Vec::new(), iterations: 0, initial_unsat: 0, residual_unsat: BTreeSet::new() }
            };
            Ok(PairRepair { pair: pa.pair, outcome })
        })
        .collect()
}
