//! Integration of several ontologies into one output ontology.
//!
//! * aggregate: copy every source axiom, no cross-source links;
//! * bridge: aggregate plus one equivalence axiom per kept correspondence;
//! * full merge: fuse each corresponding pair of two ontologies into a
//!   single entity and rewrite every reference to it.
//!
//! In the refactor style each source entity moves to
//! `<base>/<NNN>#<local name>`, where `NNN` is the source position; in the
//! reference style original IRIs are kept.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::alignment::{threshold_filter, to_one_to_one, Alignment, AlignmentError, Cell};
use crate::model::{
    local_name, merged_iri, refactor_iri, Axiom, EntityKind, Iri, ModelError, NaryKind, Ontology, OutputConfig,
};
use crate::repair;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntegrationError {
    #[error("need at least {needed} ontologies, got {got}")]
    TooFewOntologies { needed: usize, got: usize },
    #[error("refactoring supports at most 999 ontologies, got {0}")]
    TooManyOntologies(usize),
    #[error("pivot {pivot} outside 1..={n}")]
    PivotOutOfRange { pivot: usize, n: usize },
    #[error("full merge takes exactly 2 ontologies, got {0}")]
    FullMergeArity(usize),
    #[error("{0} is matched more than once after 1-to-1 filtering")]
    NotOneToOne(Iri),
    #[error(transparent)]
    Alignment(#[from] AlignmentError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

pub type Result<T, E = IntegrationError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Aggregate,
    Bridge,
    FullMerge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Style {
    Refactor,
    Reference,
}

/// Which ontology pairs contribute alignments. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Topology {
    /// Consecutive pairs (1,2), (2,3), ...
    TwoToTwo,
    /// The pivot against every other ontology.
    OneToN { pivot: usize },
    /// Every unordered pair.
    NToN,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationPlan {
    pub mode: Mode,
    pub style: Style,
    pub topology: Topology,
    pub threshold: f64,
    pub one_to_one: bool,
    pub repair: bool,
}

impl IntegrationPlan {
    pub fn new(mode: Mode, style: Style, topology: Topology) -> Self {
        IntegrationPlan { mode, style, topology, threshold: 0.0, one_to_one: false, repair: false }
    }

    pub fn with_threshold(mut self, threshold: f64) -> Self {
        self.threshold = threshold;
        self
    }

    pub fn with_one_to_one(mut self, on: bool) -> Self {
        self.one_to_one = on;
        self
    }

    pub fn with_repair(mut self, on: bool) -> Self {
        self.repair = on;
        self
    }
}

/// An alignment together with the (1-based) ontologies it relates:
/// `entity1` is looked up in `pair.0`, `entity2` in `pair.1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairAlignment {
    pub pair: (usize, usize),
    pub alignment: Alignment,
}

impl PairAlignment {
    pub fn new(pair: (usize, usize), alignment: Alignment) -> Self {
        PairAlignment { pair, alignment }
    }

    fn key(&self) -> (usize, usize) {
        let (i, j) = self.pair;
        (i.min(j), i.max(j))
    }
}

/// Entity kinds that can be bridged, one lookup table each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BridgeKind {
    Class,
    ObjectProperty,
    DataProperty,
    Individual,
}

impl BridgeKind {
    const ORDER: [BridgeKind; 4] =
        [BridgeKind::Class, BridgeKind::ObjectProperty, BridgeKind::DataProperty, BridgeKind::Individual];

    pub fn of(kind: EntityKind) -> Option<Self> {
        match kind {
            EntityKind::Class => Some(BridgeKind::Class),
            EntityKind::ObjectProperty => Some(BridgeKind::ObjectProperty),
            EntityKind::DataProperty => Some(BridgeKind::DataProperty),
            EntityKind::NamedIndividual | EntityKind::AnonymousIndividual => Some(BridgeKind::Individual),
            EntityKind::AnnotationProperty | EntityKind::Datatype => None,
        }
    }

    fn equivalence(self) -> NaryKind {
        match self {
            BridgeKind::Class => NaryKind::EquivalentClasses,
            BridgeKind::ObjectProperty => NaryKind::EquivalentObjectProperties,
            BridgeKind::DataProperty => NaryKind::EquivalentDataProperties,
            BridgeKind::Individual => NaryKind::SameIndividual,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TypeEntry {
    pub ont_index: usize,
    pub kind: EntityKind,
}

/// Original IRI to (source position, kind), one table per bridgeable kind.
/// An IRI used under several kinds appears in several tables; the first
/// source that mentions it wins.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EntityTypeMap {
    pub classes: HashMap<Iri, TypeEntry>,
    pub object_properties: HashMap<Iri, TypeEntry>,
    pub data_properties: HashMap<Iri, TypeEntry>,
    pub individuals: HashMap<Iri, TypeEntry>,
}

impl EntityTypeMap {
    pub fn table(&self, kind: BridgeKind) -> &HashMap<Iri, TypeEntry> {
        match kind {
            BridgeKind::Class => &self.classes,
            BridgeKind::ObjectProperty => &self.object_properties,
            BridgeKind::DataProperty => &self.data_properties,
            BridgeKind::Individual => &self.individuals,
        }
    }

    fn table_mut(&mut self, kind: BridgeKind) -> &mut HashMap<Iri, TypeEntry> {
        match kind {
            BridgeKind::Class => &mut self.classes,
            BridgeKind::ObjectProperty => &mut self.object_properties,
            BridgeKind::DataProperty => &mut self.data_properties,
            BridgeKind::Individual => &mut self.individuals,
        }
    }

    fn record(&mut self, kind: EntityKind, iri: &Iri, ont_index: usize) {
        if let Some(bk) = BridgeKind::of(kind) {
            self.table_mut(bk).entry(iri.clone()).or_insert(TypeEntry { ont_index, kind });
        }
    }

    /// Every table holding `iri`.
    pub fn lookup(&self, iri: &Iri) -> Vec<(BridgeKind, TypeEntry)> {
        BridgeKind::ORDER
            .into_iter()
            .filter_map(|k| self.table(k).get(iri).map(|e| (k, *e)))
            .collect()
    }

    pub fn len(&self) -> usize {
        BridgeKind::ORDER.iter().map(|k| self.table(*k).len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SkipReason {
    /// An endpoint is in none of the entity tables.
    NotFound,
    /// Both endpoints resolve but share no kind.
    KindMismatch,
    /// Annotation properties and datatypes are never bridged.
    UnsupportedKind,
    /// `<`, `>` and `%` correspondences.
    UnsupportedRelation,
    /// Both endpoints name the same output entity.
    SameEntity,
    /// The bridging axiom is already in the output.
    DuplicateAxiom,
    /// The alignment's pair is not part of the topology.
    PairNotInTopology,
}

impl SkipReason {
    pub fn as_str(self) -> &'static str {
        match self {
            SkipReason::NotFound => "NotFound",
            SkipReason::KindMismatch => "KindMismatch",
            SkipReason::UnsupportedKind => "UnsupportedKind",
            SkipReason::UnsupportedRelation => "UnsupportedRelation",
            SkipReason::SameEntity => "SameEntity",
            SkipReason::DuplicateAxiom => "DuplicateAxiom",
            SkipReason::PairNotInTopology => "PairNotInTopology",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SkippedCell {
    pub pair: (usize, usize),
    pub cell: Cell,
    pub reason: SkipReason,
}

/// A bridging axiom and the correspondence it translates.
#[derive(Debug, Clone, PartialEq)]
pub struct BridgeLink {
    pub pair: (usize, usize),
    pub cell: Cell,
    pub axiom: Axiom,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MergedEntity {
    pub iri: Iri,
    pub first: Iri,
    pub second: Iri,
    pub kinds: Vec<BridgeKind>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceTally {
    pub index: usize,
    pub iri: Iri,
    pub logical_axioms: usize,
    pub declarations: usize,
    pub annotation_assertions: usize,
    pub entities: BTreeMap<EntityKind, usize>,
}

impl SourceTally {
    fn of(index: usize, o: &Ontology) -> Self {
        SourceTally {
            index,
            iri: o.iri().clone(),
            logical_axioms: o.logical_axiom_count(),
            declarations: o.declaration_count(),
            annotation_assertions: o.annotation_assertion_count(),
            entities: EntityKind::ALL.into_iter().map(|k| (k, o.entities().count(k))).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct IntegrationOutcome {
    pub mode: Mode,
    pub style: Style,
    pub ontology: Ontology,
    pub type_map: EntityTypeMap,
    /// Correspondences turned into a bridging axiom or a merged entity.
    pub bridged_cells: usize,
    pub bridges: Vec<BridgeLink>,
    pub merged: Vec<MergedEntity>,
    pub skipped_cells: Vec<SkippedCell>,
    pub sources: Vec<SourceTally>,
    /// Full merge only: source axioms that became trivial after fusion.
    pub collapsed_axioms: usize,
}

impl IntegrationOutcome {
    pub fn source_logical_axioms(&self) -> usize {
        self.sources.iter().map(|s| s.logical_axioms).sum()
    }

    pub fn bridging_axioms(&self) -> usize {
        self.bridges.len()
    }

    /// Logical axioms the output should hold when source axiom sets are
    /// pairwise disjoint: every source axiom plus one per bridging axiom.
    pub fn expected_logical_axioms(&self) -> usize {
        self.source_logical_axioms() + self.bridging_axioms()
    }

    pub fn skipped_by_reason(&self) -> BTreeMap<SkipReason, usize> {
        let mut tally = BTreeMap::new();
        for s in &self.skipped_cells {
            *tally.entry(s.reason).or_default() += 1;
        }
        tally
    }

    /// The bridging axiom emitted for each cell, keyed by axiom.
    pub fn bridge_for_axiom(&self, axiom: &Axiom) -> Option<&BridgeLink> {
        self.bridges.iter().find(|b| &b.axiom == axiom)
    }
}

/// Ontology pairs that exchange alignments under a topology.
pub fn plan_alignment_pairs(n: usize, topology: Topology) -> Result<Vec<(usize, usize)>> {
    if n < 2 {
        return Err(IntegrationError::TooFewOntologies { needed: 2, got: n });
    }
    Ok(match topology {
        Topology::TwoToTwo => (1..n).map(|i| (i, i + 1)).collect(),
        Topology::OneToN { pivot } => {
            if !(1..=n).contains(&pivot) {
                return Err(IntegrationError::PivotOutOfRange { pivot, n });
            }
            (1..=n).filter(|&j| j != pivot).map(|j| (pivot, j)).collect()
        }
        Topology::NToN => (1..n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect(),
    })
}

// ---------------------------------------------------------------------------

/// Output IRI of every entity of one source.
fn rename_map(
    src: &Ontology,
    index: usize,
    cfg: &OutputConfig,
    style: Style,
    overlay: Option<&HashMap<Iri, Iri>>,
) -> Result<HashMap<Iri, Iri>> {
    let mut renames = HashMap::new();
    for (_, iri) in src.entities().iter() {
        if renames.contains_key(iri) {
            continue;
        }
        let target = if let Some(m) = overlay.and_then(|o| o.get(iri)) {
            m.clone()
        } else if let Some(id) = iri.anonymous_id() {
            Iri::new(format!("_:o{index}_{id}"))?
        } else {
            match style {
                Style::Refactor => refactor_iri(iri, cfg, index)?,
                Style::Reference => continue,
            }
        };
        renames.insert(iri.clone(), target);
    }
    Ok(renames)
}

struct RewrittenSource {
    axioms: Vec<Axiom>,
    entities: Vec<(EntityKind, Iri)>,
    collapsed: usize,
    renames: HashMap<Iri, Iri>,
}

fn rewrite_source(
    src: &Ontology,
    index: usize,
    cfg: &OutputConfig,
    style: Style,
    overlay: Option<&HashMap<Iri, Iri>>,
) -> Result<RewrittenSource> {
    let renames = rename_map(src, index, cfg, style, overlay)?;
    let rename = |iri: &Iri| renames.get(iri).cloned().unwrap_or_else(|| iri.clone());
    let mut axioms = Vec::with_capacity(src.axiom_count());
    let mut collapsed = 0;
    for axiom in src.axioms() {
        match axiom.map_iris(|iri, _| rename(iri)) {
            Some(a) => axioms.push(a),
            None => collapsed += 1,
        }
    }
    let entities = src.entities().iter().map(|(k, i)| (k, rename(i))).collect();
    Ok(RewrittenSource { axioms, entities, collapsed, renames })
}

/// Sources copied into one ontology, plus what bridging needs to resolve
/// correspondences against them.
struct Assembly<'a> {
    sources: &'a [Ontology],
    renames: Vec<HashMap<Iri, Iri>>,
    outcome: IntegrationOutcome,
}

fn assemble<'a>(
    sources: &'a [Ontology],
    cfg: &OutputConfig,
    mode: Mode,
    style: Style,
    overlays: Option<&[HashMap<Iri, Iri>]>,
) -> Result<Assembly<'a>> {
    if sources.is_empty() {
        return Err(IntegrationError::TooFewOntologies { needed: 1, got: 0 });
    }
    if style == Style::Refactor && sources.len() > OutputConfig::MAX_SOURCES {
        return Err(IntegrationError::TooManyOntologies(sources.len()));
    }
    let rewritten: Vec<RewrittenSource> = sources
        .par_iter()
        .enumerate()
        .map(|(k, o)| rewrite_source(o, k + 1, cfg, style, overlays.map(|ov| &ov[k])))
        .collect::<Result<_>>()?;

    let mut ontology = Ontology::new(cfg.base_iri.clone());
    let mut type_map = EntityTypeMap::default();
    let mut collapsed_axioms = 0;
    let mut renames = Vec::with_capacity(sources.len());
    for (k, (src, rw)) in sources.iter().zip(rewritten).enumerate() {
        for axiom in rw.axioms {
            ontology.add_axiom(axiom);
        }
        for (kind, iri) in rw.entities {
            ontology.register_entity(kind, iri);
        }
        for (kind, iri) in src.entities().iter() {
            type_map.record(kind, iri, k + 1);
        }
        collapsed_axioms += rw.collapsed;
        renames.push(rw.renames);
    }
    let outcome = IntegrationOutcome {
        mode,
        style,
        ontology,
        type_map,
        bridged_cells: 0,
        bridges: Vec::new(),
        merged: Vec::new(),
        skipped_cells: Vec::new(),
        sources: sources.iter().enumerate().map(|(k, o)| SourceTally::of(k + 1, o)).collect(),
        collapsed_axioms,
    };
    Ok(Assembly { sources, renames, outcome })
}

impl Assembly<'_> {
    fn bridge_kinds(&self, index: usize, iri: &Iri) -> Vec<BridgeKind> {
        let mut kinds: Vec<BridgeKind> = self.sources[index - 1]
            .entities()
            .kinds_of(iri)
            .into_iter()
            .filter_map(BridgeKind::of)
            .collect();
        kinds.dedup();
        kinds
    }

    /// Finds the source an endpoint belongs to: the alignment's side first,
    /// then the type tables.
    fn resolve(&self, iri: &Iri, hint: usize) -> Result<(usize, Vec<BridgeKind>), SkipReason> {
        if (1..=self.sources.len()).contains(&hint) {
            let kinds = self.bridge_kinds(hint, iri);
            if !kinds.is_empty() {
                return Ok((hint, kinds));
            }
        }
        if let Some((_, entry)) = self.outcome.type_map.lookup(iri).first() {
            return Ok((entry.ont_index, self.bridge_kinds(entry.ont_index, iri)));
        }
        let unsupported = self.sources.iter().any(|s| {
            s.entities().contains(EntityKind::AnnotationProperty, iri)
                || s.entities().contains(EntityKind::Datatype, iri)
        });
        Err(if unsupported { SkipReason::UnsupportedKind } else { SkipReason::NotFound })
    }

    fn output_iri(&self, index: usize, iri: &Iri) -> Iri {
        self.renames[index - 1].get(iri).cloned().unwrap_or_else(|| iri.clone())
    }

    fn bridge_cell(&self, pair: (usize, usize), cell: &Cell) -> Result<Axiom, SkipReason> {
        if !cell.relation.is_equivalence() {
            return Err(SkipReason::UnsupportedRelation);
        }
        let (i, kinds1) = self.resolve(&cell.entity1, pair.0)?;
        let (j, kinds2) = self.resolve(&cell.entity2, pair.1)?;
        let kind = kinds1
            .iter()
            .find(|k| kinds2.contains(k))
            .copied()
            .ok_or(SkipReason::KindMismatch)?;
        let (a, b) = (self.output_iri(i, &cell.entity1), self.output_iri(j, &cell.entity2));
        Axiom::nary(kind.equivalence(), [a, b]).map_err(|_| SkipReason::SameEntity)
    }

    fn skip(&mut self, pair: (usize, usize), cell: &Cell, reason: SkipReason) {
        self.outcome.skipped_cells.push(SkippedCell { pair, cell: cell.clone(), reason });
    }
}

/// Copies every source axiom into one ontology without linking sources.
pub fn aggregate(ontologies: &[Ontology], cfg: &OutputConfig, style: Style) -> Result<IntegrationOutcome> {
    Ok(assemble(ontologies, cfg, Mode::Aggregate, style, None)?.outcome)
}

/// Aggregate plus one equivalence axiom per kept `=`/`?` correspondence.
///
/// Alignments whose pair is outside the plan's topology contribute nothing;
/// the plan's threshold and 1-to-1 settings are applied here. Cells that
/// cannot be bridged are listed in `skipped_cells` with a reason.
pub fn bridge(
    ontologies: &[Ontology],
    alignments: &[PairAlignment],
    cfg: &OutputConfig,
    plan: &IntegrationPlan,
) -> Result<IntegrationOutcome> {
    let mut asm = assemble(ontologies, cfg, Mode::Bridge, plan.style, None)?;
    let allowed: HashSet<(usize, usize)> = if ontologies.len() >= 2 {
        plan_alignment_pairs(ontologies.len(), plan.topology)?.into_iter().collect()
    } else {
        HashSet::new()
    };
    for pa in alignments {
        let mut kept = threshold_filter(&pa.alignment, plan.threshold)?;
        if plan.one_to_one {
            kept = to_one_to_one(&kept);
        }
        let in_topology = allowed.contains(&pa.key());
        for cell in &kept.cells {
            if !in_topology {
                asm.skip(pa.pair, cell, SkipReason::PairNotInTopology);
                continue;
            }
            match asm.bridge_cell(pa.pair, cell) {
                Ok(axiom) => {
                    if asm.outcome.ontology.add_axiom(axiom.clone()) {
                        asm.outcome.bridged_cells += 1;
                        asm.outcome.bridges.push(BridgeLink { pair: pa.pair, cell: cell.clone(), axiom });
                    } else {
                        asm.skip(pa.pair, cell, SkipReason::DuplicateAxiom);
                    }
                }
                Err(reason) => asm.skip(pa.pair, cell, reason),
            }
        }
    }
    Ok(asm.outcome)
}

/// Fuses each corresponding pair of `first` and `second` into one entity
/// named `<base>/000#<name1>=<name2>`; everything else is refactored as in
/// [`aggregate`]. The alignment is reduced to 1-to-1 first.
pub fn full_merge(first: &Ontology, second: &Ontology, a: &Alignment, cfg: &OutputConfig) -> Result<IntegrationOutcome> {
    let sources = [first.clone(), second.clone()];
    // resolution only needs the plain refactored assembly
    let probe = assemble(&sources, cfg, Mode::FullMerge, Style::Refactor, None)?;
    let mapping = to_one_to_one(a);

    let mut overlays: [HashMap<Iri, Iri>; 2] = [HashMap::new(), HashMap::new()];
    let mut merged = Vec::new();
    let mut skipped = Vec::new();
    for cell in &mapping.cells {
        let reject = |reason| SkippedCell { pair: (1, 2), cell: cell.clone(), reason };
        if !cell.relation.is_equivalence() {
            skipped.push(reject(SkipReason::UnsupportedRelation));
            continue;
        }
        // accept alignments written in either direction
        let forward = (probe.bridge_kinds(1, &cell.entity1), probe.bridge_kinds(2, &cell.entity2));
        let (e1, e2, (k1, k2)) = if !forward.0.is_empty() && !forward.1.is_empty() {
            (&cell.entity1, &cell.entity2, forward)
        } else {
            let backward = (probe.bridge_kinds(1, &cell.entity2), probe.bridge_kinds(2, &cell.entity1));
            if !backward.0.is_empty() && !backward.1.is_empty() {
                (&cell.entity2, &cell.entity1, backward)
            } else {
                let reason = match (probe.resolve(&cell.entity1, 1), probe.resolve(&cell.entity2, 2)) {
                    (Err(r), _) | (_, Err(r)) => r,
                    _ => SkipReason::NotFound,
                };
                skipped.push(reject(reason));
                continue;
            }
        };
        let kinds: Vec<BridgeKind> = k1.iter().filter(|k| k2.contains(k)).copied().collect();
        if kinds.is_empty() {
            skipped.push(reject(SkipReason::KindMismatch));
            continue;
        }
        for (side, e) in [(0, e1), (1, e2)] {
            if overlays[side].contains_key(e) {
                return Err(IntegrationError::NotOneToOne(e.clone()));
            }
        }
        let iri = merged_iri(local_name(e1)?, local_name(e2)?, cfg)?;
        overlays[0].insert(e1.clone(), iri.clone());
        overlays[1].insert(e2.clone(), iri.clone());
        merged.push((MergedEntity { iri, first: e1.clone(), second: e2.clone(), kinds }, cell.clone()));
    }

    let asm = assemble(&sources, cfg, Mode::FullMerge, Style::Refactor, Some(&overlays))?;
    let mut outcome = asm.outcome;
    outcome.bridged_cells = merged.len();
    outcome.merged = merged.into_iter().map(|(m, _)| m).collect();
    outcome.skipped_cells = skipped;
    Ok(outcome)
}

/// Runs the plan: optional repair of each pair's alignment, then the
/// selected integration mode.
pub fn integrate(
    ontologies: &[Ontology],
    alignments: &[PairAlignment],
    cfg: &OutputConfig,
    plan: &IntegrationPlan,
) -> Result<IntegrationOutcome> {
    let repaired;
    let alignments = if plan.repair && plan.mode != Mode::Aggregate {
        repaired = repair::repair_alignments(ontologies, alignments, cfg, plan)?
            .into_iter()
            .map(|r| PairAlignment::new(r.pair, r.outcome.kept))
            .collect::<Vec<_>>();
        repaired.as_slice()
    } else {
        alignments
    };
    match plan.mode {
        Mode::Aggregate => aggregate(ontologies, cfg, plan.style),
        Mode::Bridge => bridge(ontologies, alignments, cfg, plan),
        Mode::FullMerge => {
            if ontologies.len() != 2 {
                return Err(IntegrationError::FullMergeArity(ontologies.len()));
            }
            let mut combined = Alignment::new(ontologies[0].iri().clone(), ontologies[1].iri().clone());
            for pa in alignments {
                let kept = threshold_filter(&pa.alignment, plan.threshold)?;
                for c in kept.cells {
                    let (e1, e2) = if pa.pair.0 <= pa.pair.1 { (c.entity1, c.entity2) } else { (c.entity2, c.entity1) };
                    combined.push(e1, e2, c.relation, c.measure);
                }
            }
            full_merge(&ontologies[0], &ontologies[1], &combined, cfg)
        }
    }
}
