//! Core vocabulary: IRIs, entity kinds, axioms, ontologies, and the IRI
//! refactoring scheme used when several sources are placed under one
//! output namespace.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const OWL_NS: &str = "http://www.w3.org/2002/07/owl#";
pub const RDF_NS: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS_NS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const XSD_NS: &str = "http://www.w3.org/2001/XMLSchema#";
pub const XML_NS: &str = "http://www.w3.org/XML/1998/namespace";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("malformed IRI `{0}`")]
    MalformedIri(String),
    #[error("ontology index {0} outside 1..=999")]
    IndexOutOfRange(usize),
    #[error("{0} needs at least two distinct operands")]
    DegenerateAxiom(&'static str),
}

/// An absolute IRI or an anonymous node id (`_:x`).
///
/// Cloning is cheap; the string is shared.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Iri(Arc<str>);

impl Iri {
    pub fn new(value: impl AsRef<str>) -> Result<Self, ModelError> {
        let value = value.as_ref();
        let ok = if let Some(id) = value.strip_prefix("_:") {
            !id.is_empty()
        } else {
            value.contains("://")
        };
        if !ok || value.chars().any(char::is_whitespace) {
            return Err(ModelError::MalformedIri(value.to_string()));
        }
        Ok(Iri(Arc::from(value)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_anonymous(&self) -> bool {
        self.0.starts_with("_:")
    }

    /// Node id of an anonymous individual, without the `_:` marker.
    pub fn anonymous_id(&self) -> Option<&str> {
        self.0.strip_prefix("_:")
    }

    pub fn local_name(&self) -> Result<&str, ModelError> {
        local_name(self)
    }

    /// True for IRIs in the OWL, RDF, RDFS, XSD and XML namespaces.
    pub fn is_builtin(&self) -> bool {
        [OWL_NS, RDF_NS, RDFS_NS, XSD_NS, XML_NS]
            .iter()
            .any(|ns| self.0.starts_with(ns))
    }
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Iri {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Iri {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Iri::new(s).map_err(serde::de::Error::custom)
    }
}

/// Short name of a named entity: the part after the last `#`, or after the
/// last `/` when the IRI has no fragment.
pub fn local_name(iri: &Iri) -> Result<&str, ModelError> {
    let s = iri.as_str();
    if iri.is_anonymous() {
        return Err(ModelError::MalformedIri(s.to_string()));
    }
    let name = match s.rfind('#') {
        Some(pos) => &s[pos + 1..],
        None => {
            // never cut inside the scheme separator
            let authority = s.find("://").map(|p| p + 3).unwrap_or(0);
            match s[authority..].rfind('/') {
                Some(pos) => &s[authority + pos + 1..],
                None => "",
            }
        }
    };
    if name.is_empty() {
        Err(ModelError::MalformedIri(s.to_string()))
    } else {
        Ok(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EntityKind {
    Class,
    ObjectProperty,
    DataProperty,
    AnnotationProperty,
    NamedIndividual,
    AnonymousIndividual,
    Datatype,
}

impl EntityKind {
    pub const ALL: [EntityKind; 7] = [
        EntityKind::Class,
        EntityKind::ObjectProperty,
        EntityKind::DataProperty,
        EntityKind::AnnotationProperty,
        EntityKind::NamedIndividual,
        EntityKind::AnonymousIndividual,
        EntityKind::Datatype,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EntityKind::Class => "Class",
            EntityKind::ObjectProperty => "ObjectProperty",
            EntityKind::DataProperty => "DataProperty",
            EntityKind::AnnotationProperty => "AnnotationProperty",
            EntityKind::NamedIndividual => "NamedIndividual",
            EntityKind::AnonymousIndividual => "AnonymousIndividual",
            EntityKind::Datatype => "Datatype",
        }
    }

    /// Declaration keyword; anonymous individuals cannot be declared.
    pub fn from_declaration(keyword: &str) -> Option<Self> {
        match keyword {
            "Class" => Some(EntityKind::Class),
            "ObjectProperty" => Some(EntityKind::ObjectProperty),
            "DataProperty" => Some(EntityKind::DataProperty),
            "AnnotationProperty" => Some(EntityKind::AnnotationProperty),
            "NamedIndividual" => Some(EntityKind::NamedIndividual),
            "Datatype" => Some(EntityKind::Datatype),
            _ => None,
        }
    }

    pub fn individual_for(iri: &Iri) -> Self {
        if iri.is_anonymous() {
            EntityKind::AnonymousIndividual
        } else {
            EntityKind::NamedIndividual
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub lexical: String,
    pub datatype: Option<Iri>,
    pub lang: Option<String>,
}

impl Literal {
    pub fn plain(lexical: impl Into<String>) -> Self {
        Literal { lexical: lexical.into(), datatype: None, lang: None }
    }

    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Self {
        Literal { lexical: lexical.into(), datatype: Some(datatype), lang: None }
    }

    pub fn lang(lexical: impl Into<String>, lang: impl Into<String>) -> Self {
        Literal { lexical: lexical.into(), datatype: None, lang: Some(lang.into()) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AnnotationValue {
    Iri(Iri),
    Literal(Literal),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Characteristic {
    Functional,
    InverseFunctional,
    Transitive,
    Symmetric,
    Reflexive,
    Irreflexive,
}

impl Characteristic {
    pub const ALL: [Characteristic; 6] = [
        Characteristic::Functional,
        Characteristic::InverseFunctional,
        Characteristic::Transitive,
        Characteristic::Symmetric,
        Characteristic::Reflexive,
        Characteristic::Irreflexive,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            Characteristic::Functional => "FunctionalObjectProperty",
            Characteristic::InverseFunctional => "InverseFunctionalObjectProperty",
            Characteristic::Transitive => "TransitiveObjectProperty",
            Characteristic::Symmetric => "SymmetricObjectProperty",
            Characteristic::Reflexive => "ReflexiveObjectProperty",
            Characteristic::Irreflexive => "IrreflexiveObjectProperty",
        }
    }

    pub fn from_keyword(keyword: &str) -> Option<Self> {
        Characteristic::ALL.into_iter().find(|c| c.keyword() == keyword)
    }
}

/// The supported axiom forms. Every class operand is a named class.
///
/// N-ary operand lists are kept sorted and duplicate free, so two axioms
/// that differ only in operand order are the same axiom. Build them through
/// [`Axiom::nary`] (or the typed helpers) to keep that invariant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Declaration(EntityKind, Iri),
    SubClassOf { sub: Iri, sup: Iri },
    EquivalentClasses(Vec<Iri>),
    DisjointClasses(Vec<Iri>),
    SubObjectPropertyOf { sub: Iri, sup: Iri },
    EquivalentObjectProperties(Vec<Iri>),
    DisjointObjectProperties(Vec<Iri>),
    InverseObjectProperties(Iri, Iri),
    ObjectPropertyDomain { property: Iri, class: Iri },
    ObjectPropertyRange { property: Iri, class: Iri },
    PropertyCharacteristic { property: Iri, characteristic: Characteristic },
    SubDataPropertyOf { sub: Iri, sup: Iri },
    EquivalentDataProperties(Vec<Iri>),
    DisjointDataProperties(Vec<Iri>),
    DataPropertyDomain { property: Iri, class: Iri },
    DataPropertyRange { property: Iri, datatype: Iri },
    SubAnnotationPropertyOf { sub: Iri, sup: Iri },
    ClassAssertion { class: Iri, individual: Iri },
    ObjectPropertyAssertion { property: Iri, subject: Iri, object: Iri },
    DataPropertyAssertion { property: Iri, subject: Iri, value: Literal },
    SameIndividual(Vec<Iri>),
    DifferentIndividuals(Vec<Iri>),
    AnnotationAssertion { property: Iri, subject: Iri, value: AnnotationValue },
}

/// Which n-ary form to build with [`Axiom::nary`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NaryKind {
    EquivalentClasses,
    DisjointClasses,
    EquivalentObjectProperties,
    DisjointObjectProperties,
    EquivalentDataProperties,
    DisjointDataProperties,
    SameIndividual,
    DifferentIndividuals,
}

impl NaryKind {
    pub fn keyword(self) -> &'static str {
        match self {
            NaryKind::EquivalentClasses => "EquivalentClasses",
            NaryKind::DisjointClasses => "DisjointClasses",
            NaryKind::EquivalentObjectProperties => "EquivalentObjectProperties",
            NaryKind::DisjointObjectProperties => "DisjointObjectProperties",
            NaryKind::EquivalentDataProperties => "EquivalentDataProperties",
            NaryKind::DisjointDataProperties => "DisjointDataProperties",
            NaryKind::SameIndividual => "SameIndividual",
            NaryKind::DifferentIndividuals => "DifferentIndividuals",
        }
    }

    /// Operand kind; `None` for individuals, whose kind depends on the IRI.
    pub fn operand_kind(self) -> Option<EntityKind> {
        match self {
            NaryKind::EquivalentClasses | NaryKind::DisjointClasses => Some(EntityKind::Class),
            NaryKind::EquivalentObjectProperties | NaryKind::DisjointObjectProperties => {
                Some(EntityKind::ObjectProperty)
            }
            NaryKind::EquivalentDataProperties | NaryKind::DisjointDataProperties => {
                Some(EntityKind::DataProperty)
            }
            NaryKind::SameIndividual | NaryKind::DifferentIndividuals => None,
        }
    }
}

impl Axiom {
    pub fn nary(kind: NaryKind, operands: impl IntoIterator<Item = Iri>) -> Result<Axiom, ModelError> {
        let mut ops: Vec<Iri> = operands.into_iter().collect();
        ops.sort();
        ops.dedup();
        if ops.len() < 2 {
            return Err(ModelError::DegenerateAxiom(kind.keyword()));
        }
        Ok(match kind {
            NaryKind::EquivalentClasses => Axiom::EquivalentClasses(ops),
            NaryKind::DisjointClasses => Axiom::DisjointClasses(ops),
            NaryKind::EquivalentObjectProperties => Axiom::EquivalentObjectProperties(ops),
            NaryKind::DisjointObjectProperties => Axiom::DisjointObjectProperties(ops),
            NaryKind::EquivalentDataProperties => Axiom::EquivalentDataProperties(ops),
            NaryKind::DisjointDataProperties => Axiom::DisjointDataProperties(ops),
            NaryKind::SameIndividual => Axiom::SameIndividual(ops),
            NaryKind::DifferentIndividuals => Axiom::DifferentIndividuals(ops),
        })
    }

    pub fn equivalent_classes(a: Iri, b: Iri) -> Result<Axiom, ModelError> {
        Axiom::nary(NaryKind::EquivalentClasses, [a, b])
    }

    pub fn disjoint_classes(a: Iri, b: Iri) -> Result<Axiom, ModelError> {
        Axiom::nary(NaryKind::DisjointClasses, [a, b])
    }

    pub fn nary_parts(&self) -> Option<(NaryKind, &[Iri])> {
        let kind = match self {
            Axiom::EquivalentClasses(_) => NaryKind::EquivalentClasses,
            Axiom::DisjointClasses(_) => NaryKind::DisjointClasses,
            Axiom::EquivalentObjectProperties(_) => NaryKind::EquivalentObjectProperties,
            Axiom::DisjointObjectProperties(_) => NaryKind::DisjointObjectProperties,
            Axiom::EquivalentDataProperties(_) => NaryKind::EquivalentDataProperties,
            Axiom::DisjointDataProperties(_) => NaryKind::DisjointDataProperties,
            Axiom::SameIndividual(_) => NaryKind::SameIndividual,
            Axiom::DifferentIndividuals(_) => NaryKind::DifferentIndividuals,
            _ => return None,
        };
        match self {
            Axiom::EquivalentClasses(v)
            | Axiom::DisjointClasses(v)
            | Axiom::EquivalentObjectProperties(v)
            | Axiom::DisjointObjectProperties(v)
            | Axiom::EquivalentDataProperties(v)
            | Axiom::DisjointDataProperties(v)
            | Axiom::SameIndividual(v)
            | Axiom::DifferentIndividuals(v) => Some((kind, v)),
            _ => None,
        }
    }

    /// Everything except declarations and annotation assertions.
    pub fn is_logical(&self) -> bool {
        !matches!(self, Axiom::Declaration(..) | Axiom::AnnotationAssertion { .. })
    }

    pub fn keyword(&self) -> &'static str {
        if let Some((kind, _)) = self.nary_parts() {
            return kind.keyword();
        }
        match self {
            Axiom::Declaration(..) => "Declaration",
            Axiom::SubClassOf { .. } => "SubClassOf",
            Axiom::SubObjectPropertyOf { .. } => "SubObjectPropertyOf",
            Axiom::InverseObjectProperties(..) => "InverseObjectProperties",
            Axiom::ObjectPropertyDomain { .. } => "ObjectPropertyDomain",
            Axiom::ObjectPropertyRange { .. } => "ObjectPropertyRange",
            Axiom::PropertyCharacteristic { characteristic, .. } => characteristic.keyword(),
            Axiom::SubDataPropertyOf { .. } => "SubDataPropertyOf",
            Axiom::DataPropertyDomain { .. } => "DataPropertyDomain",
            Axiom::DataPropertyRange { .. } => "DataPropertyRange",
            Axiom::SubAnnotationPropertyOf { .. } => "SubAnnotationPropertyOf",
            Axiom::ClassAssertion { .. } => "ClassAssertion",
            Axiom::ObjectPropertyAssertion { .. } => "ObjectPropertyAssertion",
            Axiom::DataPropertyAssertion { .. } => "DataPropertyAssertion",
            Axiom::AnnotationAssertion { .. } => "AnnotationAssertion",
            _ => unreachable!("n-ary handled above"),
        }
    }

    /// Every IRI operand with the entity kind implied by its position.
    ///
    /// Annotation subjects and IRI-valued annotation values have no implied
    /// kind and are reported as `None`. Literal datatypes are not operands.
    pub fn operands(&self) -> Vec<(Option<EntityKind>, &Iri)> {
        use EntityKind::*;
        let ind = |i: &Iri| Some(EntityKind::individual_for(i));
        if let Some((kind, ops)) = self.nary_parts() {
            return ops
                .iter()
                .map(|i| (kind.operand_kind().or_else(|| ind(i)), i))
                .collect();
        }
        match self {
            Axiom::Declaration(kind, iri) => vec![(Some(*kind), iri)],
            Axiom::SubClassOf { sub, sup } => vec![(Some(Class), sub), (Some(Class), sup)],
            Axiom::SubObjectPropertyOf { sub, sup } => {
                vec![(Some(ObjectProperty), sub), (Some(ObjectProperty), sup)]
            }
            Axiom::InverseObjectProperties(a, b) => {
                vec![(Some(ObjectProperty), a), (Some(ObjectProperty), b)]
            }
            Axiom::ObjectPropertyDomain { property, class }
            | Axiom::ObjectPropertyRange { property, class } => {
                vec![(Some(ObjectProperty), property), (Some(Class), class)]
            }
            Axiom::PropertyCharacteristic { property, .. } => vec![(Some(ObjectProperty), property)],
            Axiom::SubDataPropertyOf { sub, sup } => {
                vec![(Some(DataProperty), sub), (Some(DataProperty), sup)]
            }
            Axiom::DataPropertyDomain { property, class } => {
                vec![(Some(DataProperty), property), (Some(Class), class)]
            }
            Axiom::DataPropertyRange { property, datatype } => {
                vec![(Some(DataProperty), property), (Some(Datatype), datatype)]
            }
            Axiom::SubAnnotationPropertyOf { sub, sup } => {
                vec![(Some(AnnotationProperty), sub), (Some(AnnotationProperty), sup)]
            }
            Axiom::ClassAssertion { class, individual } => {
                vec![(Some(Class), class), (ind(individual), individual)]
            }
            Axiom::ObjectPropertyAssertion { property, subject, object } => vec![
                (Some(ObjectProperty), property),
                (ind(subject), subject),
                (ind(object), object),
            ],
            Axiom::DataPropertyAssertion { property, subject, .. } => {
                vec![(Some(DataProperty), property), (ind(subject), subject)]
            }
            Axiom::AnnotationAssertion { property, subject, value } => {
                let mut v = vec![(Some(AnnotationProperty), property), (None, subject)];
                if let AnnotationValue::Iri(i) = value {
                    v.push((None, i));
                }
                v
            }
            _ => unreachable!("n-ary handled above"),
        }
    }

    /// Rewrites every IRI operand through `f`, which also receives the kind
    /// implied by the operand position.
    ///
    /// Returns `None` when an n-ary axiom collapses below two operands.
    pub fn map_iris(&self, mut f: impl FnMut(&Iri, Option<EntityKind>) -> Iri) -> Option<Axiom> {
        use EntityKind::*;
        if let Some((kind, ops)) = self.nary_parts() {
            let mapped: Vec<Iri> = ops
                .iter()
                .map(|i| f(i, kind.operand_kind().or(Some(EntityKind::individual_for(i)))))
                .collect();
            return Axiom::nary(kind, mapped).ok();
        }
        let ind = |i: &Iri| Some(EntityKind::individual_for(i));
        let ax = match self {
            Axiom::Declaration(kind, iri) => Axiom::Declaration(*kind, f(iri, Some(*kind))),
            Axiom::SubClassOf { sub, sup } => {
                Axiom::SubClassOf { sub: f(sub, Some(Class)), sup: f(sup, Some(Class)) }
            }
            Axiom::SubObjectPropertyOf { sub, sup } => Axiom::SubObjectPropertyOf {
                sub: f(sub, Some(ObjectProperty)),
                sup: f(sup, Some(ObjectProperty)),
            },
            Axiom::InverseObjectProperties(a, b) => {
                Axiom::InverseObjectProperties(f(a, Some(ObjectProperty)), f(b, Some(ObjectProperty)))
            }
            Axiom::ObjectPropertyDomain { property, class } => Axiom::ObjectPropertyDomain {
                property: f(property, Some(ObjectProperty)),
                class: f(class, Some(Class)),
            },
            Axiom::ObjectPropertyRange { property, class } => Axiom::ObjectPropertyRange {
                property: f(property, Some(ObjectProperty)),
                class: f(class, Some(Class)),
            },
            Axiom::PropertyCharacteristic { property, characteristic } => Axiom::PropertyCharacteristic {
                property: f(property, Some(ObjectProperty)),
                characteristic: *characteristic,
            },
            Axiom::SubDataPropertyOf { sub, sup } => Axiom::SubDataPropertyOf {
                sub: f(sub, Some(DataProperty)),
                sup: f(sup, Some(DataProperty)),
            },
            Axiom::DataPropertyDomain { property, class } => Axiom::DataPropertyDomain {
                property: f(property, Some(DataProperty)),
                class: f(class, Some(Class)),
            },
            Axiom::DataPropertyRange { property, datatype } => Axiom::DataPropertyRange {
                property: f(property, Some(DataProperty)),
                datatype: f(datatype, Some(Datatype)),
            },
            Axiom::SubAnnotationPropertyOf { sub, sup } => Axiom::SubAnnotationPropertyOf {
                sub: f(sub, Some(AnnotationProperty)),
                sup: f(sup, Some(AnnotationProperty)),
            },
            Axiom::ClassAssertion { class, individual } => Axiom::ClassAssertion {
                class: f(class, Some(Class)),
                individual: f(individual, ind(individual)),
            },
            Axiom::ObjectPropertyAssertion { property, subject, object } => Axiom::ObjectPropertyAssertion {
                property: f(property, Some(ObjectProperty)),
                subject: f(subject, ind(subject)),
                object: f(object, ind(object)),
            },
            Axiom::DataPropertyAssertion { property, subject, value } => Axiom::DataPropertyAssertion {
                property: f(property, Some(DataProperty)),
                subject: f(subject, ind(subject)),
                value: value.clone(),
            },
            Axiom::AnnotationAssertion { property, subject, value } => Axiom::AnnotationAssertion {
                property: f(property, Some(AnnotationProperty)),
                subject: f(subject, None),
                value: match value {
                    AnnotationValue::Iri(i) => AnnotationValue::Iri(f(i, None)),
                    AnnotationValue::Literal(l) => AnnotationValue::Literal(l.clone()),
                },
            },
            _ => unreachable!("n-ary handled above"),
        };
        Some(ax)
    }
}

/// Per-kind sets of entities declared in or used by an ontology.
///
/// Built-in vocabulary (`owl:Thing`, `xsd:string`, `rdfs:label`, ...) is
/// never indexed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EntityIndex {
    by_kind: [BTreeSet<Iri>; 7],
}

impl EntityIndex {
    pub fn insert(&mut self, kind: EntityKind, iri: Iri) -> bool {
        if iri.is_builtin() {
            return false;
        }
        self.by_kind[kind.slot()].insert(iri)
    }

    pub fn contains(&self, kind: EntityKind, iri: &Iri) -> bool {
        self.by_kind[kind.slot()].contains(iri)
    }

    pub fn of_kind(&self, kind: EntityKind) -> &BTreeSet<Iri> {
        &self.by_kind[kind.slot()]
    }

    pub fn count(&self, kind: EntityKind) -> usize {
        self.by_kind[kind.slot()].len()
    }

    pub fn kinds_of(&self, iri: &Iri) -> Vec<EntityKind> {
        EntityKind::ALL.into_iter().filter(|k| self.contains(*k, iri)).collect()
    }

    pub fn contains_any(&self, iri: &Iri) -> bool {
        self.by_kind.iter().any(|s| s.contains(iri))
    }

    pub fn iter(&self) -> impl Iterator<Item = (EntityKind, &Iri)> {
        EntityKind::ALL
            .into_iter()
            .flat_map(move |k| self.by_kind[k.slot()].iter().map(move |i| (k, i)))
    }
}

/// An ordered set of axioms plus the entities they mention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ontology {
    iri: Iri,
    axioms: IndexSet<Axiom>,
    entities: EntityIndex,
}

impl Ontology {
    pub fn new(iri: Iri) -> Self {
        Ontology { iri, axioms: IndexSet::new(), entities: EntityIndex::default() }
    }

    pub fn iri(&self) -> &Iri {
        &self.iri
    }

    /// Inserts an axiom and indexes its entities. Returns false when the
    /// axiom was already present.
    pub fn add_axiom(&mut self, axiom: Axiom) -> bool {
        if self.axioms.contains(&axiom) {
            return false;
        }
        if axiom.is_logical() || matches!(axiom, Axiom::Declaration(..)) {
            for (kind, iri) in axiom.operands() {
                if let Some(kind) = kind {
                    self.entities.insert(kind, iri.clone());
                }
            }
        } else if let Axiom::AnnotationAssertion { property, .. } = &axiom {
            self.entities.insert(EntityKind::AnnotationProperty, property.clone());
        }
        self.axioms.insert(axiom)
    }

    /// Records an entity in the index without adding a declaration axiom.
    pub fn register_entity(&mut self, kind: EntityKind, iri: Iri) -> bool {
        self.entities.insert(kind, iri)
    }

    pub fn contains(&self, axiom: &Axiom) -> bool {
        self.axioms.contains(axiom)
    }

    pub fn axioms(&self) -> impl ExactSizeIterator<Item = &Axiom> + '_ {
        self.axioms.iter()
    }

    pub fn axiom_at(&self, idx: usize) -> Option<&Axiom> {
        self.axioms.get_index(idx)
    }

    pub fn axiom_index(&self, axiom: &Axiom) -> Option<usize> {
        self.axioms.get_index_of(axiom)
    }

    pub fn axiom_count(&self) -> usize {
        self.axioms.len()
    }

    pub fn logical_axiom_count(&self) -> usize {
        self.axioms.iter().filter(|a| a.is_logical()).count()
    }

    pub fn declaration_count(&self) -> usize {
        self.axioms.iter().filter(|a| matches!(a, Axiom::Declaration(..))).count()
    }

    pub fn annotation_assertion_count(&self) -> usize {
        self.axioms
            .iter()
            .filter(|a| matches!(a, Axiom::AnnotationAssertion { .. }))
            .count()
    }

    pub fn entities(&self) -> &EntityIndex {
        &self.entities
    }
}

/// Where refactored entities live: `<base>/<NNN>#<local name>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputConfig {
    pub base_iri: Iri,
}

impl OutputConfig {
    /// Digits in a source id; with the leading `/` the id takes four characters.
    pub const ID_WIDTH: usize = 3;
    pub const MERGED_ID: &'static str = "000";
    pub const MAX_SOURCES: usize = 999;

    pub fn new(base_iri: Iri) -> Self {
        OutputConfig { base_iri }
    }

    pub fn prefix(&self, ont_index: usize) -> String {
        format!("{}/{:0width$}#", self.base_iri, ont_index, width = Self::ID_WIDTH)
    }
}

/// Moves a source entity under the output namespace, keeping its local name.
///
/// Anonymous individuals become `_:o<index>_<id>` so node ids from different
/// sources cannot collide.
pub fn refactor_iri(iri: &Iri, cfg: &OutputConfig, ont_index: usize) -> Result<Iri, ModelError> {
    if !(1..=OutputConfig::MAX_SOURCES).contains(&ont_index) {
        return Err(ModelError::IndexOutOfRange(ont_index));
    }
    if let Some(id) = iri.anonymous_id() {
        return Iri::new(format!("_:o{ont_index}_{id}"));
    }
    let name = local_name(iri)?;
    Iri::new(format!("{}{}", cfg.prefix(ont_index), name))
}

/// IRI of the entity produced by fusing two equivalent entities.
pub fn merged_iri(first: &str, second: &str, cfg: &OutputConfig) -> Result<Iri, ModelError> {
    if first.is_empty() || second.is_empty() {
        return Err(ModelError::MalformedIri(format!("{first}={second}")));
    }
    Iri::new(format!("{}/{}#{}={}", cfg.base_iri, OutputConfig::MERGED_ID, first, second))
}
