//! Alignments in the RDF/XML Alignment format, threshold filtering, and the
//! two-pass reduction of a 1-to-N alignment to a 1-to-1 mapping.

use std::collections::hash_map::{Entry as HashEntry, HashMap};
use std::fmt::{self, Write as _};

use indexmap::map::Entry;
use indexmap::IndexMap;
use quick_xml::escape::escape;
use quick_xml::events::{BytesStart, Event};
use quick_xml::name::ResolveResult;
use quick_xml::NsReader;
use thiserror::Error;

use crate::model::{Iri, ModelError, RDF_NS};

pub const ALIGNMENT_NS: &str = "http://knowledgeweb.semanticweb.org/heterogeneity/alignment";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlignmentError {
    #[error("xml error: {0}")]
    Xml(String),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("measure {0} outside [0, 1]")]
    MeasureOutOfRange(String),
    #[error("threshold {0} outside [0, 1]")]
    ThresholdOutOfRange(f64),
    #[error(transparent)]
    Model(#[from] ModelError),
}

impl From<quick_xml::Error> for AlignmentError {
    fn from(e: quick_xml::Error) -> Self {
        AlignmentError::Xml(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    /// `=`
    Equivalent,
    /// `?`: an equivalence known to produce unsatisfiable classes.
    Questionable,
    /// `<`
    LessGeneral,
    /// `>`
    MoreGeneral,
    /// `%`
    Incompatible,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Equivalent => "=",
            Relation::Questionable => "?",
            Relation::LessGeneral => "<",
            Relation::MoreGeneral => ">",
            Relation::Incompatible => "%",
        }
    }

    pub fn parse(token: &str) -> Result<Self, AlignmentError> {
        match token {
            "=" => Ok(Relation::Equivalent),
            "?" => Ok(Relation::Questionable),
            "<" => Ok(Relation::LessGeneral),
            ">" => Ok(Relation::MoreGeneral),
            "%" => Ok(Relation::Incompatible),
            other => Err(AlignmentError::UnknownRelation(other.to_string())),
        }
    }

    /// Relations translated into equivalence axioms.
    pub fn is_equivalence(self) -> bool {
        matches!(self, Relation::Equivalent | Relation::Questionable)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub entity1: Iri,
    pub entity2: Iri,
    pub relation: Relation,
    pub measure: f64,
    pub doc_order: usize,
}

impl Cell {
    pub fn new(entity1: Iri, entity2: Iri, relation: Relation, measure: f64, doc_order: usize) -> Self {
        Cell { entity1, entity2, relation, measure, doc_order }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Alignment {
    pub onto1: Iri,
    pub onto2: Iri,
    pub cells: Vec<Cell>,
}

impl Alignment {
    pub fn new(onto1: Iri, onto2: Iri) -> Self {
        Alignment { onto1, onto2, cells: Vec::new() }
    }

    /// Appends a cell, assigning the next document position. A cell that
    /// repeats `(entity1, entity2, relation)` only raises the stored measure.
    pub fn push(&mut self, entity1: Iri, entity2: Iri, relation: Relation, measure: f64) {
        if let Some(existing) = self
            .cells
            .iter_mut()
            .find(|c| c.entity1 == entity1 && c.entity2 == entity2 && c.relation == relation)
        {
            existing.measure = existing.measure.max(measure);
            return;
        }
        let doc_order = self.cells.last().map_or(0, |c| c.doc_order + 1);
        self.cells.push(Cell { entity1, entity2, relation, measure, doc_order });
    }

    /// Bulk form of [`Alignment::push`] with hashed duplicate detection.
    pub fn from_cells(
        onto1: Iri,
        onto2: Iri,
        cells: impl IntoIterator<Item = (Iri, Iri, Relation, f64)>,
    ) -> Self {
        let mut a = Alignment::new(onto1, onto2);
        let mut seen: HashMap<(Iri, Iri, Relation), usize> = HashMap::new();
        for (entity1, entity2, relation, measure) in cells {
            match seen.entry((entity1.clone(), entity2.clone(), relation)) {
                HashEntry::Occupied(slot) => {
                    let c = &mut a.cells[*slot.get()];
                    c.measure = c.measure.max(measure);
                }
                HashEntry::Vacant(slot) => {
                    slot.insert(a.cells.len());
                    let doc_order = a.cells.len();
                    a.cells.push(Cell { entity1, entity2, relation, measure, doc_order });
                }
            }
        }
        a
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

// ---------------------------------------------------------------------------
// parsing

#[derive(Default)]
struct CellDraft {
    entity1: Option<String>,
    entity2: Option<String>,
    relation: Option<String>,
    measure: Option<String>,
}

fn resource_attr(e: &BytesStart<'_>) -> Result<Option<String>, AlignmentError> {
    for attr in e.attributes() {
        let attr = attr.map_err(|err| AlignmentError::Xml(err.to_string()))?;
        let local = attr.key.local_name();
        if local.as_ref() == b"resource" || local.as_ref() == b"about" {
            return Ok(Some(attr.unescape_value()?.into_owned()));
        }
    }
    Ok(None)
}

fn parse_measure(text: &str) -> Result<f64, AlignmentError> {
    let value: f64 = text
        .trim()
        .parse()
        .map_err(|_| AlignmentError::Xml(format!("measure `{text}` is not a number")))?;
    if !(0.0..=1.0).contains(&value) {
        return Err(AlignmentError::MeasureOutOfRange(text.trim().to_string()));
    }
    Ok(value)
}

/// Reads an alignment document. Cells keep document order; a missing
/// measure is 1.0 and a missing relation is `=`.
pub fn parse_alignment(xml: &str) -> Result<Alignment, AlignmentError> {
    let mut reader = NsReader::from_str(xml);
    reader.config_mut().trim_text(true);

    let mut stack: Vec<Vec<u8>> = Vec::new();
    let mut seen_root = false;
    let mut onto: [Option<String>; 2] = [None, None];
    let mut text = String::new();
    let mut draft: Option<CellDraft> = None;
    let mut cells: Vec<(String, String, Relation, f64)> = Vec::new();

    loop {
        let (ns, event) = reader.read_resolved_event()?;
        match event {
            Event::Start(ref e) | Event::Empty(ref e) => {
                let empty = matches!(event, Event::Empty(_));
                let local = e.local_name().as_ref().to_vec();
                let in_alignment_ns = matches!(ns, ResolveResult::Bound(n) if n.as_ref() == ALIGNMENT_NS.as_bytes());
                match local.as_slice() {
                    b"Alignment" => {
                        if !in_alignment_ns {
                            return Err(AlignmentError::Xml(format!(
                                "Alignment element must be in namespace {ALIGNMENT_NS}"
                            )));
                        }
                        seen_root = true;
                    }
                    b"Cell" if seen_root => draft = Some(CellDraft::default()),
                    b"entity1" | b"entity2" if draft.is_some() => {
                        let value = resource_attr(e)?;
                        let d = draft.as_mut().expect("checked");
                        if local == b"entity1" {
                            d.entity1 = value;
                        } else {
                            d.entity2 = value;
                        }
                    }
                    b"Ontology" => {
                        let slot = match stack.last().map(Vec::as_slice) {
                            Some(b"onto1") => Some(0),
                            Some(b"onto2") => Some(1),
                            _ => None,
                        };
                        if let (Some(slot), Some(about)) = (slot, resource_attr(e)?) {
                            onto[slot] = Some(about);
                        }
                    }
                    _ => {}
                }
                text.clear();
                if !empty {
                    stack.push(local);
                }
            }
            Event::Text(t) => {
                text.push_str(&t.unescape()?);
            }
            Event::CData(t) => {
                text.push_str(&String::from_utf8_lossy(&t.into_inner()));
            }
            Event::End(_) => {
                let local = stack.pop().unwrap_or_default();
                let value = std::mem::take(&mut text);
                match local.as_slice() {
                    b"onto1" | b"onto2" => {
                        let slot = usize::from(local == b"onto2");
                        if onto[slot].is_none() && !value.trim().is_empty() {
                            onto[slot] = Some(value.trim().to_string());
                        }
                    }
                    b"measure" => {
                        if let Some(d) = draft.as_mut() {
                            d.measure = Some(value);
                        }
                    }
                    b"relation" => {
                        if let Some(d) = draft.as_mut() {
                            d.relation = Some(value.trim().to_string());
                        }
                    }
                    b"Cell" => {
                        let Some(d) = draft.take() else { continue };
                        let position = cells.len() + 1;
                        let e1 = d.entity1.ok_or_else(|| {
                            AlignmentError::Xml(format!("cell {position} has no entity1 rdf:resource"))
                        })?;
                        let e2 = d.entity2.ok_or_else(|| {
                            AlignmentError::Xml(format!("cell {position} has no entity2 rdf:resource"))
                        })?;
                        let relation = match d.relation.as_deref() {
                            None | Some("") => Relation::Equivalent,
                            Some(r) => Relation::parse(r)?,
                        };
                        let measure = match d.measure.as_deref() {
                            None => 1.0,
                            Some(m) => parse_measure(m)?,
                        };
                        cells.push((e1, e2, relation, measure));
                    }
                    _ => {}
                }
            }
            Event::Eof => break,
            _ => {}
        }
    }

    if !seen_root {
        return Err(AlignmentError::Xml("no Alignment element".into()));
    }
    let header = |slot: usize, name: &str| -> Result<Iri, AlignmentError> {
        let raw = onto[slot]
            .as_deref()
            .ok_or_else(|| AlignmentError::Xml(format!("missing {name}")))?;
        Ok(Iri::new(raw)?)
    };
    let cells = cells
        .into_iter()
        .map(|(e1, e2, relation, measure)| Ok((Iri::new(e1)?, Iri::new(e2)?, relation, measure)))
        .collect::<Result<Vec<_>, AlignmentError>>()?;
    Ok(Alignment::from_cells(header(0, "onto1")?, header(1, "onto2")?, cells))
}

// ---------------------------------------------------------------------------
// writing

fn alignment_type(a: &Alignment) -> &'static str {
    let unique = |key: fn(&Cell) -> &Iri| {
        let mut seen = std::collections::HashSet::new();
        a.cells.iter().all(|c| seen.insert(key(c)))
    };
    match (unique(|c| &c.entity1), unique(|c| &c.entity2)) {
        (true, true) => "11",
        (true, false) => "1*",
        (false, true) => "*1",
        (false, false) => "**",
    }
}

/// Writes the alignment as RDF/XML. Measures use the shortest decimal that
/// parses back to the same value.
pub fn serialize_alignment(a: &Alignment) -> String {
    let mut out = String::with_capacity(512 + a.cells.len() * 320);
    out.push_str("<?xml version=\"1.0\" encoding=\"utf-8\"?>\n");
    let _ = writeln!(
        out,
        "<rdf:RDF xmlns=\"{ALIGNMENT_NS}\"\n         xmlns:rdf=\"{RDF_NS}\"\n         xmlns:xsd=\"http://www.w3.org/2001/XMLSchema#\">"
    );
    out.push_str("<Alignment>\n  <xml>yes</xml>\n  <level>0</level>\n");
    let _ = writeln!(out, "  <type>{}</type>", alignment_type(a));
    for (tag, iri) in [("onto1", &a.onto1), ("onto2", &a.onto2)] {
        let _ = writeln!(out, "  <{tag}>\n    <Ontology rdf:about=\"{}\"/>\n  </{tag}>", escape(iri.as_str()));
    }
    for c in &a.cells {
        out.push_str("  <map>\n    <Cell>\n");
        let _ = writeln!(out, "      <entity1 rdf:resource=\"{}\"/>", escape(c.entity1.as_str()));
        let _ = writeln!(out, "      <entity2 rdf:resource=\"{}\"/>", escape(c.entity2.as_str()));
        let _ = writeln!(out, "      <relation>{}</relation>", escape(c.relation.symbol()));
        let _ = writeln!(out, "      <measure rdf:datatype=\"http://www.w3.org/2001/XMLSchema#float\">{}</measure>", c.measure);
        out.push_str("    </Cell>\n  </map>\n");
    }
    out.push_str("</Alignment>\n</rdf:RDF>\n");
    out
}

// ---------------------------------------------------------------------------
// filtering

fn check_threshold(t: f64) -> Result<(), AlignmentError> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(AlignmentError::ThresholdOutOfRange(t))
    }
}

/// Keeps the cells whose measure is at least `t`, in order.
pub fn threshold_filter(a: &Alignment, t: f64) -> Result<Alignment, AlignmentError> {
    check_threshold(t)?;
    Ok(Alignment {
        onto1: a.onto1.clone(),
        onto2: a.onto2.clone(),
        cells: a.cells.iter().filter(|c| c.measure >= t).cloned().collect(),
    })
}

/// One greedy pass: per key, keep the first cell whose measure is strictly
/// greater than every earlier cell with that key.
fn best_per_key<'c>(cells: impl Iterator<Item = &'c Cell>, key: fn(&Cell) -> &Iri) -> Vec<&'c Cell> {
    let mut best: IndexMap<&Iri, &Cell> = IndexMap::new();
    for cell in cells {
        match best.entry(key(cell)) {
            Entry::Vacant(v) => {
                v.insert(cell);
            }
            Entry::Occupied(mut o) => {
                if cell.measure > o.get().measure {
                    o.insert(cell);
                }
            }
        }
    }
    let mut kept: Vec<&Cell> = best.into_values().collect();
    kept.sort_by_key(|c| c.doc_order);
    kept
}

/// Reduces an alignment so every source and every target occurs at most
/// once: first by source entity over document order, then by target entity
/// over the survivors in document order. Ties keep the earlier cell.
pub fn to_one_to_one(a: &Alignment) -> Alignment {
    let by_source = best_per_key(a.cells.iter(), |c| &c.entity1);
    let by_target = best_per_key(by_source.into_iter(), |c| &c.entity2);
    Alignment {
        onto1: a.onto1.clone(),
        onto2: a.onto2.clone(),
        cells: by_target.into_iter().cloned().collect(),
    }
}
