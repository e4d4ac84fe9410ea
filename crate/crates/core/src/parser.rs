//! Reader and writer for the OWL functional-style subset covering every
//! [`Axiom`] form.
//!
//! Parsing runs in two steps: the text is turned into a tree of
//! `Name(args...)` nodes, then the tree is interpreted. Well-formed
//! constructs outside the subset (class expressions, imports, keys, ...)
//! are skipped and counted in [`ParseDiagnostics::ignored_constructs`].

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use indexmap::IndexMap;
use thiserror::Error;

use crate::model::{
    AnnotationValue, Axiom, Characteristic, EntityKind, Iri, Literal, NaryKind, Ontology, OWL_NS,
    RDFS_NS, RDF_NS, XML_NS, XSD_NS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: syntax error, expected {expected}")]
    Syntax { line: usize, expected: String },
    #[error("empty document")]
    EmptyDocument,
}

fn syntax(line: usize, expected: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, expected: expected.into() }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParseDiagnostics {
    /// `(line, message)` pairs, in the order they were raised.
    pub warnings: Vec<(usize, String)>,
    /// Construct name to number of times it was skipped.
    pub ignored_constructs: BTreeMap<String, usize>,
}

impl ParseDiagnostics {
    fn ignore(&mut self, name: impl Into<String>) {
        *self.ignored_constructs.entry(name.into()).or_default() += 1;
    }

    pub fn ignored_total(&self) -> usize {
        self.ignored_constructs.values().sum()
    }
}

/// Annotation properties accepted without a declaration.
pub const BUILTIN_ANNOTATION_PROPERTIES: [&str; 5] = [
    "http://www.w3.org/2000/01/rdf-schema#label",
    "http://www.w3.org/2000/01/rdf-schema#comment",
    "http://www.w3.org/2000/01/rdf-schema#seeAlso",
    "http://www.w3.org/2002/07/owl#versionInfo",
    "http://www.w3.org/2002/07/owl#priorVersion",
];

// ---------------------------------------------------------------------------
// lexer

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Eq,
    Iri(String),
    Word(String),
    Lit { lexical: String, datatype: Option<RawTerm>, lang: Option<String> },
}

#[derive(Debug, Clone, PartialEq)]
enum RawTerm {
    Full(String),
    Word(String),
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
}

fn is_delim(b: u8) -> bool {
    b.is_ascii_whitespace() || matches!(b, b'(' | b')' | b'<' | b'>' | b'"' | b'=')
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src, pos: 0, line: 1 }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    /// Skips whitespace and `#` comments running to the end of the line.
    fn skip_ws(&mut self) {
        while let Some(b) = self.peek() {
            if b == b'\n' {
                self.line += 1;
            } else if b == b'#' {
                while self.peek().is_some_and(|c| c != b'\n') {
                    self.pos += 1;
                }
                continue;
            } else if !b.is_ascii_whitespace() {
                break;
            }
            self.pos += 1;
        }
    }

    fn next(&mut self) -> Result<Option<(Tok, usize)>, ParseError> {
        self.skip_ws();
        let line = self.line;
        let Some(b) = self.peek() else { return Ok(None) };
        let tok = match b {
            b'(' => {
                self.pos += 1;
                Tok::Open
            }
            b')' => {
                self.pos += 1;
                Tok::Close
            }
            b'=' => {
                self.pos += 1;
                Tok::Eq
            }
            b'<' => Tok::Iri(self.full_iri()?),
            b'"' => self.literal()?,
            b'>' => return Err(syntax(line, "'<' before '>'")),
            _ => Tok::Word(self.word()),
        };
        Ok(Some((tok, line)))
    }

    fn full_iri(&mut self) -> Result<String, ParseError> {
        let start = self.pos + 1;
        let rest = &self.src[start..];
        match rest.find(['>', '\n', '<']) {
            Some(end) if rest.as_bytes()[end] == b'>' => {
                self.pos = start + end + 1;
                Ok(rest[..end].to_string())
            }
            _ => Err(syntax(self.line, "'>' closing the IRI")),
        }
    }

    fn word(&mut self) -> String {
        let start = self.pos;
        while let Some(b) = self.peek() {
            if is_delim(b) {
                break;
            }
            self.pos += 1;
        }
        self.src[start..self.pos].to_string()
    }

    fn literal(&mut self) -> Result<Tok, ParseError> {
        let open_line = self.line;
        self.pos += 1;
        let mut lexical = String::new();
        let mut chunk = self.pos;
        loop {
            let Some(b) = self.peek() else {
                return Err(syntax(open_line, "closing '\"' of literal"));
            };
            match b {
                b'"' => {
                    lexical.push_str(&self.src[chunk..self.pos]);
                    self.pos += 1;
                    break;
                }
                b'\\' => {
                    lexical.push_str(&self.src[chunk..self.pos]);
                    match self.src.as_bytes().get(self.pos + 1) {
                        Some(b'"') => lexical.push('"'),
                        Some(b'\\') => lexical.push('\\'),
                        _ => return Err(syntax(self.line, "'\\\"' or '\\\\' escape")),
                    }
                    self.pos += 2;
                    chunk = self.pos;
                }
                b'\n' => {
                    self.line += 1;
                    self.pos += 1;
                }
                _ => self.pos += 1,
            }
        }
        let mut datatype = None;
        let mut lang = None;
        if self.src[self.pos..].starts_with("^^") {
            self.pos += 2;
            datatype = Some(match self.peek() {
                Some(b'<') => RawTerm::Full(self.full_iri()?),
                Some(b) if !is_delim(b) => RawTerm::Word(self.word()),
                _ => return Err(syntax(self.line, "datatype after '^^'")),
            });
        } else if self.peek() == Some(b'@') {
            self.pos += 1;
            let start = self.pos;
            while let Some(b) = self.peek() {
                if b.is_ascii_alphanumeric() || b == b'-' {
                    self.pos += 1;
                } else {
                    break;
                }
            }
            if start == self.pos {
                return Err(syntax(self.line, "language tag after '@'"));
            }
            lang = Some(self.src[start..self.pos].to_string());
        }
        Ok(Tok::Lit { lexical, datatype, lang })
    }
}

// ---------------------------------------------------------------------------
// tree

#[derive(Debug, Clone)]
enum Node {
    List { head: String, args: Vec<Node>, line: usize },
    Iri { text: String, line: usize },
    Word { text: String, line: usize },
    Lit { lexical: String, datatype: Option<RawTerm>, lang: Option<String>, line: usize },
    Eq { line: usize },
}

impl Node {
    fn line(&self) -> usize {
        match self {
            Node::List { line, .. }
            | Node::Iri { line, .. }
            | Node::Word { line, .. }
            | Node::Lit { line, .. }
            | Node::Eq { line } => *line,
        }
    }
}

struct TreeBuilder<'a> {
    lexer: Lexer<'a>,
    lookahead: Option<(Tok, usize)>,
}

impl<'a> TreeBuilder<'a> {
    fn peek(&mut self) -> Result<Option<&(Tok, usize)>, ParseError> {
        if self.lookahead.is_none() {
            self.lookahead = self.lexer.next()?;
        }
        Ok(self.lookahead.as_ref())
    }

    fn bump(&mut self) -> Result<Option<(Tok, usize)>, ParseError> {
        self.peek()?;
        Ok(self.lookahead.take())
    }

    /// Reads one node, or `None` at a closing parenthesis / end of input
    /// (left in place for the caller).
    fn node(&mut self) -> Result<Option<Node>, ParseError> {
        match self.peek()? {
            None | Some((Tok::Close, _)) => return Ok(None),
            _ => {}
        }
        let (tok, line) = self.bump()?.expect("peeked");
        let node = match tok {
            Tok::Word(text) => {
                if matches!(self.peek()?, Some((Tok::Open, _))) {
                    self.bump()?;
                    let mut args = Vec::new();
                    while let Some(n) = self.node()? {
                        args.push(n);
                    }
                    match self.bump()? {
                        Some((Tok::Close, _)) => {}
                        _ => return Err(syntax(self.lexer.line, format!("')' closing {text}("))),
                    }
                    Node::List { head: text, args, line }
                } else {
                    Node::Word { text, line }
                }
            }
            Tok::Iri(text) => Node::Iri { text, line },
            Tok::Lit { lexical, datatype, lang } => Node::Lit { lexical, datatype, lang, line },
            Tok::Eq => Node::Eq { line },
            Tok::Open => return Err(syntax(line, "construct name before '('")),
            Tok::Close => unreachable!("handled by peek"),
        };
        Ok(Some(node))
    }
}

// ---------------------------------------------------------------------------
// interpretation

enum Reject {
    Skip(String),
    Fail(ParseError),
}

impl From<ParseError> for Reject {
    fn from(e: ParseError) -> Self {
        Reject::Fail(e)
    }
}

struct Interp {
    prefixes: HashMap<String, String>,
    diag: ParseDiagnostics,
    declared: HashSet<(EntityKind, Iri)>,
    first_use: IndexMap<(EntityKind, Iri), usize>,
}

impl Interp {
    fn new() -> Self {
        let prefixes = [("owl:", OWL_NS), ("rdf:", RDF_NS), ("rdfs:", RDFS_NS), ("xsd:", XSD_NS), ("xml:", XML_NS)]
            .into_iter()
            .map(|(p, ns)| (p.to_string(), ns.to_string()))
            .collect();
        Interp {
            prefixes,
            diag: ParseDiagnostics::default(),
            declared: HashSet::new(),
            first_use: IndexMap::new(),
        }
    }

    fn resolve_word(&self, text: &str, line: usize) -> Result<Iri, ParseError> {
        if text.starts_with("_:") {
            return Iri::new(text).map_err(|_| syntax(line, "anonymous individual id"));
        }
        let Some(colon) = text.find(':') else {
            return Err(syntax(line, format!("IRI, found `{text}`")));
        };
        let (prefix, local) = text.split_at(colon + 1);
        let ns = self
            .prefixes
            .get(prefix)
            .ok_or_else(|| syntax(line, format!("declared prefix `{prefix}`")))?;
        Iri::new(format!("{ns}{local}")).map_err(|_| syntax(line, "absolute IRI"))
    }

    fn resolve_raw(&self, raw: &RawTerm, line: usize) -> Result<Iri, ParseError> {
        match raw {
            RawTerm::Full(text) => Iri::new(text).map_err(|_| syntax(line, format!("absolute IRI, found <{text}>"))),
            RawTerm::Word(text) => self.resolve_word(text, line),
        }
    }

    /// An entity operand. Nested constructs (class expressions, inverse
    /// properties, data ranges) make the whole axiom unsupported.
    fn term(&self, node: &Node) -> Result<Iri, Reject> {
        match node {
            Node::Iri { text, line } => Ok(self.resolve_raw(&RawTerm::Full(text.clone()), *line)?),
            Node::Word { text, line } => Ok(self.resolve_word(text, *line)?),
            Node::List { head, .. } => Err(Reject::Skip(head.clone())),
            Node::Lit { line, .. } | Node::Eq { line } => Err(Reject::Fail(syntax(*line, "entity IRI"))),
        }
    }

    fn literal(&self, node: &Node) -> Result<Literal, Reject> {
        match node {
            Node::Lit { lexical, datatype, lang, line } => {
                let datatype = datatype.as_ref().map(|d| self.resolve_raw(d, *line)).transpose()?;
                Ok(Literal { lexical: lexical.clone(), datatype, lang: lang.clone() })
            }
            Node::List { head, .. } => Err(Reject::Skip(head.clone())),
            other => Err(Reject::Fail(syntax(other.line(), "literal"))),
        }
    }

    fn axiom(&self, head: &str, args: &[Node], line: usize, declared_ann: &HashSet<Iri>) -> Result<Axiom, Reject> {
        let arity = |n: usize| -> Result<(), Reject> {
            if args.len() == n {
                Ok(())
            } else {
                Err(Reject::Fail(syntax(line, format!("{n} operand(s) in {head}"))))
            }
        };
        let pair = |ctor: fn(Iri, Iri) -> Axiom| -> Result<Axiom, Reject> {
            arity(2)?;
            Ok(ctor(self.term(&args[0])?, self.term(&args[1])?))
        };
        let nary = |kind: NaryKind| -> Result<Axiom, Reject> {
            if args.len() < 2 {
                return Err(Reject::Fail(syntax(line, format!("at least 2 operands in {head}"))));
            }
            let ops = args.iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
            Axiom::nary(kind, ops).map_err(|_| Reject::Skip(format!("{head}(repeated operands)")))
        };
        if let Some(characteristic) = Characteristic::from_keyword(head) {
            arity(1)?;
            return Ok(Axiom::PropertyCharacteristic { property: self.term(&args[0])?, characteristic });
        }
        match head {
            "Declaration" => {
                arity(1)?;
                let Node::List { head: kw, args: inner, line } = &args[0] else {
                    return Err(Reject::Fail(syntax(line, "entity inside Declaration")));
                };
                let kind = EntityKind::from_declaration(kw)
                    .ok_or_else(|| syntax(*line, format!("entity kind, found `{kw}`")))?;
                if inner.len() != 1 {
                    return Err(Reject::Fail(syntax(*line, format!("1 operand in {kw}"))));
                }
                Ok(Axiom::Declaration(kind, self.term(&inner[0])?))
            }
            "SubClassOf" => pair(|sub, sup| Axiom::SubClassOf { sub, sup }),
            "EquivalentClasses" => nary(NaryKind::EquivalentClasses),
            "DisjointClasses" => nary(NaryKind::DisjointClasses),
            "SubObjectPropertyOf" => pair(|sub, sup| Axiom::SubObjectPropertyOf { sub, sup }),
            "EquivalentObjectProperties" => nary(NaryKind::EquivalentObjectProperties),
            "DisjointObjectProperties" => nary(NaryKind::DisjointObjectProperties),
            "InverseObjectProperties" => pair(Axiom::InverseObjectProperties),
            "ObjectPropertyDomain" => pair(|property, class| Axiom::ObjectPropertyDomain { property, class }),
            "ObjectPropertyRange" => pair(|property, class| Axiom::ObjectPropertyRange { property, class }),
            "SubDataPropertyOf" => pair(|sub, sup| Axiom::SubDataPropertyOf { sub, sup }),
            "EquivalentDataProperties" => nary(NaryKind::EquivalentDataProperties),
            "DisjointDataProperties" => nary(NaryKind::DisjointDataProperties),
            "DataPropertyDomain" => pair(|property, class| Axiom::DataPropertyDomain { property, class }),
            "DataPropertyRange" => pair(|property, datatype| Axiom::DataPropertyRange { property, datatype }),
            "SubAnnotationPropertyOf" => pair(|sub, sup| Axiom::SubAnnotationPropertyOf { sub, sup }),
            "ClassAssertion" => pair(|class, individual| Axiom::ClassAssertion { class, individual }),
            "ObjectPropertyAssertion" => {
                arity(3)?;
                Ok(Axiom::ObjectPropertyAssertion {
                    property: self.term(&args[0])?,
                    subject: self.term(&args[1])?,
                    object: self.term(&args[2])?,
                })
            }
            "DataPropertyAssertion" => {
                arity(3)?;
                Ok(Axiom::DataPropertyAssertion {
                    property: self.term(&args[0])?,
                    subject: self.term(&args[1])?,
                    value: self.literal(&args[2])?,
                })
            }
            "SameIndividual" => nary(NaryKind::SameIndividual),
            "DifferentIndividuals" => nary(NaryKind::DifferentIndividuals),
            "AnnotationAssertion" => {
                arity(3)?;
                let property = self.term(&args[0])?;
                let subject = self.term(&args[1])?;
                let value = match &args[2] {
                    Node::Lit { .. } => AnnotationValue::Literal(self.literal(&args[2])?),
                    other => AnnotationValue::Iri(self.term(other)?),
                };
                if !declared_ann.contains(&property)
                    && !BUILTIN_ANNOTATION_PROPERTIES.contains(&property.as_str())
                {
                    return Err(Reject::Skip("AnnotationAssertion(undeclared property)".into()));
                }
                Ok(Axiom::AnnotationAssertion { property, subject, value })
            }
            other => Err(Reject::Skip(other.to_string())),
        }
    }

    fn note_uses(&mut self, axiom: &Axiom, line: usize) {
        match axiom {
            Axiom::Declaration(kind, iri) => {
                self.declared.insert((*kind, iri.clone()));
            }
            a if a.is_logical() => {
                for (kind, iri) in a.operands() {
                    let Some(kind) = kind else { continue };
                    if kind == EntityKind::AnonymousIndividual || iri.is_builtin() {
                        continue;
                    }
                    self.first_use.entry((kind, iri.clone())).or_insert(line);
                }
            }
            _ => {}
        }
    }
}

fn strip_axiom_annotations<'n>(args: &'n [Node], diag: &mut ParseDiagnostics) -> &'n [Node] {
    let n = args
        .iter()
        .take_while(|a| matches!(a, Node::List { head, .. } if head == "Annotation"))
        .count();
    for _ in 0..n {
        diag.ignore("AxiomAnnotation");
    }
    &args[n..]
}

pub const DEFAULT_ONTOLOGY_IRI: &str = "http://example.org/anonymous-ontology";

/// Parses a functional-style document.
///
/// Entities used in logical axioms without a declaration are entered in the
/// entity index (kind taken from their position) and reported as warnings.
pub fn parse_ontology(text: &str) -> Result<(Ontology, ParseDiagnostics), ParseError> {
    let mut builder = TreeBuilder { lexer: Lexer::new(text), lookahead: None };
    let mut top = Vec::new();
    loop {
        match builder.node()? {
            Some(n) => top.push(n),
            None => match builder.bump()? {
                None => break,
                Some((_, line)) => return Err(syntax(line, "construct before ')'")),
            },
        }
    }
    if top.is_empty() {
        return Err(ParseError::EmptyDocument);
    }

    let mut interp = Interp::new();
    let mut body = None;
    for node in top {
        match node {
            Node::List { head, args, line } if head == "Prefix" => {
                match args.as_slice() {
                    [Node::Word { text, .. }, Node::Eq { .. }, Node::Iri { text: ns, .. }] if text.ends_with(':') => {
                        interp.prefixes.insert(text.clone(), ns.clone());
                    }
                    _ => return Err(syntax(line, "Prefix(name:=<iri>)")),
                }
            }
            Node::List { head, args, line } if head == "Ontology" => {
                if body.is_some() {
                    return Err(syntax(line, "a single Ontology(...)"));
                }
                body = Some((args, line));
            }
            other => return Err(syntax(other.line(), "Prefix(...) or Ontology(...)")),
        }
    }
    let Some((args, line)) = body else {
        return Err(syntax(1, "Ontology(...)"));
    };

    let mut rest = args.as_slice();
    let mut names = Vec::new();
    while let Some(first) = rest.first() {
        match first {
            Node::Iri { text, line } => names.push(interp.resolve_raw(&RawTerm::Full(text.clone()), *line)?),
            Node::Word { text, line } => names.push(interp.resolve_word(text, *line)?),
            _ => break,
        }
        rest = &rest[1..];
    }
    if names.len() > 2 {
        return Err(syntax(line, "at most an ontology IRI and a version IRI"));
    }
    let iri = match names.into_iter().next() {
        Some(i) => i,
        None => {
            interp.diag.warnings.push((line, "ontology has no IRI; using a placeholder".into()));
            Iri::new(DEFAULT_ONTOLOGY_IRI).expect("valid constant")
        }
    };

    // annotation properties may be declared after their first use
    let mut declared_ann = HashSet::new();
    for node in rest {
        if let Node::List { head, args, .. } = node {
            if head != "Declaration" {
                continue;
            }
            if let Some(Node::List { head: kw, args: inner, .. }) = args.last() {
                if kw == "AnnotationProperty" && inner.len() == 1 {
                    if let Ok(i) = interp.term(&inner[0]) {
                        declared_ann.insert(i);
                    }
                }
            }
        }
    }

    let mut ontology = Ontology::new(iri);
    for node in rest {
        let Node::List { head, args, line } = node else {
            return Err(syntax(node.line(), "axiom"));
        };
        match head.as_str() {
            "Import" => {
                interp.diag.warnings.push((*line, "import ignored".into()));
                interp.diag.ignore("Import");
                continue;
            }
            "Annotation" => {
                interp.diag.ignore("OntologyAnnotation");
                continue;
            }
            _ => {}
        }
        let args = strip_axiom_annotations(args, &mut interp.diag);
        match interp.axiom(head, args, *line, &declared_ann) {
            Ok(axiom) => {
                interp.note_uses(&axiom, *line);
                ontology.add_axiom(axiom);
            }
            Err(Reject::Skip(name)) => interp.diag.ignore(name),
            Err(Reject::Fail(e)) => return Err(e),
        }
    }

    let Interp { mut diag, declared, first_use, .. } = interp;
    for ((kind, iri), line) in first_use {
        if !declared.contains(&(kind, iri.clone())) {
            diag.warnings.push((line, format!("undeclared {} {}", kind.name(), iri)));
        }
    }
    Ok((ontology, diag))
}

// ---------------------------------------------------------------------------
// writer

fn write_iri(out: &mut String, iri: &Iri) {
    if iri.is_anonymous() {
        out.push_str(iri.as_str());
    } else {
        out.push('<');
        out.push_str(iri.as_str());
        out.push('>');
    }
}

fn write_literal(out: &mut String, lit: &Literal) {
    out.push('"');
    for c in lit.lexical.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    if let Some(dt) = &lit.datatype {
        out.push_str("^^");
        write_iri(out, dt);
    } else if let Some(lang) = &lit.lang {
        out.push('@');
        out.push_str(lang);
    }
}

pub fn write_axiom(out: &mut String, axiom: &Axiom) {
    out.push_str(axiom.keyword());
    out.push('(');
    match axiom {
        Axiom::Declaration(kind, iri) => {
            let _ = write!(out, "{}(", kind.name());
            write_iri(out, iri);
            out.push(')');
        }
        Axiom::DataPropertyAssertion { property, subject, value } => {
            write_iri(out, property);
            out.push(' ');
            write_iri(out, subject);
            out.push(' ');
            write_literal(out, value);
        }
        Axiom::AnnotationAssertion { property, subject, value } => {
            write_iri(out, property);
            out.push(' ');
            write_iri(out, subject);
            out.push(' ');
            match value {
                AnnotationValue::Iri(i) => write_iri(out, i),
                AnnotationValue::Literal(l) => write_literal(out, l),
            }
        }
        other => {
            for (n, (_, iri)) in other.operands().into_iter().enumerate() {
                if n > 0 {
                    out.push(' ');
                }
                write_iri(out, iri);
            }
        }
    }
    out.push(')');
}

/// Writes `Ontology(<iri>` followed by one axiom per line, full IRIs only.
pub fn serialize_ontology(ontology: &Ontology) -> String {
    let mut out = String::with_capacity(64 + ontology.axiom_count() * 96);
    out.push_str("Ontology(");
    write_iri(&mut out, ontology.iri());
    out.push('\n');
    for axiom in ontology.axioms() {
        write_axiom(&mut out, axiom);
        out.push('\n');
    }
    out.push_str(")\n");
    out
}
