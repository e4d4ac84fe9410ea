use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use ontobridge::parser::write_axiom;
use ontobridge::reasoner::Justifier;
use ontobridge::report::describe_reason;
use ontobridge::{
    classify, compute_metrics, integrate as run_integration, is_consistent, parse_alignment, parse_ontology, render,
    serialize_alignment, serialize_ontology, threshold_filter, to_one_to_one, unsatisfiable_classes, Alignment,
    AlignmentError, IntegrationError, IntegrationPlan, Iri, Ontology, OutputConfig, PairAlignment, Timings,
};
use rayon::prelude::*;

use crate::IntegrateArgs;

pub const EXIT_INCOHERENT: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INCONSISTENT: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {message}", path.display())]
    Syntax { path: PathBuf, message: String },
    #[error("alignment {spec}: {message}")]
    PairResolution { spec: String, message: String },
    #[error("invalid output IRI: {0}")]
    OutputIri(String),
    #[error(transparent)]
    Integration(#[from] IntegrationError),
    #[error(transparent)]
    Alignment(#[from] AlignmentError),
}

type Result<T, E = CliError> = std::result::Result<T, E>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn load_ontology(path: &Path) -> Result<Ontology> {
    let (o, diagnostics) =
        parse_ontology(&read(path)?).map_err(|e| CliError::Syntax { path: path.to_owned(), message: e.to_string() })?;
    if diagnostics.ignored_total() > 0 {
        eprintln!("{}: skipped {} unsupported constructs", path.display(), diagnostics.ignored_total());
    }
    Ok(o)
}

fn load_alignment(path: &Path) -> Result<Alignment> {
    parse_alignment(&read(path)?).map_err(|e| CliError::Syntax { path: path.to_owned(), message: e.to_string() })
}

/// An `--alignment` argument: `i:j=path` or a bare path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignmentSpec {
    pub pair: Option<(usize, usize)>,
    pub path: PathBuf,
}

impl AlignmentSpec {
    pub fn parse(s: &str) -> AlignmentSpec {
        let explicit = s.split_once('=').and_then(|(pair, path)| {
            let (i, j) = pair.split_once(':')?;
            Some(((i.parse().ok()?, j.parse().ok()?), path))
        });
        match explicit {
            Some((pair, path)) => AlignmentSpec { pair: Some(pair), path: path.into() },
            None => AlignmentSpec { pair: None, path: s.into() },
        }
    }
}

/// The pair of ontologies `a` relates: the explicit one, checked against
/// the number of inputs, or the unique `(i, j)` whose IRIs match the
/// header.
fn resolve_pair(spec: &AlignmentSpec, a: &Alignment, ontologies: &[Ontology]) -> Result<(usize, usize)> {
    let fail = |message: String| CliError::PairResolution { spec: spec.path.display().to_string(), message };
    let n = ontologies.len();
    if let Some((i, j)) = spec.pair {
        if i == 0 || j == 0 || i > n || j > n || i == j {
            return Err(fail(format!("pair {i}:{j} is not valid for {n} ontologies")));
        }
        return Ok((i, j));
    }
    let find = |iri: &Iri| -> Result<usize> {
        let hits: Vec<usize> =
            ontologies.iter().enumerate().filter(|(_, o)| o.iri() == iri).map(|(k, _)| k + 1).collect();
        match hits[..] {
            [k] => Ok(k),
            [] => Err(fail(format!("no input ontology has IRI {iri}"))),
            _ => Err(fail(format!("several input ontologies have IRI {iri}"))),
        }
    };
    let pair = (find(&a.onto1)?, find(&a.onto2)?);
    if pair.0 == pair.1 {
        return Err(fail("both sides name the same ontology".into()));
    }
    Ok(pair)
}

pub fn integrate(args: &IntegrateArgs) -> Result<ExitCode> {
    let start = Instant::now();
    let base = Iri::new(&args.output_iri).map_err(|e| CliError::OutputIri(e.to_string()))?;
    let cfg = OutputConfig::new(base);

    let specs: Vec<AlignmentSpec> = args.alignments.iter().map(|s| AlignmentSpec::parse(s)).collect();
    let (ontologies, alignments) = rayon::join(
        || args.ontologies.par_iter().map(|p| load_ontology(p)).collect::<Result<Vec<_>>>(),
        || specs.par_iter().map(|s| load_alignment(&s.path)).collect::<Result<Vec<_>>>(),
    );
    let (ontologies, alignments) = (ontologies?, alignments?);
    let pairs = specs
        .iter()
        .zip(alignments)
        .map(|(spec, a)| Ok(PairAlignment::new(resolve_pair(spec, &a, &ontologies)?, a)))
        .collect::<Result<Vec<_>>>()?;
    let parsed = start.elapsed();

    let plan = IntegrationPlan::new(args.mode(), args.style(), args.topology())
        .with_threshold(args.threshold)
        .with_one_to_one(args.one_to_one)
        .with_repair(args.repair);
    let outcome = run_integration(&ontologies, &pairs, &cfg, &plan)?;
    let integrated = start.elapsed();

    let taxonomy = classify(&outcome.ontology);
    let unsat = unsatisfiable_classes(&outcome.ontology, &taxonomy);
    let verdict = is_consistent(&outcome.ontology, &taxonomy, &unsat);
    let reasoned = start.elapsed();

    write(&args.output, &serialize_ontology(&outcome.ontology))?;
    let timings = Timings::from_durations(parsed, integrated - parsed, reasoned - integrated, start.elapsed());
    let report = render(&compute_metrics(&outcome, &taxonomy, &unsat, &verdict, timings), args.report_format());
    match &args.report {
        Some(path) => write(path, &report)?,
        None => print!("{report}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn axiom_text(a: &ontobridge::Axiom) -> String {
    let mut s = String::new();
    write_axiom(&mut s, a);
    s
}

pub fn check(path: &Path) -> Result<ExitCode> {
    let o = load_ontology(path)?;
    let taxonomy = classify(&o);
    let unsat = unsatisfiable_classes(&o, &taxonomy);
    let verdict = is_consistent(&o, &taxonomy, &unsat);

    println!("unsatisfiable classes: {}", unsat.len());
    for c in &unsat.unsat {
        println!("  {c}");
    }
    if !unsat.is_coherent() {
        println!("justifications:");
        let justifier = Justifier::new(&o, &taxonomy);
        for root in &unsat.roots {
            let Ok(j) = justifier.justify(root) else { continue };
            println!("  {}: under disjoint {} and {}", j.class, j.disjoint.0, j.disjoint.1);
            for a in &j.axioms {
                println!("    {}", axiom_text(a));
            }
        }
    }
    println!("consistent: {}", if verdict.consistent { "yes" } else { "no" });
    for r in &verdict.reasons {
        println!("  {}", describe_reason(r));
    }

    let code = if !verdict.consistent {
        ExitCode::from(EXIT_INCONSISTENT)
    } else if !unsat.is_coherent() {
        ExitCode::from(EXIT_INCOHERENT)
    } else {
        ExitCode::SUCCESS
    };
    Ok(code)
}

pub fn filter_alignment(input: &Path, output: &Path, threshold: f64, one_to_one: bool) -> Result<ExitCode> {
    let a = load_alignment(input)?;
    let mut kept = threshold_filter(&a, threshold)?;
    if one_to_one {
        kept = to_one_to_one(&kept);
    }
    write(output, &serialize_alignment(&kept))?;
    println!("kept {} dropped {}", kept.len(), a.len() - kept.len());
    Ok(ExitCode::SUCCESS)
}
