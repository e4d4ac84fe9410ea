mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ontobridge::{Mode, ReportFormat, Style, Topology};

#[derive(Debug, Parser)]
#[command(name = "ontobridge", version, about = "Integrate OWL ontologies using alignments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate ontologies and write the result plus a metrics report.
    Integrate(IntegrateArgs),
    /// Report unsatisfiable classes and consistency of one ontology.
    ///
    /// Exit status: 0 coherent and consistent, 1 incoherent, 3 inconsistent,
    /// 2 unreadable input.
    Check {
        ontology: PathBuf,
    },
    /// Apply a threshold and optionally a 1-to-1 filter to an alignment.
    FilterAlignment {
        input: PathBuf,
        output: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        threshold: f64,
        #[arg(long)]
        one_to_one: bool,
    },
}

#[derive(Debug, clap::Args)]
pub struct IntegrateArgs {
    /// Input ontology; repeat in order, indices start at 1.
    #[arg(long = "ontology", required = true)]
    pub ontologies: Vec<PathBuf>,
    /// `i:j=path`, or a bare path whose pair is found from the onto1/onto2
    /// IRIs in its header.
    #[arg(long = "alignment")]
    pub alignments: Vec<String>,
    #[arg(long, value_enum, default_value_t = ModeArg::Bridge)]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value_t = StyleArg::Refactor)]
    pub style: StyleArg,
    #[arg(long, value_enum, default_value_t = TopologyArg::NToN)]
    pub topology: TopologyArg,
    /// Pivot ontology for `one-to-n`.
    #[arg(long, default_value_t = 1)]
    pub pivot: usize,
    #[arg(long, default_value_t = 0.0)]
    pub threshold: f64,
    #[arg(long)]
    pub one_to_one: bool,
    /// Drop correspondences that make a pairwise bridge incoherent.
    #[arg(long)]
    pub repair: bool,
    #[arg(long, default_value = "http://example.org/integrated")]
    pub output_iri: String,
    #[arg(long)]
    pub output: PathBuf,
    /// Report destination; standard output if absent.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub report_format: FormatArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Aggregate,
    Bridge,
    FullMerge,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum StyleArg {
    Refactor,
    Reference,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TopologyArg {
    TwoToTwo,
    OneToN,
    NToN,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Json,
    Text,
}

impl IntegrateArgs {
    fn mode(&self) -> Mode {
        match self.mode {
            ModeArg::Aggregate => Mode::Aggregate,
            ModeArg::Bridge => Mode::Bridge,
            ModeArg::FullMerge => Mode::FullMerge,
        }
    }

    fn style(&self) -> Style {
        match self.style {
            StyleArg::Refactor => Style::Refactor,
            StyleArg::Reference => Style::Reference,
        }
    }

    fn topology(&self) -> Topology {
        match self.topology {
            TopologyArg::TwoToTwo => Topology::TwoToTwo,
            TopologyArg::OneToN => Topology::OneToN { pivot: self.pivot },
            TopologyArg::NToN => Topology::NToN,
        }
    }

    fn report_format(&self) -> ReportFormat {
        match self.report_format {
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Text => ReportFormat::Text,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Integrate(args) => commands::integrate(args),
        Command::Check { ontology } => commands::check(ontology),
        Command::FilterAlignment { input, output, threshold, one_to_one } => {
            commands::filter_alignment(input, output, *threshold, *one_to_one)
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::EXIT_INPUT)
        }
    }
}
