mod commands;
mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use atoro_core::{DecomposeError, EnumerateError, SurgeryError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Limit(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Limit(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }
}

impl From<EnumerateError> for CliError {
    fn from(e: EnumerateError) -> Self {
        match e {
            EnumerateError::LimitExceeded { .. } => CliError::Limit(e.to_string()),
            EnumerateError::CorruptCheckpoint(_) => CliError::Parse(e.to_string()),
            EnumerateError::InvariantViolation(_) => CliError::Invariant(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<SurgeryError> for CliError {
    fn from(e: SurgeryError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<DecomposeError> for CliError {
    fn from(e: DecomposeError) -> Self {
        match e {
            DecomposeError::InconsistentGluing(_) => CliError::Parse(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Code,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Mode {
    #[default]
    Atoroidal,
    BasicPolyhedra,
    PrimeProjections,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChiralityArg {
    ModReflection,
    Oriented,
}

impl From<ChiralityArg> for atoro_core::Chirality {
    fn from(c: ChiralityArg) -> Self {
        match c {
            ChiralityArg::ModReflection => atoro_core::Chirality::ModReflection,
            ChiralityArg::Oriented => atoro_core::Chirality::Oriented,
        }
    }
}

/// Atoroidal 4-valent plane graphs: classification, decomposition, surgery,
/// enumeration and drawing.
#[derive(Debug, Parser)]
#[command(name = "atoro", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report connectivity, irreducibility, atoroidality and a witness curve.
    Classify {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Enumerate atoroidal graphs, basic polyhedra or prime projections.
    Enumerate {
        #[arg(long)]
        max_crossings: usize,
        #[arg(long, value_enum, default_value_t)]
        mode: Mode,
        #[arg(long, value_enum)]
        chirality: Option<ChiralityArg>,
        /// Where to write the checkpoint (or the code list for recombinations).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Continue from an earlier checkpoint.
        #[arg(long)]
        resume: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Decompose each graph into atoroidal pieces, or reassemble a tree file.
    Decompose {
        input: PathBuf,
        /// Treat the input as a decomposition tree and print the reassembled graph.
        #[arg(long)]
        reassemble: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// List, apply or invert surgeries on a single graph.
    Surgery {
        input: PathBuf,
        /// List all legal surgery moves.
        #[arg(long)]
        list: bool,
        /// Apply a move written as `surgery f<face> e<edge> <edge1> <edge2>`.
        #[arg(long)]
        apply: Option<String>,
        /// Cut open the simple vertex with this id.
        #[arg(long)]
        split: Option<usize>,
        /// List simple vertices with their triangles.
        #[arg(long)]
        simple: bool,
        /// List simple-vertex splits giving atoroidal graphs.
        #[arg(long)]
        predecessors: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Glue the complements of two vertex neighbourhoods.
    Recombine {
        first: PathBuf,
        first_vertex: usize,
        second: PathBuf,
        second_vertex: usize,
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..4))]
        rotation: u8,
        #[arg(long)]
        reflected: bool,
        /// Which pieces are allowed.
        #[arg(long, value_enum, default_value_t = Mode::PrimeProjections)]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Draw graphs as SVG.
    Render {
        input: PathBuf,
        /// Output file for one graph, or a directory for several.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(s) = std::env::var("ATORO_THREADS") {
        let n: usize = s.trim().parse().map_err(|_| CliError::Usage(format!("ATORO_THREADS must be a number, got {s:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = configure_threads().and_then(|_| commands::run(cli.command));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("atoro: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
