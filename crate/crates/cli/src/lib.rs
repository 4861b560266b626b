//! The `intcat` command-line tool as a library: document parsing, resolution
//! into library values, and the commands that produce verdicts.

pub mod commands;
pub mod document;
pub mod error;
pub mod export;
pub mod goldens;
pub mod report;
pub mod resolve;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use intcat_core::cosmos::Cosmos;

use commands::{LimitMethod, Outcome, RepMethod};
pub use error::CliError;
use report::Format;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportArg {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CosmosArg {
    Finset,
    Fincat,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RepMethodArg {
    Direct,
    Elements,
    Shifted,
    UndTensors,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LimitMethodArg {
    Direct,
    Elements,
    Shifted,
    Conical,
    UndTensors,
    All,
}

/// Deciders for enriched and internal categories at finite scale.
#[derive(Debug, Parser)]
#[command(name = "intcat", version)]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    report: ReportArg,
    /// Directory searched for documents named without a path, such as `P1`.
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Load a document and run every validator.
    Validate { file: String },
    /// Build categories of elements and certify the unit and counit.
    Groth {
        file: String,
        #[arg(long)]
        presheaf: Option<String>,
    },
    /// Decide whether internal functors are discrete fibrations.
    Fibration {
        file: String,
        #[arg(long)]
        functor: Option<String>,
    },
    /// List the fiber of a discrete fibration over an object.
    Fiber {
        file: String,
        #[arg(long)]
        functor: String,
        #[arg(long)]
        object: String,
    },
    /// Compare internal and enriched terminality.
    Terminal {
        file: String,
        /// Only this problem; repeat to pick several. A `kind:` prefix is ignored.
        #[arg(long)]
        problem: Vec<String>,
    },
    /// Decide representability problems.
    #[command(alias = "check")]
    Representable {
        file: String,
        /// Only this problem; repeat to pick several. A `kind:` prefix is ignored.
        #[arg(long)]
        problem: Vec<String>,
        #[arg(long, value_enum, default_value = "all")]
        method: RepMethodArg,
        /// Ignore the candidate and search every object and element.
        #[arg(long)]
        search: bool,
    },
    /// Decide weighted-limit problems.
    WeightedLimit {
        file: String,
        /// Only this problem; repeat to pick several. A `kind:` prefix is ignored.
        #[arg(long)]
        problem: Vec<String>,
        #[arg(long, value_enum, default_value = "all")]
        method: LimitMethodArg,
    },
    /// Search for tensors.
    Tensor {
        file: String,
        /// Only this problem; repeat to pick several. A `kind:` prefix is ignored.
        #[arg(long)]
        problem: Vec<String>,
    },
    /// Check document and adjunction round trips.
    Roundtrip { file: String },
    /// Print a random document.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest number of cells in a generated cosmos object.
        #[arg(long, default_value_t = 4)]
        cap: usize,
        #[arg(long, default_value_t = 3)]
        max_objects: usize,
        #[arg(long, value_enum, default_value = "finset")]
        cosmos: CosmosArg,
    },
}

/// Finds the document: the path itself, with `.json` appended, or inside
/// the fixtures directory.
fn locate(file: &str, fixtures: Option<&Path>) -> Result<PathBuf, CliError> {
    let mut candidates = vec![PathBuf::from(file), PathBuf::from(format!("{file}.json"))];
    if let Some(dir) = fixtures {
        candidates.push(dir.join(file));
        candidates.push(dir.join(format!("{file}.json")));
    }
    candidates
        .into_iter()
        .find(|p| p.is_file())
        .ok_or_else(|| CliError::Usage(format!("no document `{file}`")))
}

fn load(
    file: &str,
    fixtures: Option<&Path>,
) -> Result<(document::Document, resolve::Instance), CliError> {
    let path = locate(file, fixtures)?;
    let text = std::fs::read_to_string(&path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let doc = document::parse(&text)?;
    let inst = resolve::resolve(&doc)?;
    Ok((doc, inst))
}

/// Runs a parsed command line, returning the text to print and the exit code.
pub fn run(cli: &Cli) -> Result<(String, i32), CliError> {
    let format = match cli.report {
        ReportArg::Json => Format::Json,
        ReportArg::Text => Format::Text,
    };
    let fx = cli.fixtures.as_deref();
    let outcome: Outcome = match &cli.command {
        Command::Gen {
            seed,
            cap,
            max_objects,
            cosmos,
        } => {
            let cosmos = match cosmos {
                CosmosArg::Finset => Cosmos::FinSet,
                CosmosArg::Fincat => Cosmos::FinCat,
            };
            let doc = commands::generate(*seed, cosmos, *max_objects, *cap)?;
            return Ok((document::emit(&doc), 0));
        }
        Command::Validate { file } => commands::validate(&load(file, fx)?.1),
        Command::Groth { file, presheaf } => {
            commands::groth_cmd(&load(file, fx)?.1, presheaf.as_deref())?
        }
        Command::Fibration { file, functor } => {
            commands::fibration_cmd(&load(file, fx)?.1, functor.as_deref())?
        }
        Command::Fiber {
            file,
            functor,
            object,
        } => commands::fiber_cmd(&load(file, fx)?.1, functor, object)?,
        Command::Terminal { file, problem } => commands::terminal_cmd(&load(file, fx)?.1, problem)?,
        Command::Representable {
            file,
            problem,
            method,
            search,
        } => {
            let method = match method {
                RepMethodArg::Direct => RepMethod::Direct,
                RepMethodArg::Elements => RepMethod::Elements,
                RepMethodArg::Shifted => RepMethod::Shifted,
                RepMethodArg::UndTensors => RepMethod::UndTensors,
                RepMethodArg::All => RepMethod::All,
            };
            commands::representable_cmd(&load(file, fx)?.1, problem, method, *search)?
        }
        Command::WeightedLimit {
            file,
            problem,
            method,
        } => {
            let method = match method {
                LimitMethodArg::Direct => LimitMethod::Direct,
                LimitMethodArg::Elements => LimitMethod::Elements,
                LimitMethodArg::Shifted => LimitMethod::Shifted,
                LimitMethodArg::Conical => LimitMethod::Conical,
                LimitMethodArg::UndTensors => LimitMethod::UndTensors,
                LimitMethodArg::All => LimitMethod::All,
            };
            commands::weighted_limit_cmd(&load(file, fx)?.1, problem, method)?
        }
        Command::Tensor { file, problem } => commands::tensor_cmd(&load(file, fx)?.1, problem)?,
        Command::Roundtrip { file } => {
            let (doc, inst) = load(file, fx)?;
            commands::roundtrip_cmd(&doc, &inst)?
        }
    };
    Ok((report::render(&outcome.report, format), outcome.exit))
}
