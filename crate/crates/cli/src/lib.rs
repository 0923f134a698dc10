//! File formats, reports and the command-line driver for `lexmorse-core`.

pub mod commands;
pub mod error;
pub mod formats;
pub mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use lexmorse_core::multiset::Lambda;

pub use commands::{Action, Config, Source, DEFAULT_MAX_FACES, MAX_N};
pub use error::CliError;
pub use formats::ParseError;
pub use report::Report;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "lexmorse",
    version,
    about = "Lexicographic discrete Morse functions on order complexes"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the lexicographic matching of a labeled bounded poset and check it
    Analyze {
        /// File of `cover <u> <v>` lines
        poset: PathBuf,
        /// File of `label <u> <v> <int>` lines
        labels: PathBuf,
    },
    /// Work with the multiset partition poset of a partition lambda
    Multiset {
        /// Parts of lambda, e.g. 2,1,1
        #[arg(long, value_parser = Lambda::parse)]
        lambda: Lambda,
        #[arg(value_enum)]
        action: Action,
        /// Run `cancel` on shapes other than hooks
        #[arg(long)]
        force: bool,
    },
    /// Search for solutions of the integer partition puzzle
    Puzzle {
        #[arg(long)]
        max_total: usize,
        #[arg(long, default_value_t = 5)]
        max_parts: usize,
        /// Require distinct parts
        #[arg(long)]
        distinct: bool,
    },
    /// Build the matching of a shelling given as an ordered facet list
    Shelling {
        /// File of `facet <v> ...` lines in shelling order
        facets: PathBuf,
    },
}

/// What the process should print and return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn execute(cli: &Cli, config: &Config) -> Result<Report, CliError> {
    Ok(match &cli.command {
        Command::Analyze { poset, labels } => {
            let (p, l) = (read(poset)?, read(labels)?);
            let (pn, ln) = (poset.display().to_string(), labels.display().to_string());
            Report::Analyze(commands::analyze(
                Source {
                    name: &pn,
                    text: &p,
                },
                Source {
                    name: &ln,
                    text: &l,
                },
                config,
            )?)
        }
        Command::Multiset {
            lambda,
            action,
            force,
        } => Report::Multiset(Box::new(commands::multiset(
            lambda, *action, *force, config,
        )?)),
        Command::Puzzle {
            max_total,
            max_parts,
            distinct,
        } => Report::Puzzle(commands::puzzle(*max_total, *max_parts, *distinct)),
        Command::Shelling { facets } => {
            let text = read(facets)?;
            let name = facets.display().to_string();
            Report::Shelling(commands::shelling(
                Source {
                    name: &name,
                    text: &text,
                },
                config,
            )?)
        }
    })
}

/// Parses arguments and runs a command. Exit codes: 0 success, 1 usage,
/// parse or precondition errors, 2 invariant violations.
pub fn run<I, T>(args: I, config: Result<Config, CliError>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let fail = |e: CliError| Outcome {
        code: e.exit_code(),
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let config = match config {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    match execute(&cli, &config) {
        Ok(report) => Outcome {
            code: if report.violations().is_empty() { 0 } else { 2 },
            stdout: match cli.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            },
            stderr: String::new(),
        },
        Err(e) => fail(e),
    }
}
