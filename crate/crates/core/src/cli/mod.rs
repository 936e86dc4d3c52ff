//! Command-line front end. `run` is the whole program minus process exit so
//! it can be driven from tests.

mod analyses;
mod output;
mod scan;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{error::ErrorKind, Args, Parser, Subcommand, ValueEnum};

use crate::balance::{DEFAULT_N_MAX, DEFAULT_TOLERANCE};
use crate::engine::DEFAULT_MAX_CELLS;
use crate::error::{Error, Result};
use crate::parts::PartSet;
use crate::spectral::GAP_TOLERANCE;

pub use analyses::{parse_point, DEFAULT_INTERLACE_TOLERANCE};
pub use output::{CsvTable, Rendered};

pub const MAX_CELLS_VAR: &str = "COMPBAL_MAX_CELLS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "compbal", version, about = "Compositions with parts in a finite set, indexed by the multiplicity of the largest part")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct PartsArg {
    /// Comma-separated part set, e.g. 1,3.
    #[arg(long, allow_hyphen_values = true, value_name = "a,b,c")]
    parts: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a part set and report its gcds.
    Validate {
        #[command(flatten)]
        parts: PartsArg,
    },
    /// Generating polynomials for n = 0..=N.
    Table {
        #[command(flatten)]
        parts: PartsArg,
        #[arg(long)]
        n_max: usize,
        /// Evaluate at a point: a complex literal or root:Q:T.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Residue distribution modulo q and the balance verdict.
    Balance {
        #[command(flatten)]
        parts: PartsArg,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        n_max: usize,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Roots of the characteristic polynomials at the q-th roots of unity.
    Roots {
        #[command(flatten)]
        parts: PartsArg,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = GAP_TOLERANCE)]
        tol: f64,
    },
    /// Real-rootedness, log-concavity, interlacing and values at -1.
    Properties {
        #[command(flatten)]
        parts: PartsArg,
        #[arg(long)]
        n_max: usize,
        /// Interlacing is checked between n and n + M; defaults to the largest part.
        #[arg(long = "mod", value_name = "M")]
        modulus: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_INTERLACE_TOLERANCE)]
        tol: f64,
    },
    /// Minimal linear recurrence of the total counts.
    Minrec {
        #[command(flatten)]
        parts: PartsArg,
        #[arg(long)]
        terms: usize,
    },
    /// Compare the recurrence against brute-force enumeration.
    OracleCheck {
        #[command(flatten)]
        parts: PartsArg,
        #[arg(long)]
        n_max: usize,
    },
    /// Run a batch of jobs from a JSON file.
    Scan {
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
    },
}

/// Maps a library error to the process exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NoConvergence(_) | Error::Overflow => 2,
        Error::ResourceLimit { .. } | Error::TooLarge { .. } => 3,
        _ => 1,
    }
}

pub fn parse_parts(text: &str) -> Result<PartSet> {
    let raw = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>()
                .map_err(|_| Error::InvalidArgument(format!("not an integer part: {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    PartSet::new(&raw)
}

pub fn max_cells_from_env() -> Result<u128> {
    match std::env::var(MAX_CELLS_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("{MAX_CELLS_VAR} must be a non-negative integer"))),
        Err(_) => Ok(DEFAULT_MAX_CELLS),
    }
}

/// Runs the program on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    let (rendered, status) = match execute(&cli.command) {
        Ok(done) => done,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::File::create(path)
            .and_then(|mut f| emit(&rendered, cli.format, &mut f)),
        None => emit(&rendered, cli.format, out),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return 1;
    }
    status
}

fn emit(rendered: &Rendered, format: Format, sink: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Json => {
            let text = serde_json::to_string_pretty(&rendered.json).map_err(std::io::Error::other)?;
            writeln!(sink, "{text}")
        }
        Format::Csv => rendered.csv.write_to(sink),
    }
}

/// Output plus the exit status to report after writing it.
fn execute(command: &Command) -> Result<(Rendered, i32)> {
    let ok = |r: Rendered| Ok((r, 0));
    match command {
        Command::Validate { parts } => ok(analyses::validate(&parse_parts(&parts.parts)?)),
        Command::Table { parts, n_max, at } => {
            let set = parse_parts(&parts.parts)?;
            let at = at.as_deref().map(parse_point).transpose()?;
            ok(analyses::table(&set, *n_max, at, max_cells_from_env()?)?)
        }
        Command::Balance { parts, q, r, n_max, tol } => {
            let set = parse_parts(&parts.parts)?;
            ok(analyses::balance(&set, *q, *r, *n_max, *tol)?)
        }
        Command::Roots { parts, q, tol } => {
            ok(analyses::roots(&parse_parts(&parts.parts)?, *q, *tol)?)
        }
        Command::Properties { parts, n_max, modulus, tol } => {
            let set = parse_parts(&parts.parts)?;
            let modulus = modulus.unwrap_or(set.m());
            ok(analyses::properties(&set, *n_max, modulus, *tol, max_cells_from_env()?)?)
        }
        Command::Minrec { parts, terms } => ok(analyses::minrec(&parse_parts(&parts.parts)?, *terms)?),
        Command::OracleCheck { parts, n_max } => {
            let set = parse_parts(&parts.parts)?;
            let (rendered, agree) = analyses::oracle_check(&set, *n_max, max_cells_from_env()?)?;
            Ok((rendered, if agree { 0 } else { 1 }))
        }
        Command::Scan { config } => scan::run_file(config, max_cells_from_env()?),
    }
}
