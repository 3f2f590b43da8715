//! `operad-forge`: compose, normalize, verify, count and render from the
//! command line. Results are canonical JSON (sorted keys, reduced
//! rationals), so equal inputs give byte-identical outputs.
//!
//! Exit codes: 0 success, 1 a verification suite failed, 2 unreadable,
//! invalid or unsupported input, 3 arity, color or dimension mismatch.

mod commands;
mod compose;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use operad_forge::suites::{Suite, SuiteParams};

use crate::compose::Mode;
use crate::io::{canonical, emit, CliResult, Failure};

#[derive(Parser, Debug)]
#[command(name = "operad-forge", version, about = "Exact Swiss-cheese operad toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compose the first input with the remaining ones.
    Compose {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Outer element, then one file per input slot.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the normal form of a W-tree, level sequence or SC^{h∞} element.
    Normalize {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a seeded property suite; exit 1 if any check fails.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        cases: u64,
        /// Geometric dimension (axioms) or maximal algebra dimension.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value_t = 2)]
        prime: u32,
        /// Arity cutoff of the discrete operad tables.
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(2..))]
        max_arity: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count actions, algebra maps and module structures for an algebra B.
    Count {
        algebra: PathBuf,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(2..))]
        max_arity: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a configuration, W-tree or SC^{h∞} element as SVG.
    Render {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    Suite::parse(s).ok_or_else(|| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("unknown suite {s:?}; expected one of {}", names.join(", "))
    })
}

/// Caps the global rayon pool at `OPERAD_FORGE_THREADS` when set.
fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("OPERAD_FORGE_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::input("invalid", None, format!("OPERAD_FORGE_THREADS={raw:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::input("invalid", None, e))
}

fn run(cli: Cli) -> CliResult<u8> {
    configure_threads()?;
    match cli.command {
        Command::Compose { mode, inputs, out } => {
            let v = compose::compose(mode, &inputs)?;
            emit(out.as_ref(), &canonical(&v))?;
        }
        Command::Normalize { input, out } => {
            let v = compose::normalize(&input)?;
            emit(out.as_ref(), &canonical(&v))?;
        }
        Command::Verify { suite, seed, cases, dim, prime, max_arity, out } => {
            let params = SuiteParams { seed, cases: cases as usize, dim, prime, max_arity: max_arity as usize };
            let report = commands::verify(suite, &params)?;
            let v = serde_json::to_value(&report).expect("reports serialize");
            emit(out.as_ref(), &canonical(&v))?;
            if !report.passed {
                return Ok(1);
            }
        }
        Command::Count { algebra, dim, max_arity, out } => {
            let v = commands::count(&algebra, dim, max_arity as usize)?;
            emit(out.as_ref(), &canonical(&v))?;
        }
        Command::Render { input, out } => {
            let svg = commands::render(&input)?;
            emit(out.as_ref(), &svg)?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, diagnostic }) => {
            eprint!("{}", canonical(&diagnostic));
            ExitCode::from(code)
        }
    }
}
