use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use magicpoly::Error;

mod commands;

/// Exact Ehrhart quasi-polynomials of magic squares and semi-magic hypercubes.
#[derive(Debug, Parser)]
#[command(name = "magicpoly", version)]
struct Cli {
    #[command(flatten)]
    run: RunConfig,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
pub struct RunConfig {
    /// Sample cache file (JSON lines)
    #[arg(
        long,
        global = true,
        env = "MAGICPOLY_CACHE",
        default_value = "magicpoly-samples.jsonl"
    )]
    pub cache: PathBuf,

    /// Do not read or write the sample cache
    #[arg(long, global = true)]
    pub no_cache: bool,

    /// Worker threads
    #[arg(long, global = true, default_value_t = default_workers())]
    pub workers: usize,

    /// Search node budget per count
    #[arg(long, global = true, default_value_t = magicpoly::count::DEFAULT_BUDGET)]
    pub budget: u64,

    /// Allow vertex enumeration for n >= 5 and large hypercubes
    #[arg(long, global = true)]
    pub allow_large: bool,

    /// JSON output
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,

    /// CSV output
    #[arg(long, global = true)]
    pub csv: bool,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, usize::from)
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count arrays of a class with a given line sum
    Count {
        /// Class, e.g. magic:3 or hypercube:3:3
        class: String,
        /// Line sum
        #[arg(long)]
        t: u64,
        /// Count arrays with all entries >= 1
        #[arg(long)]
        strict: bool,
    },
    /// Vertices of the class polytope
    Vertices { class: String },
    /// Reconstruct the counting quasi-polynomial
    Formula { class: String },
    /// Check degree, reciprocity and forced zeros
    Verify {
        class: String,
        /// Check Q(-n-t) = ±Q(t) for t = 0..=RANGE (default degree + period + 2)
        #[arg(long)]
        range: Option<u64>,
    },
    /// Vertex counts and denominator lcms of M_3, S_3, P_3, M_4, S_4, P_4
    Table,
}

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_BUDGET: u8 = 2;
pub const EXIT_FAIL: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    if cli.run.workers == 0 {
        eprintln!("error: --workers must be at least 1");
        return ExitCode::from(EXIT_USAGE);
    }
    if cli.run.budget < 1_000_000 {
        eprintln!("error: --budget must be at least 1000000");
        return ExitCode::from(EXIT_USAGE);
    }
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.run.workers)
        .build_global()
    {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }

    let result = match &cli.command {
        Command::Count { class, t, strict } => commands::count(&cli.run, class, *t, *strict),
        Command::Vertices { class } => commands::vertices(&cli.run, class),
        Command::Formula { class } => commands::formula(&cli.run, class),
        Command::Verify { class, range } => commands::verify(&cli.run, class, *range),
        Command::Table => commands::table(&cli.run),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } => ExitCode::from(EXIT_BUDGET),
                _ => ExitCode::from(EXIT_USAGE),
            }
        }
    }
}
