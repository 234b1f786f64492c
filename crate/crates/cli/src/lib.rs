//! File formats and the `diamond` command-line tool for `diamond-core`.
//!
//! ```text
//! diamond region --preset I --protocol cf-cmac --out r.csv
//! diamond compare --preset I --protocol cf-bc --against outer
//! diamond hull --channel ch.json --protocol mdf,cf-bc,cf-cmac --format json
//! ```

pub mod config;
pub mod error;
pub mod format;
pub mod kgrid;
pub mod manifest;
mod run;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use error::{exit, CliError};
pub use run::execute;

#[derive(Debug, Parser)]
#[command(name = "diamond", version, about = "Rate regions of the two-way diamond relay channel")]
pub struct Cli {
    /// Only print errors.
    #[arg(short, long, global = true, conflicts_with = "verbose")]
    pub quiet: bool,

    /// More log output on stderr (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cut-set outer bound.
    Outer(SweepArgs),
    /// Achievable region of one protocol.
    Region {
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long)]
        protocol: String,
    },
    /// Checks that a protocol region lies inside the outer bound or another
    /// protocol's region. Exits 1 if any ray fails.
    Compare {
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long)]
        protocol: String,
        /// `outer` or a protocol name.
        #[arg(long, default_value = "outer")]
        against: String,
        #[arg(long, default_value_t = 1e-6, allow_hyphen_values = true)]
        tolerance: f64,
    },
    /// Convex hull of several protocol regions.
    Hull {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Comma-separated protocols; defaults to every protocol the channel supports.
        #[arg(long, value_delimiter = ',')]
        protocol: Vec<String>,
    },
    /// Lists the built-in channels.
    Presets {
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Channel-config JSON file.
    #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
    pub channel: Option<PathBuf>,

    /// Built-in channel: I, II, III, direct_fig6 or interfering_fig7.
    #[arg(long)]
    pub preset: Option<String>,

    /// `start:stop:count[,log|,lin]` or a comma list of ratios `R_b / R_a`.
    #[arg(long, default_value = "default")]
    pub k_grid: String,

    /// Overrides the convention in the channel file.
    #[arg(long)]
    pub convention: Option<String>,

    /// Parameter grid points per axis for the alternating-relay search.
    #[arg(long, default_value_t = 11)]
    pub ardf_grid: usize,

    /// Output path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Defaults to `json` for `.json` outputs and `csv` otherwise.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn resolve(explicit: Option<Format>, out: Option<&std::path::Path>) -> Format {
        explicit.unwrap_or_else(|| match out.and_then(|p| p.extension()) {
            Some(ext) if ext == "json" => Format::Json,
            _ => Format::Csv,
        })
    }
}

fn init_logging(quiet: bool, verbose: u8) {
    let level = match (quiet, verbose) {
        (true, _) => log::LevelFilter::Error,
        (false, 0) => log::LevelFilter::Warn,
        (false, 1) => log::LevelFilter::Info,
        (false, 2) => log::LevelFilter::Debug,
        _ => log::LevelFilter::Trace,
    };
    let _ = env_logger::Builder::new().filter_level(level).target(env_logger::Target::Stderr).try_init();
    log::set_max_level(level);
}

/// Runs the tool on `argv` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    init_logging(cli.quiet, cli.verbose);
    let args = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(cli.command, args) {
        Ok(()) => exit::OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
