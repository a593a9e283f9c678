//! `negacap`: reproduces the worked examples and parameter sweeps of the
//! library from the command line.

mod commands;
mod error;
mod grid;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use negacap::entcap::LogBase;
use negacap::families::Family;
use negacap::gaussian::Measure;

use crate::error::{CliError, CliResult};
use crate::grid::{parse_value, Grid};
use crate::output::Format;

#[derive(Parser)]
#[command(name = "negacap", version, about = "Entangling capacity of quantum operations and Gaussian block entanglement")]
struct Cli {
    /// Logarithm base: 2, e or 10.
    #[arg(long, global = true, default_value = "2", value_parser = parse_base)]
    base: LogBase,
    #[arg(long, global = true, default_value_t = 1.0)]
    hbar: f64,
    /// Tolerance for CP/TP and related predicates.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Reports default to JSON, sweeps to CSV.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

fn parse_base(s: &str) -> Result<LogBase, String> {
    s.parse().map_err(|e: negacap::Error| e.to_string())
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: negacap::Error| e.to_string())
}

fn parse_measure(s: &str) -> Result<Measure, String> {
    s.parse().map_err(|e: negacap::Error| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Operations on finite-dimensional channels.
    Channel {
        #[command(subcommand)]
        cmd: ChannelCmd,
    },
    /// Gaussian covariance matrices and symmetric states.
    Gaussian {
        #[command(subcommand)]
        cmd: GaussianCmd,
    },
    /// Check whether an input state attains the capacity upper bound.
    Saturate {
        /// Channel JSON file; omit when using --builtin.
        channel: Option<PathBuf>,
        #[arg(long, value_parser = parse_family, conflicts_with = "channel")]
        builtin: Option<Family>,
        #[arg(long, default_value = "0", value_parser = parse_value)]
        alpha: f64,
        #[arg(long, default_value = "0", value_parser = parse_value)]
        beta: f64,
        /// Matrix JSON: a density matrix, or a single column for a pure state.
        #[arg(long)]
        state: Option<PathBuf>,
    },
    /// Monte-Carlo check of the capacity bounds on random channels and states.
    Soundness {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepFamily {
    Rot22,
    Gencnot,
    Rot23,
    Rot33,
    Mix,
}

#[derive(Subcommand)]
enum ChannelCmd {
    /// Predicates, Γ-norm, capacity bounds and perfect-entangler flag.
    Analyze { file: PathBuf },
    /// Bounds and the spectrum of S^Γ₋†(I) over a parameter grid.
    Sweep {
        #[arg(long, value_enum)]
        family: SweepFamily,
        /// Value or start:stop:steps; multiples of pi allowed.
        #[arg(long, default_value = "0:pi:21")]
        alpha: Grid,
        #[arg(long, default_value = "0")]
        beta: Grid,
        /// Mixing weight of the first unitary (mix only).
        #[arg(long, default_value = "0.05:0.95:19")]
        p: Grid,
        /// Unitary pair used by mix.
        #[arg(long, default_value = "rot23", value_parser = parse_family)]
        pair: Family,
    },
    /// Write a built-in channel as JSON.
    Builtin {
        #[arg(long, value_enum)]
        family: SweepFamily,
        #[arg(long, default_value = "0", value_parser = parse_value)]
        alpha: f64,
        #[arg(long, default_value = "0", value_parser = parse_value)]
        beta: f64,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value = "rot23", value_parser = parse_family)]
        pair: Family,
    },
}

#[derive(Subcommand)]
enum GaussianCmd {
    /// Supremum of block entanglement over symmetric states.
    Sup {
        #[arg(value_name = "N")]
        n: usize,
        n1: usize,
        n2: usize,
        #[arg(long = "nu-d")]
        nu_d: Option<f64>,
        /// logneg or neg.
        #[arg(long, default_value = "logneg", value_parser = parse_measure)]
        measure: Measure,
    },
    /// f and E_L over a (gamma, r) grid at fixed nu_D.
    Sweep {
        #[arg(long = "n", value_name = "N")]
        n: usize,
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
        /// Defaults to hbar/2.
        #[arg(long = "nu-d")]
        nu_d: Option<f64>,
        #[arg(long, default_value = "1")]
        gamma: Grid,
        #[arg(long, default_value = "1e-4:1e4:41")]
        r: Grid,
        /// Space r linearly instead of geometrically.
        #[arg(long)]
        linear_r: bool,
    },
    /// Spectrum, validity and log-negativity of a covariance JSON file.
    Analyze {
        file: PathBuf,
        /// Modes whose momenta are reversed; defaults to the last mode.
        #[arg(long, value_delimiter = ',')]
        flip: Option<Vec<usize>>,
    },
    /// Localized two-block state of a symmetric-parameter JSON file.
    Block {
        file: PathBuf,
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
    },
}

/// Global settings shared by all commands.
pub struct Ctx {
    pub base: LogBase,
    pub hbar: f64,
    pub tol: f64,
}

fn configure_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("NEGACAP_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Validation(format!("NEGACAP_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Validation(e.to_string()))
}

fn run(cli: Cli) -> CliResult<()> {
    configure_threads()?;
    if !(cli.hbar > 0.0 && cli.hbar.is_finite()) {
        return Err(CliError::Validation(format!("--hbar must be positive, got {}", cli.hbar)));
    }
    if !(cli.tol >= 0.0) {
        return Err(CliError::Validation(format!("--tol must be nonnegative, got {}", cli.tol)));
    }
    let ctx = Ctx { base: cli.base, hbar: cli.hbar, tol: cli.tol };
    let out = match cli.command {
        Command::Channel { cmd } => match cmd {
            ChannelCmd::Analyze { file } => commands::channel::analyze(&ctx, &file)?,
            ChannelCmd::Sweep { family, alpha, beta, p, pair } => {
                commands::channel::sweep(&ctx, family, &alpha, &beta, &p, pair)?
            }
            ChannelCmd::Builtin { family, alpha, beta, p, pair } => {
                commands::channel::builtin(family, alpha, beta, p, pair)?
            }
        },
        Command::Gaussian { cmd } => match cmd {
            GaussianCmd::Sup { n, n1, n2, nu_d, measure } => commands::gaussian::sup(&ctx, n, n1, n2, nu_d, measure)?,
            GaussianCmd::Sweep { n, n1, n2, nu_d, gamma, r, linear_r } => {
                commands::gaussian::sweep(&ctx, n, n1, n2, nu_d, &gamma, &r, linear_r)?
            }
            GaussianCmd::Analyze { file, flip } => commands::gaussian::analyze(&ctx, &file, flip)?,
            GaussianCmd::Block { file, n1, n2 } => commands::gaussian::block(&ctx, &file, n1, n2)?,
        },
        Command::Saturate { channel, builtin, alpha, beta, state } => {
            commands::saturate::run(&ctx, channel.as_deref(), builtin, alpha, beta, state.as_deref())?
        }
        Command::Soundness { seed, trials } => commands::soundness::run(&ctx, seed, trials)?,
    };
    out.emit(cli.format, cli.out.as_deref())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("negacap: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
