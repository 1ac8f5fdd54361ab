//! `xychain`: batch sweeps over the periodic XY chain in a transverse field.

mod commands;
mod error;
mod grid;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::error::Result;
use crate::grid::Grid;
use crate::table::Format;

#[derive(Debug, Parser)]
#[command(name = "xychain", version, about = "Spectra, geometric entanglement and scaling fits for the XY ring")]
struct Cli {
    /// Output file; a `<file>.manifest.json` is written next to it. Stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output encoding; `fit` defaults to json, everything else to csv.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Worker threads for grid sweeps (0 picks one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Many-body levels, or the signed gap between the two parity sectors.
    Spectrum(SpectrumArgs),
    /// Geometric entanglement of named target states over a parameter grid.
    Entangle(EntangleArgs),
    /// Entanglement density of the infinite ring and its field derivative.
    Thermo(ThermoArgs),
    /// Finite-size fits: the `1/N` table, the `nu` estimate, or a series file.
    Fit(FitArgs),
    /// Brute-force regression fixtures for rings of at most 14 spins.
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Anisotropy values.
    #[arg(long)]
    pub r: Grid,
    /// Chain lengths.
    #[arg(long)]
    pub n: Grid,
    /// Field values.
    #[arg(long, default_value = "0:2:201")]
    pub h: Grid,
    /// Emit `E_0 - E_1/2` and the ground sector instead of all levels.
    #[arg(long)]
    pub gap: bool,
    /// One row per field value with a column per level.
    #[arg(long, conflicts_with = "gap")]
    pub wide: bool,
}

#[derive(Debug, Args)]
pub struct EntangleArgs {
    #[arg(long)]
    pub r: Grid,
    #[arg(long)]
    pub h: Grid,
    #[arg(long)]
    pub n: Grid,
    /// Registered state name (`half`, `zero`, `ground`, `superposition:<t>`); repeatable.
    #[arg(long)]
    pub state: Vec<String>,
    /// Mixing angles of `cos t Psi_1/2 + sin t Psi_0`, added as extra states.
    #[arg(long, value_delimiter = ',')]
    pub superposition: Vec<f64>,
    /// Also report `d(density)/dh` by finite differences.
    #[arg(long)]
    pub derivative: bool,
}

#[derive(Debug, Args)]
pub struct ThermoArgs {
    #[arg(long)]
    pub r: Grid,
    #[arg(long, default_value = "0:2:201", conflicts_with = "divergence")]
    pub h: Grid,
    /// Report the logarithmic divergence of `dE/dh` at the critical field instead.
    #[arg(long)]
    pub divergence: bool,
}

#[derive(Debug, Args)]
#[group(skip)]
#[command(group = ArgGroup::new("mode").required(true).args(["table1", "nu", "series"]))]
pub struct FitArgs {
    /// `1/N` expansion of both sector densities at r = 0.1, 0.2, ..., 1.
    #[arg(long)]
    pub table1: bool,
    /// Critical exponent from the growth of the derivative peak.
    #[arg(long, requires = "r")]
    pub nu: bool,
    /// Fit an `n,value` series CSV.
    #[arg(long)]
    pub series: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = SeriesModel::InverseN)]
    pub model: SeriesModel,
    #[arg(long)]
    pub r: Option<Grid>,
    /// Field for the `1/N` table.
    #[arg(long, default_value_t = 1.0)]
    pub h: f64,
    /// Chain lengths for the `nu` fit.
    #[arg(long)]
    pub sizes: Option<Grid>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesModel {
    InverseN,
    LogN,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, value_enum)]
    pub fixture: Fixture,
    #[arg(long)]
    pub r: Grid,
    #[arg(long)]
    pub h: Grid,
    #[arg(long)]
    pub n: Grid,
    /// Ansatz angles on `[0, pi]` for the overlap fixture.
    #[arg(long, default_value_t = 33)]
    pub xi_points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fixture {
    /// Every level with its parity (n <= 10).
    Spectrum,
    /// Uniform product-state overlaps of the lowest state in each parity.
    Overlaps,
    /// Uniform and unrestricted product-state maxima of the same states.
    Lambda,
}

fn run(cli: Cli, arguments: &[String]) -> Result<()> {
    let started = Instant::now();
    let format = cli.format.unwrap_or(match cli.command {
        Command::Fit(_) => Format::Json,
        _ => Format::Csv,
    });
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build()?;
    let table = pool.install(|| match &cli.command {
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Entangle(a) => commands::entangle(a),
        Command::Thermo(a) => commands::thermo(a),
        Command::Fit(a) => commands::fit(a),
        Command::Oracle(a) => commands::oracle(a),
    })?;
    table::emit(&table, format, cli.out.as_deref(), arguments, started)
}

fn main() -> ExitCode {
    let arguments: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    match run(cli, &arguments) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("xychain: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
