//! `tbn`: energies, stability, and kinetic barriers of thermodynamic binding
//! networks from the command line.
//!
//! Exit codes: 0 success, 1 property violated, 2 usage or input error,
//! 3 search budget exhausted.

mod commands;
mod suites;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tbn_core::TbnError;

use crate::suites::Suite;

#[derive(Parser, Debug)]
#[command(
    name = "tbn",
    version,
    about = "Exact energy and kinetic-barrier analysis for thermodynamic binding networks"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for suites run side by side (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Energy, bond count and polymer count of a named configuration.
    Energy(EnergyArgs),
    /// Whether a named configuration has the maximum number of bonds.
    Saturated(ConfArgs),
    /// Stable (minimum-energy) configurations.
    Stable(StableArgs),
    /// Least path height between two named configurations.
    Barrier(BarrierArgs),
    /// Replay and check a serialized path.
    Path(PathArgs),
    /// Generate a construction in the text format.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Run a named property suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct ConfArgs {
    /// TBN document, or `-` for standard input.
    pub file: PathBuf,
    #[arg(long)]
    pub conf: String,
}

#[derive(Args, Debug)]
pub struct EnergyArgs {
    #[command(flatten)]
    pub conf: ConfArgs,
    /// Bond strength as an exact fraction such as `2` or `3/2`; defaults to the document's `w`.
    #[arg(long)]
    pub w: Option<String>,
    /// Also report the physical free energy in kcal/mol.
    #[arg(long)]
    pub gibbs: bool,
    /// Domain length in bases.
    #[arg(long, default_value_t = 10)]
    pub length: u32,
    /// Strand concentration in mol/L.
    #[arg(long, default_value_t = 1.0)]
    pub conc: f64,
    /// Temperature in kelvin.
    #[arg(long, default_value_t = 298.15)]
    pub temp: f64,
}

#[derive(Args, Debug)]
pub struct BudgetArgs {
    /// Stop after this many finalized states.
    #[arg(long)]
    pub max_states: Option<u64>,
    /// Stop after this many seconds.
    #[arg(long)]
    pub timeout: Option<f64>,
}

#[derive(Args, Debug)]
pub struct StableArgs {
    /// TBN document, or `-` for standard input.
    pub file: PathBuf,
    #[arg(long)]
    pub w: Option<String>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Debug)]
pub struct BarrierArgs {
    /// TBN document, or `-` for standard input.
    pub file: PathBuf,
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
    #[arg(long)]
    pub w: Option<String>,
    /// Only visit saturated configurations.
    #[arg(long)]
    pub saturated: bool,
    /// Search bond configurations instead of polymer configurations; with
    /// `--saturated`, bonds may not be made or broken outright.
    #[arg(long)]
    pub bond_aware: bool,
    /// Visit only polymers up to this many monomers. Results become upper bounds.
    #[arg(long)]
    pub max_polymer_size: Option<usize>,
    /// Allow bond-aware search above the site cap.
    #[arg(long)]
    pub force: bool,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Args, Debug)]
pub struct PathArgs {
    /// TBN document, or `-` for standard input.
    pub file: PathBuf,
    /// Path JSON (a path object, or a barrier report with a witness), or `-`.
    #[arg(long)]
    pub path: PathBuf,
    #[arg(long)]
    pub w: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    /// A (z, c) translator cycle with `initial` and `triggered` configurations.
    Translator {
        #[arg(long)]
        z: usize,
        #[arg(long)]
        c: usize,
        /// Extra copies of the last top monomer.
        #[arg(long, default_value_t = 0)]
        catalysts: u32,
        /// Default bond strength written into the document.
        #[arg(long)]
        w: Option<String>,
    },
    /// An n x n grid gate with `base_H` and `base_V` configurations.
    Grid {
        #[arg(long)]
        n: usize,
        /// Number of catalyst monomers.
        #[arg(long, default_value_t = 0)]
        catalysts: u32,
        /// The autocatalytic network, with `auto_H` and `auto_V`.
        #[arg(long)]
        auto: bool,
        #[arg(long)]
        w: Option<String>,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Grid size, or translator size for the `(n, n^2)` suites.
    #[arg(long)]
    pub n: Option<usize>,
    /// Catalyst count.
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub z: Option<usize>,
    #[arg(long)]
    pub c: Option<usize>,
    /// Bond strength; suites over several strengths use only this one.
    #[arg(long)]
    pub w: Option<String>,
    /// Number of random TBNs.
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Longest path enumerated.
    #[arg(long)]
    pub max_len: Option<usize>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

/// What a command produced: the JSON report, its text rendering, and the
/// exit code.
pub struct Outcome {
    pub report: tbn_core::report::Report,
    pub text: String,
    pub code: u8,
}

fn exit_code(e: &TbnError) -> u8 {
    match e {
        TbnError::InvalidPath { .. } | TbnError::InvalidMove(_) => 1,
        TbnError::Budget(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli.command) {
        Ok(out) => {
            let body = match cli.format {
                Format::Json => out.report.to_json() + "\n",
                Format::Text => out.text,
            };
            // a closed pipe downstream is not an error of ours
            match std::io::stdout().lock().write_all(body.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
                _ => ExitCode::from(out.code),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
