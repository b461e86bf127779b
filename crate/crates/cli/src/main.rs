//! `llc`: JSON front end to the local Langlands toolkit.

mod commands;
mod error;

use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "llc", version, about = "Exact local Langlands computations for GL(n) over p-adic fields")]
pub struct Cli {
    /// Label registry (JSON array); defaults to the trivial registry.
    #[arg(long, global = true)]
    pub registry: Option<PathBuf>,
    /// Residue characteristic.
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Residue degree, so that q = p^f.
    #[arg(long, global = true, default_value_t = 1)]
    pub f: u32,
    /// Valuation of the different.
    #[arg(long, global = true, default_value_t = 0, allow_negative_numbers = true)]
    pub d: i64,
    /// Conductor exponent of the additive character.
    #[arg(long = "npsi", global = true, default_value_t = 0, allow_negative_numbers = true)]
    pub npsi: i64,
    /// p-adic working precision for the algebra commands.
    #[arg(long, global = true, default_value_t = 6)]
    pub precision: u32,
    /// Payload document, or `-` for standard input.
    #[arg(long, global = true)]
    pub input: Option<String>,
    /// Where to write the result, or `-` for standard output.
    #[arg(long, global = true, default_value = "-")]
    pub output: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Direction {
    ToWd,
    FromRep,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Mode {
    Artin,
    EpsDegree,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classification data (Q-form) to its Weil–Deligne representation.
    Rec,
    /// Weil–Deligne representation to classification data.
    RecInverse,
    /// Satake parameters to classification data, or back.
    Satake {
        #[arg(long, value_enum)]
        direction: Direction,
    },
    /// L-factor of a representation.
    Lfactor,
    /// Pair L-factor of `{left, right}`.
    LfactorPair,
    /// Epsilon factor of a representation.
    Eps,
    /// Conductor of a representation.
    Conductor {
        #[arg(long, value_enum, default_value = "artin")]
        mode: Mode,
    },
    /// GL-side against Weil–Deligne-side predicates.
    Dictionary,
    /// The form-swapping involution, optionally resolved back to Q-form.
    Involution {
        #[arg(long)]
        resolve: bool,
    },
    /// Contragredient or dual.
    Dual,
    /// Predicates of classification data or of a Weil–Deligne representation.
    ClassifyPredicates,
    /// Check the characterising properties of rec on `{class, chi}`.
    Verify,
    /// Witt vector arithmetic.
    Witt {
        #[arg(long)]
        length: usize,
        /// Q, Z, Z/m, Fp or Fq:deg.
        #[arg(long, default_value = "Q")]
        ring: String,
    },
    /// Cyclic division algebra with invariant r/s.
    Skewfield {
        #[arg(long, allow_negative_numbers = true)]
        r: i64,
        #[arg(long)]
        s: u32,
    },
    /// Standard Dieudonné module of given rank and étale height.
    Dieudonne {
        #[arg(long)]
        rank: usize,
        #[arg(long = "etale-height")]
        etale_height: usize,
        /// Degree over F_q of the residue field k.
        #[arg(long, default_value_t = 1)]
        degree: u32,
    },
}

fn emit(doc: &serde_json::Value, target: &str) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(doc).expect("JSON values always serialise");
    text.push('\n');
    if target == "-" {
        std::io::stdout().write_all(text.as_bytes())?;
    } else {
        std::fs::write(target, text)?;
    }
    Ok(())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let err = CliError::Usage(e.to_string().trim_end().to_string());
            let _ = emit(&err.to_json(), "-");
            std::process::exit(err.exit_code());
        }
    };
    let result = commands::run(&cli).and_then(|doc| emit(&doc, &cli.output));
    if let Err(err) = result {
        let _ = emit(&err.to_json(), "-");
        std::process::exit(err.exit_code());
    }
}
