//! `toric-syz`: fibers, complexes, Betti numbers and resolution fragments of
//! affine semigroups from the command line.

mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use toric_syz::{FieldKind, TermOrder};

#[derive(Parser, Debug)]
#[command(name = "toric-syz", version, about = "Minimal generators and syzygies of toric ideals from semigroup fibers")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Term order used to sort fibers: degrevlex or lex.
    #[arg(long, global = true, default_value = "degrevlex")]
    pub order: TermOrder,
    /// Coefficient field: `rational` or `prime:P`.
    #[arg(long, global = true, default_value = "rational")]
    pub field: FieldKind,
    /// Directory for persistent chain bases.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check that the semigroup is combinatorially finite and print a grading.
    Validate { file: PathBuf },
    /// List the monomials of degree m.
    Fiber {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        degree: String,
    },
    /// Export the complex ∇_m.
    Nabla {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        degree: String,
    },
    /// Export the complex Δ_m.
    Delta {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        degree: String,
    },
    /// Reduced Betti numbers of ∇_m.
    Betti {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        degree: String,
        #[arg(long, default_value_t = 1)]
        jmax: usize,
        /// Also compute the ranks on Δ_m and compare.
        #[arg(long)]
        delta_crosscheck: bool,
    },
    /// Write a binomial in terms of minimal generators.
    Minimalize {
        file: PathBuf,
        /// Exponent vector of one monomial, e.g. 0,2,6,0.
        #[arg(long)]
        lead: String,
        /// Exponent vector of the other monomial.
        #[arg(long)]
        trail: String,
    },
    /// Collect the minimal generators and syzygies living in one degree.
    Harvest {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        degree: String,
        #[arg(long, default_value_t = 2)]
        max_level: usize,
    },
    /// Betti numbers of every degree up to a weight bound.
    Scan {
        file: PathBuf,
        /// Upper bound on w·m, an integer or fraction.
        #[arg(long)]
        bound: String,
        #[arg(long, default_value_t = 1)]
        jmax: usize,
        #[arg(long)]
        delta_crosscheck: bool,
    },
    /// Re-check a fragment written by `harvest`.
    Verify { file: PathBuf, fragment: PathBuf },
}

/// Outcome of a command that ran to completion.
pub enum Outcome {
    Ok,
    CheckFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
