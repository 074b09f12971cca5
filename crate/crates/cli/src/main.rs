//! `zipstrata`: strata posets, verification sweeps and the finite-field oracle from the shell.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or configuration error,
//! 3 resource cap exceeded.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zipstrata::{Caps, Error};

#[derive(Parser)]
#[command(name = "zipstrata", version, about = "Weyl group combinatorics of zip data and a finite-field orbit oracle")]
struct Cli {
    /// Override every enumeration cap (|W| and matrix group sizes); also read from ZIPSTRATA_CAP.
    #[arg(long, global = true)]
    cap: Option<usize>,

    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the strata poset of a zip datum and export it.
    Poset(PosetArgs),
    /// Run the exhaustive consistency sweep over supported types and subsets.
    Verify(VerifyArgs),
    /// Count zip group orbits over F_q and merge them along a field tower.
    Oracle(OracleArgs),
    /// Count points of fine Deligne-Lusztig strata on P-\H over F_{q^m}.
    DlSim(DlSimArgs),
    /// Weyl group calculator for scripting.
    Weyl(WeylArgs),
    /// Re-validate a poset JSON file and summarise it.
    Inspect {
        /// Path to a file written by `poset --format json`.
        path: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq, Debug)]
pub enum FlavorArg {
    #[value(name = "EO", alias = "eo")]
    Eo,
    #[value(name = "DL", alias = "dl")]
    Dl,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq, Debug)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq, Debug)]
pub enum PosetFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq, Debug)]
pub enum ReportFormat {
    Tsv,
    Json,
}

#[derive(Args)]
pub struct PosetArgs {
    /// Cartan type such as A2, C3, G2.
    #[arg(long = "type")]
    pub cartan: String,
    /// Comma separated 1-based simple indices; empty for the Borel case.
    #[arg(long = "I", default_value = "", allow_hyphen_values = true)]
    pub subset: String,
    #[arg(long, value_enum, default_value = "EO")]
    pub flavor: FlavorArg,
    /// `split`, `twisted` (the standard diagram automorphism) or a 1-based permutation like `3,2,1`.
    #[arg(long, default_value = "split")]
    pub frobenius: String,
    /// Label set: `left` is ^I W, `right` is W^J.
    #[arg(long, value_enum, default_value = "left")]
    pub side: SideArg,
    #[arg(long, value_enum, default_value = "dot")]
    pub format: PosetFormat,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Largest rank swept.
    #[arg(long, default_value_t = 3)]
    pub rank_max: usize,
    /// Largest rank for the order reversal, equivalence and twist comparison checks.
    #[arg(long)]
    pub order_rank_max: Option<usize>,
    /// `split` or `twisted`.
    #[arg(long, default_value = "split")]
    pub frobenius: String,
    #[arg(long, value_enum, default_value = "tsv")]
    pub format: ReportFormat,
}

#[derive(Args)]
pub struct OracleArgs {
    /// `gl` or `sl`.
    #[arg(long, default_value = "gl")]
    pub family: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub q: usize,
    /// Weakly decreasing cocharacter weights, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub weights: String,
    /// Tower levels, e.g. `1,2` or `1,2,4`.
    #[arg(long, default_value = "1,2")]
    pub levels: String,
    #[arg(long, value_enum, default_value = "EO")]
    pub flavor: FlavorArg,
    /// Skip the per-level Deligne-Lusztig point counts.
    #[arg(long)]
    pub no_dl: bool,
    #[arg(long, value_enum, default_value = "tsv")]
    pub format: ReportFormat,
}

#[derive(Args)]
pub struct DlSimArgs {
    #[arg(long, default_value = "gl")]
    pub family: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub q: usize,
    /// Cocharacter weights; defaults to the Borel case `n-1, ..., 1, 0`.
    #[arg(long, allow_hyphen_values = true)]
    pub weights: Option<String>,
    /// Extension degrees, comma separated.
    #[arg(long, default_value = "1")]
    pub m: String,
    #[arg(long, value_enum, default_value = "tsv")]
    pub format: ReportFormat,
}

#[derive(Args)]
pub struct WeylArgs {
    #[arg(long = "type")]
    pub cartan: String,
    #[arg(long, default_value = "split")]
    pub frobenius: String,
    #[command(subcommand)]
    pub op: WeylOp,
}

/// Words are comma separated 1-based simple indices; `e` or an empty string is the identity.
#[derive(Subcommand)]
pub enum WeylOp {
    /// Reduced word of the product of two words.
    Multiply { a: String, b: String },
    /// Length of a word's element.
    Length { word: String },
    /// Canonical reduced word (smallest left descent first).
    ReducedWord { word: String },
    /// Reduced word of the longest element.
    Longest,
    /// Reduced word of the Frobenius image.
    Frobenius { word: String },
    /// `1` when u <= w in Bruhat order, `0` otherwise.
    Bruhat { u: String, w: String },
    /// Group order.
    Order,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) | Error::Usage(_) => 2,
        Error::Cap { .. } => 3,
        Error::Consistency(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = match cli.cap {
        Some(c) => Caps { weyl: c, group: c },
        None => Caps::from_env(),
    };
    let result = match &cli.command {
        Command::Poset(a) => commands::poset(a, caps),
        Command::Verify(a) => commands::verify(a, caps),
        Command::Oracle(a) => commands::oracle(a, caps),
        Command::DlSim(a) => commands::dl_sim(a, caps),
        Command::Weyl(a) => commands::weyl(a, caps),
        Command::Inspect { path } => commands::inspect(path),
    };
    match result {
        Ok(outcome) => {
            if let Err(e) = output::emit(&outcome.text, cli.output.as_deref()) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            for line in &outcome.diagnostics {
                eprintln!("{line}");
            }
            ExitCode::from(if outcome.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::Cap { .. } = e {
                eprintln!("hint: raise the limit with --cap N or ZIPSTRATA_CAP=N");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
