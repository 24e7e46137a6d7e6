//! `gapforge`: build reduction instances, verify them with brute-force
//! oracles, and sample or certify sign-matrix gadgets.

mod experiment;
mod fail;
mod reduce;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gapforge::Budget;

use crate::fail::Fail;

#[derive(Parser, Debug)]
#[command(name = "gapforge", version, about = "Gap reductions to sparse-vector problems with exact certification")]
struct Cli {
    /// Enumeration cap (candidates per search); overrides GAPFORGE_BUDGET_CAP.
    #[arg(long, global = true)]
    budget: Option<u128>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// Minimum distance over a finite field.
    Mdp,
    /// Minimum distance with a distinguished trailing coordinate.
    MdpDist,
    /// Nearest codeword (affine slice of the distinguished instance).
    Ncp,
    /// Sparsest vector in a real subspace `ker(M)`.
    Real,
    /// Shortest vector of the integer lattice `ker(M) cap Z^n`.
    Svp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Yes,
    No,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Sweep {
    SliceCount,
    Distance,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce a circuit or quadratic system to an instance.
    Reduce(ReduceArgs),
    /// Check an instance (or a YES/NO pair) against brute-force oracles.
    Verify(VerifyArgs),
    /// Emit a gadget and its certificate.
    Gadget(GadgetArgs),
    /// Seed sweeps over random sign matrices, written as CSV.
    Experiment(ExperimentArgs),
}

#[derive(clap::Args, Debug)]
pub struct ReduceArgs {
    /// Circuit text file, or a quadratic system in JSON.
    #[arg(long)]
    pub from: PathBuf,
    #[arg(long, value_enum)]
    pub target: Target,
    /// Field order `q` for finite-field targets.
    #[arg(long, default_value = "2")]
    pub field: u64,
    /// `hadamard:m=M`, `eps:eps=E[,n=N]`, `fixture:handcrafted`,
    /// `random:n=N,eps=E,c2=C` or `random:h=H,N=N,k=K[,n=N]`, or `file:PATH`.
    #[arg(long)]
    pub gadget: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub tensor: u32,
    /// Norm exponent for the lattice target.
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    /// Seed for randomly sampled gadgets.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Fail (exit 4) unless the code or gadget is certified by exhaustive search.
    #[arg(long)]
    pub require_cert: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub instance: PathBuf,
    /// A NO instance to pair with `--instance` (the YES side).
    #[arg(long)]
    pub no: Option<PathBuf>,
    /// Also check the soundness floor of a single instance.
    #[arg(long, value_enum)]
    pub expect: Option<Expect>,
    /// Write the report as JSON here as well.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
pub struct GadgetArgs {
    /// Use a built-in gadget instead of sampling one.
    #[arg(long, value_parser = ["handcrafted"])]
    pub fixture: Option<String>,
    /// Projected coordinates `n`.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub eps: Option<String>,
    #[arg(long, default_value = "1")]
    pub c2: String,
    #[arg(long)]
    pub h: Option<usize>,
    #[arg(long = "N")]
    pub big_n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub cert_out: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
pub struct ExperimentArgs {
    #[arg(long, value_enum)]
    pub sweep: Sweep,
    #[arg(long = "N")]
    pub big_n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub h: usize,
    /// Number of seeds.
    #[arg(long)]
    pub seeds: usize,
    /// Root seed; row `i` uses `seed + i`.
    #[arg(long, required = true)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn budget(cli_cap: Option<u128>) -> Result<Budget, Fail> {
    match cli_cap {
        Some(0) => Err(Fail::Usage("--budget must be positive".into())),
        Some(cap) => Ok(Budget::new(cap)),
        None => Budget::from_env().map_err(Fail::from),
    }
}

/// Writes `text` to `path`, or to stdout without one.
pub fn emit(path: Option<&PathBuf>, text: &str) -> Result<(), Fail> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Fail::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Fail> {
    let budget = budget(cli.budget)?;
    match cli.command {
        Command::Reduce(a) => reduce::cmd_reduce(&a, &budget),
        Command::Verify(a) => verify::cmd_verify(&a, &budget),
        Command::Gadget(a) => experiment::cmd_gadget(&a, &budget),
        Command::Experiment(a) => experiment::cmd_experiment(&a, &budget),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
