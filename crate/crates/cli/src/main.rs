//! `vybe`: command-line checker for vertex operator Yang-Baxter solutions,
//! relative Rota-Baxter operators and their degree-one reductions.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "vybe", version, about = "Exact checks for the vertex operator Yang-Baxter equation and relative Rota-Baxter operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the VOA axioms (and module axioms with --module).
    CheckVoa(Common),
    /// Check the m-VOYBE for a tensor; with --module the carrier is V ⋊ W'.
    CheckVoybe(Common),
    /// Check the m-relative Rota-Baxter identity for a map W -> V.
    CheckRbo(Common),
    /// Check the strong relative Rota-Baxter identities for a map W -> V.
    CheckStrongRbo(Common),
    /// Build the tensor r_T on V ⋊ W' from a map T: W -> V.
    BuildR(Common),
    /// Convert between skewsymmetric tensors and skewsymmetric maps U' -> U.
    Convert(Common),
    /// Extract the degree-one Lie tensor or Lie map.
    ReduceLevel1(Common),
    /// Check the degree-one reduction statements for a tensor or a map.
    VerifyReduction(Common),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConvertTo {
    Map,
    Tensor,
}

#[derive(Args)]
struct Common {
    /// Algebra config file.
    #[arg(long)]
    algebra: Option<PathBuf>,
    /// Module descriptor: adjoint, coadjoint or fock:λ.
    #[arg(long)]
    module: Option<String>,
    /// Map file.
    #[arg(long)]
    map: Option<PathBuf>,
    /// Tensor file.
    #[arg(long)]
    tensor: Option<PathBuf>,
    /// Value of m; repeatable. Defaults to -2..=3.
    #[arg(long = "m", allow_negative_numbers = true)]
    m: Vec<i64>,
    /// Truncation degree N; overrides the config.
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Target representation for `convert`.
    #[arg(long, value_enum)]
    to: Option<ConvertTo>,
    /// Input file, as an alternative to --map / --tensor.
    input: Option<PathBuf>,
}

fn configure_threads() {
    if let Some(n) = std::env::var("VYBE_THREADS").ok().and_then(|s| s.parse::<usize>().ok()).filter(|n| *n > 0) {
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
