//! `sublattice`: enumerate, convert, combine and verify elements of the
//! permutation and Tamari lattices.

mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "sublattice", version, about = "Permutation and Tamari lattices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every element of S_n or T_n.
    Enumerate {
        #[arg(long)]
        lattice: LatticeKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "table")]
        format: Format,
    },
    /// Convert between words, bracketing functions, permutations and inversion sets.
    Convert {
        #[arg(long)]
        from: Source,
        #[arg(long)]
        to: Target,
        value: String,
    },
    /// Join or meet two elements.
    Op {
        op: LatticeOp,
        #[arg(long)]
        lattice: LatticeKind,
        /// Read and print S_n elements as comma-separated permutations instead of JSON.
        #[arg(long = "as", value_name = "perm")]
        as_: Option<AsPerm>,
        a: String,
        b: String,
    },
    /// Hasse diagram in DOT format.
    Hasse {
        #[arg(long)]
        lattice: LatticeKind,
        #[arg(long)]
        n: usize,
        /// Highlight the image of T_n inside S_n.
        #[arg(long)]
        mark_image: bool,
    },
    /// Run a verification suite and print a JSON report.
    Verify {
        suite: Suite,
        #[command(flatten)]
        opts: VerifyOpts,
    },
    /// Sizes, top heights and atom counts, all recomputed.
    Stats {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Args)]
pub struct VerifyOpts {
    #[arg(long)]
    pub n: usize,
    /// Seed for sampled pair checks (embedding only).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of sampled pairs; omit for an exhaustive run (embedding only).
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LatticeKind {
    Perm,
    Tamari,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Word,
    Fn,
    Perm,
    Invset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Word,
    Fn,
    Perm,
    Invset,
    Tree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LatticeOp {
    Join,
    Meet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AsPerm {
    Perm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Embedding,
    Height,
    Semidistributive,
    Bounded,
    Roundtrip,
}

/// Why a command stopped.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or unparseable values; exit code 2.
    Usage(String),
    /// A verification ran and found a counterexample; exit code 1. The
    /// report has already been printed.
    Verification,
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = commands::run(cli.command, &mut out);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
