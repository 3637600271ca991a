//! `klr`: semisimplicity checks, explicit modules and witness certificates for cyclotomic
//! KLR algebras of type C.
//!
//! Exit codes: 0 for a positive verdict or a passing check, 1 for a negative verdict or a
//! failed check, 2 for usage and input errors.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use klr_core::exactla::FieldDescriptor;
use klr_core::root_data::{LieRank, Multicharge};
use klr_core::tableaux::Multipartition;

#[derive(Debug, Parser)]
#[command(name = "klr", version, about = "Cyclotomic KLR algebras of type C: semisimplicity and explicit modules")]
struct Cli {
    /// Worker threads for parallel verification and sweeps.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct AlgebraArgs {
    /// Rank: a positive integer or `inf`.
    #[arg(long)]
    ell: LieRank,
    /// Multicharge, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    charge: Multicharge,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide semisimplicity of R^Lambda_n.
    CheckSemisimple {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Build the irreducible module of a shape (semisimple case only).
    Irreducible {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Multipartition, components separated by `|`, parts by `,`.
        #[arg(long)]
        shape: Multipartition,
        #[arg(long, default_value = "q")]
        field: FieldDescriptor,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a Specht module by vector enumeration.
    Specht {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        shape: Multipartition,
        #[arg(long, default_value = "q")]
        field: FieldDescriptor,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Allow shapes with a component that is not a hook.
        #[arg(long)]
        experimental: bool,
    },
    /// Build and certify a non-splitting witness.
    Witness {
        #[arg(long, value_enum)]
        kind: WitnessKind,
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        n: usize,
        /// 1-based component for boundary and repeat witnesses.
        #[arg(long)]
        component: Option<usize>,
        #[arg(long, default_value = "q")]
        field: FieldDescriptor,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a serialized module against the defining relations.
    Verify {
        #[arg(long)]
        module: PathBuf,
        /// Overrides the rank stored in the module file.
        #[arg(long)]
        ell: Option<LieRank>,
        /// Overrides the multicharge stored in the module file.
        #[arg(long, allow_hyphen_values = true)]
        charge: Option<Multicharge>,
    },
    /// Certify every point of a parameter grid.
    Sweep(SweepArgs),
    /// List tableaux, residue diagrams or residue sequences.
    Enumerate {
        #[command(subcommand)]
        what: Enumerate,
    },
    /// Rewrite a module file in canonical form.
    Export {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        ell: Option<LieRank>,
        #[arg(long, allow_hyphen_values = true)]
        charge: Option<Multicharge>,
        /// Write the module even when it cannot be verified.
        #[arg(long)]
        allow_unverified: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WitnessKind {
    Boundary,
    Repeat,
    Ss2fail,
    Ss1fail,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Grid as JSON; replaces the range flags.
    #[arg(long)]
    grid: Option<PathBuf>,
    /// Ranks, comma separated (`inf` allowed).
    #[arg(long, default_value = "2,3")]
    ells: String,
    #[arg(long, default_value = "1")]
    levels: String,
    /// Explicit charges, `;` between tuples; default is every folded tuple.
    #[arg(long, allow_hyphen_values = true)]
    charges: Option<String>,
    #[arg(long, default_value_t = 2)]
    n_min: usize,
    #[arg(long, default_value_t = 5)]
    n_max: usize,
    #[arg(long, default_value = "q")]
    fields: String,
    /// Skip irreducible checks for shapes with more standard tableaux.
    #[arg(long, default_value_t = 200)]
    max_std: usize,
    /// Largest folded charge used when the rank is infinite.
    #[arg(long, default_value_t = 4)]
    infinite_charge_max: u32,
    /// JSON-lines output file (stdout by default).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Enumerate {
    /// Standard tableaux of a shape, most dominant first.
    Tableaux {
        #[arg(long)]
        shape: Multipartition,
        #[arg(long)]
        ell: Option<LieRank>,
        #[arg(long, allow_hyphen_values = true)]
        charge: Option<Multicharge>,
    },
    /// Residue diagram of a shape, one line per component.
    Residues {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        shape: Multipartition,
    },
    /// Residue sequences of standard tableaux of size n.
    Sequences {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        n: usize,
    },
}

/// Parses the process arguments and runs one command.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
