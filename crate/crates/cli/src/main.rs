//! `orthodual`: construct, check, and dualize finite orthomodular lattices
//! and spaces, verify both dualities, and query the logic.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage or input error,
//! 3 size cap exceeded.

mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use orthodual::Limits;

#[derive(Debug, Parser)]
#[command(name = "orthodual", version, about = "Finite orthomodular lattices, their dual spaces, and quantum logic")]
pub struct Cli {
    /// Machine-readable JSON instead of the text report.
    #[arg(long, global = true)]
    pub json: bool,

    /// Largest lattice accepted (elements).
    #[arg(long, global = true, default_value_t = 64)]
    pub max_lattice: usize,

    /// Largest space accepted (points).
    #[arg(long, global = true, default_value_t = 4096)]
    pub max_points: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Named lattices.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Per-condition validation reports.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Build the dual space of an orthomodular lattice.
    Dualize {
        /// Lattice JSON file or catalog name.
        lattice: String,
        /// Write the space JSON here instead of stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Exhaustive verification of the dualities.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Queries in the binary calculus.
    #[command(subcommand)]
    Logic(LogicCmd),
    /// Export diagrams.
    #[command(subcommand)]
    Export(ExportCmd),
}

#[derive(Debug, Subcommand)]
pub enum CatalogCmd {
    /// Catalog entries with their classification.
    List {
        /// Include parametric families up to this many elements.
        #[arg(long, default_value_t = 16)]
        max_size: usize,
    },
    /// Tables of one entry.
    Show { name: String },
}

#[derive(Debug, Subcommand)]
pub enum CheckCmd {
    /// Ortholattice conditions; orthomodularity and distributivity are
    /// reported as classifications. Exit 0 iff the tables are an
    /// ortholattice.
    Lattice { input: String },
    /// The nine orthomodular-frame conditions.
    Frame { input: String },
    /// Frame conditions and the six space conditions.
    Space { input: String },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Representation (`h`) and realization (`f`) round trips.
    Duality { lattice: String },
    /// Both naturality squares for a homomorphism or a map.
    Square {
        /// Morphism JSON file.
        #[arg(long)]
        hom: String,
    },
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// `catalog` (every orthomodular catalog lattice up to --max-size), or a
    /// comma-separated list of catalog names and lattice JSON files.
    #[arg(long, default_value = "catalog")]
    pub family: String,
    /// Size bound for `--family catalog`.
    #[arg(long, default_value_t = 8)]
    pub max_size: usize,
    /// Seed for sampled valuations when enumeration exceeds the cap.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum LogicCmd {
    /// Bounded proof search for `alpha ⊢ beta`.
    Prove {
        alpha: String,
        beta: String,
        /// Largest derivation height searched.
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// Skip sequents refuted in the family (sound pruning).
        #[arg(long)]
        prune: bool,
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Check a derivation JSON file node by node.
    CheckProof { file: String },
    /// Evaluate a formula in a lattice and, via `h`, in its dual space.
    Eval {
        formula: String,
        /// Lattice JSON file or catalog name.
        #[arg(long)]
        model: String,
        /// Comma-separated `p<i>=<element label>` pairs.
        #[arg(long, default_value = "")]
        valuation: String,
    },
    /// Whether `alpha ⊨ beta` over the family, in both semantics.
    Consequence {
        alpha: String,
        beta: String,
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// First algebraic countermodel to `alpha ⊨ beta` in the family.
    Countermodel {
        alpha: String,
        beta: String,
        #[command(flatten)]
        family: FamilyArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExportCmd {
    /// Graphviz Hasse diagram with orthocomplement pairs.
    Dot {
        lattice: String,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

impl Cli {
    pub fn limits(&self) -> Limits {
        Limits {
            max_lattice: self.max_lattice,
            max_points: self.max_points,
            ..Limits::default()
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = commands::run(&cli);
    let mut stdout = std::io::stdout().lock();
    let written = if cli.json {
        writeln!(stdout, "{}", serde_json::to_string_pretty(&out.json).expect("values serialize"))
    } else {
        write!(stdout, "{}", out.text)
    };
    if written.is_err() {
        return ExitCode::from(2);
    }
    if !cli.json {
        if let Some(msg) = &out.error {
            eprintln!("error: {msg}");
        }
    }
    ExitCode::from(out.code)
}
