//! `ordalg`: batch front-end to the ordered-algebra workbench.
//!
//! Exit codes: 0 success, 1 counterexample found, 2 usage or parse error,
//! 3 invariant violation in the input.

mod commands;
mod error;
mod format;
mod workspace;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand};

use crate::error::CliError;
use crate::workspace::Workspace;

#[derive(Parser)]
#[command(name = "ordalg", version, about = "Ordered universal algebra over finite posets")]
struct Cli {
    /// Directory of JSON fixtures; replaces the built-in fixtures.
    #[arg(long, global = true, env = "ORDALG_FIXTURES")]
    fixtures: Option<PathBuf>,
    /// Extra JSON files loaded on top of the fixtures.
    #[arg(long = "load", short = 'l', global = true)]
    load: Vec<PathBuf>,
    /// Pretty JSON output; `--json false` prints a one-line summary instead.
    #[arg(long, global = true, default_value_t = true, action = ArgAction::Set, num_args = 0..=1, default_missing_value = "true")]
    json: bool,
    /// Seed for sampled suites. Every shipped suite is exhaustive, so it is
    /// only echoed in reports.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Include wall-clock durations in reports.
    #[arg(long, global = true)]
    timing: bool,
    /// Run suites on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Names of every registered object, by kind.
    List,
    /// Load and validate files, then list what they registered.
    Load { files: Vec<PathBuf> },
    /// Print the document of a registered object.
    Show { kind: String, name: String },
    /// Write every registered object to DIR, one file per object.
    ExportFixtures { dir: PathBuf },
    #[command(subcommand)]
    Poset(PosetCommand),
    #[command(subcommand)]
    Colimit(ColimitCommand),
    #[command(subcommand)]
    Algebra(AlgebraCommand),
    #[command(subcommand)]
    Term(TermCommand),
    #[command(subcommand)]
    Monad(MonadCommand),
    /// Run a verification suite (or `all`).
    Verify {
        suite: String,
        #[arg(long, default_value_t = 2)]
        size: usize,
    },
}

#[derive(Args)]
pub struct Two {
    #[arg(long)]
    pub left: String,
    #[arg(long)]
    pub right: String,
}

#[derive(Subcommand)]
pub enum PosetCommand {
    Product(Two),
    Coproduct(Two),
    /// The pairs `a ⊑ b` as a discrete poset with both projections.
    OrderPairs {
        #[arg(long)]
        poset: String,
    },
    IdealCompletion {
        #[arg(long)]
        poset: String,
    },
    /// Surjection followed by embedding.
    Factorize {
        #[arg(long)]
        map: String,
    },
    /// The diagonal of a square `m ∘ u = u' ∘ e`.
    DiagonalFill {
        #[arg(long)]
        u: String,
        #[arg(long)]
        e: String,
        #[arg(long)]
        m: String,
        #[arg(long)]
        u_prime: String,
    },
}

#[derive(Subcommand)]
pub enum ColimitCommand {
    Coinserter {
        #[arg(long)]
        pair: String,
    },
    IsCoinserter {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        map: String,
    },
    Coequalizer {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    Tensor {
        #[arg(long)]
        poset: String,
        #[arg(long)]
        with: String,
    },
    /// Colimit of the chain given by its connecting maps, in order.
    Chain {
        #[arg(long = "map", required = true)]
        maps: Vec<String>,
    },
    ProductCommutation {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        other: String,
    },
    PowerPreservation {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args)]
pub struct Hom {
    #[arg(long)]
    pub map: String,
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
}

#[derive(Subcommand)]
pub enum AlgebraCommand {
    IsHomomorphism(Hom),
    Product(Two),
    Subalgebra {
        #[arg(long)]
        algebra: String,
        #[arg(long, value_delimiter = ',')]
        generators: Vec<String>,
    },
    Image(Hom),
    /// Free algebra on a poset, truncated at a term depth; the signature is
    /// taken from the named algebra.
    Free {
        #[arg(long)]
        signature_of: String,
        #[arg(long)]
        poset: String,
        #[arg(long)]
        depth: usize,
    },
    SimilarityClasses {
        #[arg(long)]
        signature_of: String,
        #[arg(long)]
        depth: usize,
    },
    DenseTriangle {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b1: String,
        #[arg(long)]
        b2: String,
        #[arg(long)]
        h1: String,
        #[arg(long)]
        h2: String,
        #[arg(long)]
        p: String,
    },
}

#[derive(Subcommand)]
pub enum TermCommand {
    Support {
        #[arg(long)]
        term: String,
    },
    Interpret {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        term: String,
        /// Bindings `x=a`.
        #[arg(long = "env", value_delimiter = ',')]
        env: Vec<String>,
    },
    Definable {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        term: String,
    },
    Satisfies {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        equation: String,
    },
    /// The equation encoding `lhs ⊑ rhs`.
    EncodeInequation {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    InVariety {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        variety: String,
    },
    HomDefinability {
        #[command(flatten)]
        hom: Hom,
        #[arg(long)]
        term: String,
        #[arg(long = "env", value_delimiter = ',')]
        env: Vec<String>,
    },
}

#[derive(Subcommand)]
pub enum MonadCommand {
    Validate {
        #[arg(long)]
        monad: String,
    },
    /// The Kleisli extension of `u : V_n → T_m`.
    Extend {
        #[arg(long)]
        monad: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Images of the variables, as elements of `T_m`.
        #[arg(long, value_delimiter = ',')]
        u: Vec<String>,
    },
    Signature {
        #[arg(long)]
        monad: String,
    },
    Equations {
        #[arg(long)]
        monad: String,
    },
    Free {
        #[arg(long)]
        monad: String,
        #[arg(long)]
        n: usize,
    },
    FreeExtension {
        #[arg(long)]
        monad: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        algebra: String,
        /// Images of the variables, as elements of the algebra.
        #[arg(long, value_delimiter = ',')]
        f: Vec<String>,
    },
    /// Algebras of the associated variety with carriers up to a size.
    VarietyAlgebras {
        #[arg(long)]
        monad: String,
        #[arg(long, default_value_t = 2)]
        max_size: usize,
    },
    /// Freeness of `T_n` against every variety algebra up to a size, for
    /// every arity up to `N` unless one is given.
    VerifyFreeness {
        #[arg(long)]
        monad: String,
        #[arg(long, default_value_t = 2)]
        max_size: usize,
        #[arg(long)]
        n: Option<usize>,
    },
}

/// Global settings every command sees.
pub struct Settings {
    pub json: bool,
    pub seed: Option<u64>,
    pub timing: bool,
    pub exec: ordalg::Exec,
}

fn workspace(cli: &Cli) -> Result<Workspace, CliError> {
    let mut ws = match &cli.fixtures {
        Some(dir) => {
            let mut ws = Workspace::default();
            ws.load_dir(dir)?;
            ws
        }
        None => Workspace::builtin(),
    };
    if !cli.load.is_empty() {
        ws.load_files(&cli.load)?;
    }
    Ok(ws)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = Settings {
        json: cli.json,
        seed: cli.seed,
        timing: cli.timing,
        exec: if cli.sequential {
            ordalg::Exec::Sequential
        } else {
            ordalg::Exec::Parallel
        },
    };
    let outcome = workspace(&cli).and_then(|mut ws| commands::run(&mut ws, cli.command, &settings));
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
