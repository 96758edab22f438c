//! `bangcalc`: parse, reduce, translate and check bang calculus terms.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "bangcalc", version, about = "Bang calculus toolkit")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Calculus {
    Bang,
    Lambda,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Relation {
    V,
    D,
    B,
    Beta,
    Betav,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum System {
    Bang,
    Cbv,
    Cbn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Rewrite,
    Translate,
    Relsem,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SimModeArg {
    All,
    Cbn,
    CbnGround,
    Cbv,
    CbvGround,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a term and print its syntax tree as JSON (or canonical text).
    Parse {
        /// Term text, or `-` for standard input.
        term: String,
        /// Reject `!` and `der`.
        #[arg(long)]
        lambda: bool,
    },
    /// Print a term given as a JSON syntax tree or as text, canonically.
    Print {
        /// JSON syntax tree or term text, or `-` for standard input.
        input: String,
    },
    /// Reduce a term with the leftmost-outermost strategy.
    Reduce {
        term: String,
        #[arg(long, value_enum, default_value_t = Calculus::Bang)]
        calculus: Calculus,
        #[arg(long, value_enum, default_value_t = Relation::B)]
        relation: Relation,
        /// Only contract redexes in ground contexts.
        #[arg(long)]
        ground: bool,
        #[arg(long, default_value_t = 100)]
        max_steps: usize,
        /// Do not stop on a term seen before.
        #[arg(long)]
        no_cycles: bool,
    },
    /// Translate a λ-term into the bang calculus.
    Translate {
        term: String,
        #[command(flatten)]
        which: TranslationArg,
    },
    /// Map a bang term back to the λ-calculus.
    Untranslate {
        term: String,
        #[command(flatten)]
        which: InverseArg,
    },
    /// Run one of the checkers on a term.
    Check {
        #[command(subcommand)]
        check: Check,
    },
    /// Enumerate the types within a bound, or interpret a term.
    Types {
        /// Term to interpret; without it, the types are listed.
        term: Option<String>,
        #[arg(long, value_enum, default_value_t = System::Bang)]
        system: System,
        #[command(flatten)]
        bound: BoundArgs,
        /// Variable list, comma separated (default: the free variables).
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
    },
    /// Run a property suite on random terms.
    Suite {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        name: Suite,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        /// Base seed; the BANGCALC_SEED environment variable takes precedence.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Replay a single case of this property from a failure seed.
        #[arg(long, requires = "replay")]
        property: Option<String>,
        #[arg(long, requires = "property")]
        replay: Option<u64>,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct TranslationArg {
    #[arg(long)]
    pub cbn: bool,
    #[arg(long)]
    pub cbv: bool,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct InverseArg {
    /// Inverse of the CbN translation.
    #[arg(long)]
    pub cbn: bool,
    /// The forgetful map (left inverse of the CbV translation).
    #[arg(long, alias = "cbv-forgetful")]
    pub forgetful: bool,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct BoundArgs {
    /// Largest arrow nesting.
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    /// Largest multiset cardinality.
    #[arg(long, default_value_t = 2)]
    pub width: usize,
    /// Largest number of nodes in one type.
    #[arg(long, default_value_t = 11)]
    pub budget: usize,
}

#[derive(Subcommand, Debug)]
pub enum Check {
    /// Simulation of the λ-calculi by their translations.
    Simulation {
        term: String,
        #[arg(long, value_enum, default_value_t = SimModeArg::All)]
        mode: SimModeArg,
        /// Check every reduct instead of following the strategy.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 10)]
        max_steps: usize,
        /// λ-terms visited in exhaustive mode.
        #[arg(long, default_value_t = 50)]
        nodes: usize,
    },
    /// Closing of one-step peaks and joins of random b-sequences.
    Confluence {
        term: String,
        /// Length of the random sequences.
        #[arg(long, default_value_t = 5)]
        steps: usize,
        /// Number of random sequence pairs.
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// Terms expanded per join search.
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Given λ-terms joinable on the λ side, join their translations.
    Equiv {
        left: String,
        right: String,
        #[command(flatten)]
        which: TranslationArg,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Compare the bang interpretation of cbn(t) with the CbN one of t.
    Factorization {
        term: String,
        #[command(flatten)]
        bound: BoundArgs,
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
    },
    /// Check that the CbV interpretation of t is included in that of cbv(t).
    Inclusion {
        term: String,
        #[command(flatten)]
        bound: BoundArgs,
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
    },
    /// Compare the interpretation of a term with those of its reducts.
    Invariance {
        term: String,
        #[arg(long, default_value_t = 3)]
        steps: usize,
        #[command(flatten)]
        bound: BoundArgs,
        /// Budget of the compared window (default: derived from the bound).
        #[arg(long)]
        window_budget: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::EXIT_USAGE)
        }
    }
}
