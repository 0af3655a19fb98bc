//! The `twdr` command line: argument parsing, commands and reports.

pub mod batch;
pub mod commands;
pub mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use batch::{cmd_batch, BatchCase, BatchSummary, Expect};
pub use commands::{cmd_example13, cmd_koszul, cmd_verify, Outcome};
pub use report::{Example13Report, KoszulReport, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "twdr", version, about = "Twisted de Rham cohomology and vanishing-cycle monodromy of polynomials")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Args)]
pub struct Common {
    /// Number of variables (default: highest variable mentioned)
    #[arg(short = 'n', long = "nvars", global = true)]
    pub nvars: Option<usize>,
    /// Monomial order: degrevlex or deglex
    #[arg(long, global = true, default_value = "degrevlex")]
    pub order: String,
    /// Truncation order in u (default 4μ+4; 8 for example13)
    #[arg(long, global = true)]
    pub trunc: Option<i64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also extract Jordan block sizes
    #[arg(long, global = true)]
    pub jordan: bool,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Compute the monodromy datum of f and compare with an oracle
    Verify { f: String },
    /// Formal and Laurent cohomology of u∂_t − f′ for univariate f
    Example13 {
        f: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Nearby-cycle model of t = x^μ
    Koszul {
        #[arg(required = true)]
        mu: Vec<u64>,
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Run a JSONL manifest of cases
    Batch {
        manifest: std::path::PathBuf,
        /// Directory for per-case reports
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

/// Runs a parsed command line, printing to stdout, and returns the exit code.
pub fn run(cli: Cli) -> i32 {
    let outcome = match &cli.command {
        Command::Verify { f } => cmd_verify(f, &cli.common),
        Command::Example13 { f, trials } => cmd_example13(f, *trials, &cli.common),
        Command::Koszul { mu, bound } => cmd_koszul(mu, *bound, &cli.common),
        Command::Batch { manifest, out } => cmd_batch(manifest, out.as_deref(), &cli.common),
    };
    match outcome {
        Ok(o) => {
            print!("{}", o.render(cli.common.format));
            o.exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            commands::error_exit(&e)
        }
    }
}
