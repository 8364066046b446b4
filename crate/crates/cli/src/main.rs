//! `triconc`: GPT trace norms and concurrence lower bounds from the command line.
//!
//! Exit codes: 0 success, 1 verification violation, 2 input error.

mod commands;
mod format;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "triconc", version, about = "Concurrence lower bounds for tripartite states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Trace norms of GPT images of a state.
    Norms {
        #[arg(long)]
        state: std::path::PathBuf,
        /// Operations, e.g. `Y1,Y4` or `cA,rB;Y9` (default Y1..Y9).
        #[arg(long)]
        ops: Option<String>,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Concurrence lower bound of a state.
    Bound {
        #[arg(long)]
        state: std::path::PathBuf,
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        #[command(flatten)]
        out: Output,
    },
    /// Run a Monte-Carlo verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Norms and Theorem-1 bound of the bundled GHZ-diagonal example state.
    DemoDct {
        #[command(flatten)]
        out: Output,
    },
    /// Write a random state file (pure unless --rank is given).
    Random {
        #[arg(long, default_value = "2,2,2")]
        dims: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Number of mixture components; produces a mixed state.
        #[arg(long)]
        rank: Option<usize>,
        /// Destination file; stdout if omitted.
        #[arg(long)]
        output: Option<std::path::PathBuf>,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Table,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum TheoremArg {
    T1,
    T2,
    Corollary,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Norms {
            state,
            ops,
            tolerance,
            out,
        } => commands::norms(&state, ops.as_deref(), tolerance, out.format),
        Command::Bound { state, theorem, out } => commands::bound(&state, theorem, out.format),
        Command::Verify {
            suite,
            samples,
            seed,
            tolerance,
            out,
        } => commands::verify(&suite, samples, seed, tolerance, out.format),
        Command::DemoDct { out } => commands::demo_dct(out.format),
        Command::Random {
            dims,
            seed,
            rank,
            output,
        } => commands::random(&dims, seed, rank, output.as_deref()),
    };
    match result {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
