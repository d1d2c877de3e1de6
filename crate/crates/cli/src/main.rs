use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser)]
#[command(name = "symquandle", version, about = "Symplectic quandles and their good involutions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Output::Json, global = true)]
    pub output: Output,
    /// Worker threads for enumeration and matrix scans [default: all cores].
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Stop after this many good involutions.
    #[arg(long, global = true)]
    pub limit: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Ring, form and quandle invariants of a config.
    Info {
        #[arg(long)]
        config: PathBuf,
    },
    /// Every good involution, in canonical order.
    Enumerate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run one harness check, or all of them.
    Verify {
        #[arg(value_enum)]
        name: CheckName,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 50)]
        coeff_bound: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Record wall-clock milliseconds per check (breaks byte-identity).
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckName {
    Theorem1,
    Theorem2,
    Theorem3,
    #[value(name = "example-z9")]
    ExampleZ9,
    Gaussian,
    #[value(name = "degenerate-remark")]
    DegenerateRemark,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut common = cli.common;
    if common.threads == Some(0) {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(2);
    }
    common.threads.get_or_insert_with(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let result = match cli.command {
        Command::Info { config } => commands::info(&config, &common),
        Command::Enumerate { config } => commands::enumerate(&config, &common),
        Command::Verify { name, samples, coeff_bound, seed, timing } => {
            if samples == 0 || coeff_bound < 0 {
                eprintln!("error: --samples must be at least 1 and --coeff-bound non-negative");
                return ExitCode::from(2);
            }
            let sampling = symquandle::gaussian::SampleConfig { samples, coeff_bound, seed };
            commands::verify(name, sampling, timing, &common)
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
