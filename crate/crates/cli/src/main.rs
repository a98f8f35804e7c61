// SPDX-License-Identifier: Apache-2.0

//! `congest-lab`: generators, oracles, simulator and protocols from the
//! command line.

mod commands;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use congest_core::exec::Exec;

use crate::report::Emitter;

/// Optional worker-count override; `1` selects sequential execution.
pub const WORKERS_ENV: &str = "CONGEST_LAB_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "congest-lab", version, about = "CONGEST lower-bound laboratory")]
struct Cli {
    /// Root seed; every random choice is drawn from a named stream of it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Add per-line wall time to reports.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Mvc,
    Col3,
    Colc,
    Colapprox,
    Cycle8,
    Ident,
    Star,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a lower-bound instance and write it as JSON or DOT.
    Gen(GenArgs),
    /// Run the exact oracle on a graph file and compare with f(x, y).
    Verify(VerifyArgs),
    /// Run a distributed algorithm in the CONGEST simulator.
    Simulate(SimulateArgs),
    /// Run a communication protocol on a graph file.
    Protocol(ProtocolArgs),
    /// Sweep (x, y) pairs through generator, oracle and DISJ.
    CheckLemma(CheckLemmaArgs),
    /// Rounds and bits against instance size.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Family size `k`; node count `n` for `star`.
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub c: Option<usize>,
    /// Bits as `0101`, `0b0101` or `<len>:<hex>`; random when absent.
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long)]
    pub y: Option<String>,
    /// Exclusive weight bound for `ident` (default `(2k)^2`).
    #[arg(long)]
    pub w_bound: Option<u64>,
    /// For `ident` with random inputs: use `y = x`.
    #[arg(long)]
    pub equal: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Overrides the kind recorded in the file.
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,
    #[arg(long = "in")]
    pub input: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Ident,
    Flood,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long, value_enum, default_value_t = Algo::Ident)]
    pub algo: Algo,
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Bits per message (default `ceil(2 log2 n)`).
    #[arg(long)]
    pub bandwidth: Option<usize>,
    #[arg(long, default_value_t = 100_000)]
    pub max_rounds: usize,
    /// Independent runs, one report line each.
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProtocolAlgo {
    Apsp2,
    #[value(name = "apspT", alias = "apspt")]
    ApspT,
    Simulate,
}

#[derive(Args, Debug)]
pub struct ProtocolArgs {
    #[arg(long, value_enum)]
    pub algo: ProtocolAlgo,
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Players for `apspT`.
    #[arg(long, default_value_t = 3)]
    pub t: usize,
    /// Program for `simulate`.
    #[arg(long, value_enum, default_value_t = Algo::Ident)]
    pub program: Algo,
    #[arg(long)]
    pub bandwidth: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    DropBinEdge,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("sampling").required(true).args(["exhaustive", "sample", "sparse"])))]
pub struct CheckLemmaArgs {
    #[arg(value_enum)]
    pub kind: Kind,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub c: Option<usize>,
    #[arg(long)]
    pub exhaustive: bool,
    /// Number of seeded pairs.
    #[arg(long)]
    pub sample: Option<usize>,
    /// All pairs of strings with at most this many set bits.
    #[arg(long)]
    pub sparse: Option<usize>,
    /// Bit probability for `--sample`.
    #[arg(long, default_value_t = 0.25)]
    pub density: f64,
    /// Emit only failing pairs and the summary.
    #[arg(long)]
    pub failures_only: bool,
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<Fault>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BenchAlgo {
    Ident,
    Apsp2,
    Star,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub algo: BenchAlgo,
    /// Comma-separated sizes (`k` for ident, `n` otherwise).
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,
    /// Instances per size.
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Counterexample,
    InvariantViolation,
}

impl Status {
    pub fn worst(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (InvariantViolation, _) | (_, InvariantViolation) => InvariantViolation,
            (Counterexample, _) | (_, Counterexample) => Counterexample,
            _ => Pass,
        }
    }

    fn code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Counterexample => 2,
            Status::InvariantViolation => 3,
        }
    }
}

pub struct Ctx {
    pub seed: u64,
    pub format: Format,
    pub exec: Exec,
}

fn exec_from_env() -> anyhow::Result<Exec> {
    let Ok(v) = std::env::var(WORKERS_ENV) else {
        return Ok(Exec::default());
    };
    let workers: usize = v
        .trim()
        .parse()
        .map_err(|_| anyhow::anyhow!("{WORKERS_ENV} must be a positive integer, got {v:?}"))?;
    if workers <= 1 {
        return Ok(Exec::Sequential);
    }
    rayon::ThreadPoolBuilder::new().num_threads(workers).build_global()?;
    Ok(Exec::default())
}

fn run(cli: Cli, command_echo: String) -> anyhow::Result<Status> {
    let ctx = Ctx {
        seed: cli.seed,
        format: cli.format,
        exec: exec_from_env()?,
    };
    if ctx.format == Format::Dot && !matches!(cli.command, Command::Gen(_)) {
        anyhow::bail!("--format dot applies to gen only");
    }
    let sink: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let mut em = Emitter::new(sink, command_echo, cli.timing);
    let status = match cli.command {
        Command::Gen(a) => commands::gen(&ctx, &mut em, a),
        Command::Verify(a) => commands::verify(&ctx, &mut em, a),
        Command::Simulate(a) => commands::simulate(&ctx, &mut em, a),
        Command::Protocol(a) => commands::protocol(&ctx, &mut em, a),
        Command::CheckLemma(a) => commands::check_lemma(&ctx, &mut em, a),
        Command::Bench(a) => commands::bench(&ctx, &mut em, a),
    };
    em.flush()?;
    status
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let echo = args[1..].join(" ");
    match run(cli, echo) {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            let invariant = e
                .downcast_ref::<congest_core::Error>()
                .is_some_and(commands::is_invariant_error);
            ExitCode::from(if invariant { Status::InvariantViolation.code() } else { 1 })
        }
    }
}
