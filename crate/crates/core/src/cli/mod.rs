//! Command-line front end: argument parsing, the result cache and export formats.

mod cache;
mod commands;
mod config;
mod output;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use cache::{CacheHeader, CacheRecord, ResultCache, SCHEMA_VERSION};
pub use commands::{
    cmd_asymptotics, cmd_bounds, cmd_interlace, cmd_table, cmd_tree, cmd_value, cmd_verify, resolve_node,
    Session, VerifyOptions,
};
pub use config::{Format, RunConfig};
pub use output::{read_value_csv, round12, sig12, TreeRow, ValueRow, CSV_HEADER};

use crate::analysis::{InterlaceMode, ASYMPTOTIC_LOG10_C_LIMIT, ASYMPTOTIC_Q_LIMIT};
use crate::error::Result;

#[derive(Debug, Parser)]
#[command(name = "markov-j", version, about = "Cycle integrals of the j-function along Markov geodesics")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Tree depth; level 1 is the root 1/3.
    #[arg(long, global = true, default_value_t = 9)]
    pub depth: u32,
    /// Absolute tolerance of each cycle integral.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    /// Number of q-expansion coefficients of j beyond the constant term.
    #[arg(long, global = true, default_value_t = crate::modular_j::DEFAULT_ORDER)]
    pub series_order: usize,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// JSON-lines result cache, created if missing.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Worker threads for the integrals.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Coefficient file for the j series, created if missing.
    #[arg(long, global = true)]
    pub series_file: Option<PathBuf>,
    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

impl GlobalArgs {
    pub fn config(&self) -> RunConfig {
        RunConfig {
            depth: self.depth,
            tol: self.tol,
            series_order: self.series_order,
            format: self.format,
            cache: self.cache.clone(),
            jobs: self.jobs,
            series_file: self.series_file.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Mode {
    Componentwise,
    Segment,
}

impl From<Mode> for InterlaceMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Componentwise => InterlaceMode::Componentwise,
            Mode::Segment => InterlaceMode::Segment,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every vertex: path, level, p/q, Markov number and period.
    Tree,
    /// J/q, j, log ε and the error estimate for one vertex.
    Value {
        /// `p/q`, `L*`, `R*`, `root` or a path such as `LRR`.
        node: String,
        /// Deepest level searched when locating a fraction.
        #[arg(long, default_value_t = 64)]
        max_depth: u32,
    },
    /// Values for every vertex, ordered by p/q.
    Table,
    /// Betweenness of j against the two predecessors.
    Interlace {
        #[arg(long, default_value_t = 1e-9)]
        threshold: f64,
        #[arg(long, value_enum, default_value = "componentwise")]
        mode: Mode,
    },
    /// Window means of q_n/√n and log(c_n)·√C/√n.
    Asymptotics {
        #[arg(long, default_value_t = ASYMPTOTIC_Q_LIMIT)]
        max_q: u64,
        #[arg(long, default_value_t = ASYMPTOTIC_LOG10_C_LIMIT)]
        max_log10_c: u32,
    },
    /// The chain of constants bounding J/√n and j.
    Bounds {
        #[arg(long, default_value_t = 12)]
        k0: u32,
        /// Use the envelope of the values computed to --depth.
        #[arg(long)]
        computed: bool,
    },
    /// Every hard check; exits nonzero if any fails.
    Verify {
        /// Points per axis of the g/g′ sampling grid.
        #[arg(long, default_value_t = 200)]
        grid: usize,
        #[arg(long, default_value_t = 20_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Runs one command; `Ok(false)` means a check failed.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<bool> {
    let config = cli.global.config();
    config.validate()?;
    let session = || Session::new(config.clone());
    match &cli.command {
        Command::Tree => cmd_tree(&config, out).map(|_| true),
        Command::Value { node, max_depth } => cmd_value(&mut session()?, node, *max_depth, out).map(|_| true),
        Command::Table => cmd_table(&mut session()?, out).map(|_| true),
        Command::Interlace { threshold, mode } => cmd_interlace(&mut session()?, *threshold, (*mode).into(), out),
        Command::Asymptotics { max_q, max_log10_c } => {
            cmd_asymptotics(&config, *max_q, *max_log10_c, out).map(|_| true)
        }
        Command::Bounds { k0, computed } => cmd_bounds(&mut session()?, *k0, *computed, out).map(|_| true),
        Command::Verify { grid, samples, seed } => {
            let opts = VerifyOptions {
                grid: *grid,
                samples: *samples,
                seed: *seed,
                ..VerifyOptions::default()
            };
            cmd_verify(&mut session()?, opts, out)
        }
    }
}

fn run_with_output(cli: &Cli) -> Result<bool> {
    let mut buf = Vec::new();
    let ok = match cli.global.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| crate::Error::Config(e.to_string()))?
            .install(|| run(cli, &mut buf))?,
        None => run(cli, &mut buf)?,
    };
    match &cli.global.output {
        Some(path) => std::fs::write(path, &buf)?,
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(&buf)?;
            stdout.flush()?;
        }
    }
    Ok(ok)
}

/// Entry point of the `markov-j` binary.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run_with_output(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
