//! `ratiolog`: exact log-behavior checks and certificate verification.
//!
//! Exit codes: 0 holds/certified, 1 refuted/violation, 2 inconclusive or
//! usage error.

mod commands;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use ratiolog_core::io::RunReport;

#[derive(Parser, Debug)]
#[command(name = "ratiolog", version, about = "Exact verification of log-behavior of combinatorial sequences")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Property {
    LogConvex,
    LogConcave,
    RatioLogConvex,
    RatioLogConcave,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the built-in sequences.
    List,
    /// Generate the first terms of a sequence.
    Gen {
        /// Catalog name or path to a sequence JSON document.
        seq: String,
        #[arg(long)]
        count: usize,
        /// Directory for the term cache.
        #[arg(long)]
        cache: Option<std::path::PathBuf>,
    },
    /// Check a log-behavior property at every center in [from, to].
    Check {
        seq: String,
        #[arg(long, value_enum)]
        property: Property,
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
        #[arg(long)]
        strict: bool,
    },
    /// Check log-monotonicity of order k on the terms from..=horizon.
    Order {
        seq: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        horizon: i64,
        /// First index of the window (defaults to the sequence offset).
        #[arg(long)]
        from: Option<i64>,
    },
    /// Verify a certificate document or a built-in certificate.
    Certify {
        /// Catalog name (with --builtin).
        seq: Option<String>,
        #[arg(long, conflicts_with = "seq")]
        file: Option<std::path::PathBuf>,
        #[arg(long, requires = "seq")]
        builtin: bool,
    },
    /// Eligibility of a Gamma-quotient family, optionally with a finite order-k check.
    GammaCheck {
        /// n0,k0,k0bar,a,b,bbar
        #[arg(long, value_delimiter = ',', required = true)]
        params: Vec<u64>,
        #[arg(long)]
        verify_k: Option<usize>,
        /// Terms used by the finite check.
        #[arg(long, default_value_t = 60)]
        count: usize,
    },
    /// Smallest index from which order-k log-monotonicity holds up to the horizon.
    Onset {
        seq: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        horizon: i64,
    },
    /// Compare generated terms with a local OEIS b-file.
    OeisDiff {
        seq: String,
        #[arg(long)]
        bfile: std::path::PathBuf,
    },
    /// Evaluate the kernel h(t,u) on a grid (numeric evidence, not proof).
    HKernel {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        /// Points per axis of the default grid: t in (0, 4], u in [-1, 0].
        #[arg(long, default_value_t = 5)]
        grid: usize,
        /// Explicit t values, overriding the grid.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        t: Vec<String>,
        /// Explicit u values, overriding the grid.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        u: Vec<String>,
        #[arg(long, default_value_t = ratiolog_core::gamma::DEFAULT_DIGITS)]
        digits: u32,
    },
}

/// What a command produced, before rendering.
pub struct Output {
    pub command: &'static str,
    pub inputs: serde_json::Value,
    pub outcome: serde_json::Value,
    pub text: String,
    pub code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match commands::run(&cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => {
                    let report = RunReport {
                        command: out.command.into(),
                        inputs: out.inputs,
                        outcome: out.outcome,
                        timing_ms: start.elapsed().as_millis() as u64,
                    };
                    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
                }
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
