//! Command-line front end: expression parser, configuration, evaluation,
//! the `check` identity suites and the Green-function driver.

pub mod check;
pub mod config;
pub mod eval;
pub mod laws;
pub mod parser;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::{Config, ConfigError};
pub use eval::{EvalError, Session, Value};
pub use parser::{parse_expr, Expr, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("evaluation error: {0}")]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Config(#[from] ConfigError),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qfa", version, about = "Exact calculator for the Laplace Hopf algebra of quantum fields")]
pub struct Cli {
    /// JSON configuration; the built-in default is used when omitted.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an expression and print it in canonical form.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// λ-order for S, expv and green.
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// Use T̄ in place of T inside S and green.
        #[arg(long)]
        renormalised: bool,
    },
    /// Run every identity suite on seeded random data.
    Check {
        /// Overrides the config's check.max_grade (default 4).
        #[arg(long)]
        max_grade: Option<usize>,
        /// Overrides the config's check.trials (default 100).
        #[arg(long)]
        trials: Option<usize>,
        /// Overrides the config's check.seed (default 0).
        #[arg(long)]
        seed: Option<u64>,
        /// Only run laws whose suite or name contains this text.
        #[arg(long)]
        only: Option<String>,
    },
    /// Print the λ-series of the Green function G_ij for a Lagrangian.
    Green {
        i: String,
        j: String,
        #[arg(allow_hyphen_values = true)]
        lagrangian: String,
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[arg(long)]
        renormalised: bool,
    },
}

fn load(path: &Option<PathBuf>) -> Result<Config, ConfigError> {
    match path {
        Some(p) => Config::load(p),
        None => Config::from_json(config::DEFAULT_CONFIG),
    }
}

fn index(text: &str) -> Option<String> {
    let digits = text.strip_prefix('e').unwrap_or(text);
    (!digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())).then(|| format!("e{digits}"))
}

/// Runs a parsed command line, writing results to `out` and diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let config = match load(&cli.config) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            return EXIT_USAGE;
        }
    };
    match cli.command {
        Command::Eval { expr, order, renormalised } => {
            let session = Session::new(config).with_order(order).renormalised(renormalised);
            match session.eval_str(&expr) {
                Ok(v) => {
                    let _ = writeln!(out, "{v}");
                    EXIT_OK
                }
                Err(e) => {
                    let _ = writeln!(err, "{e}");
                    EXIT_USAGE
                }
            }
        }
        Command::Green { i, j, lagrangian, order, renormalised } => {
            let (Some(i), Some(j)) = (index(&i), index(&j)) else {
                let _ = writeln!(err, "green: indices must look like 1 or e1");
                return EXIT_USAGE;
            };
            let session = Session::new(config).with_order(order).renormalised(renormalised);
            match session.eval_str(&format!("green({i}, {j}, {lagrangian})")) {
                Ok(v) => {
                    let _ = writeln!(out, "{v}");
                    EXIT_OK
                }
                Err(e) => {
                    let _ = writeln!(err, "{e}");
                    EXIT_USAGE
                }
            }
        }
        Command::Check { max_grade, trials, seed, only } => {
            let max_grade = max_grade.or(config.check.max_grade).unwrap_or(4);
            let trials = trials.or(config.check.trials).unwrap_or(100);
            let seed = seed.or(config.check.seed).unwrap_or(0);
            let setup = laws::Setup::new(&config, max_grade, seed);
            let report = check::run_check(&setup, trials, seed, only.as_deref());
            if report.laws.is_empty() {
                let _ = writeln!(err, "check: no law matches {:?}", only.unwrap_or_default());
                return EXIT_USAGE;
            }
            let _ = writeln!(out, "{report}");
            if report.passed() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
    }
}
