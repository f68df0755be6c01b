//! Harness behind the `cfs` binary: seeded restarts on a worker pool,
//! hyperparameter sweeps scored by modularity, multi-model comparison with
//! Friedman ranks, and a planted-partition generator.
//!
//! Exit codes: 0 success, 1 invalid flags, 2 unreadable or malformed input,
//! 3 numerical failure.

pub mod args;
pub mod commands;
pub mod error;
pub mod io;
pub mod report;
pub mod runner;

use std::io::Write;

pub use args::{Cli, Command};
pub use error::{CliError, CliResult};

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Detect(a) => commands::detect::run(a, stdout),
        Command::Sweep(a) => commands::sweep::run(a, stdout),
        Command::Compare(a) => commands::compare::run(a, stdout),
        Command::GenSbm(a) => commands::gen_sbm::run(a, stdout),
    }
}
