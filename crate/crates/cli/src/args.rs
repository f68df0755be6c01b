use std::path::PathBuf;

use cfs_core::factorizer::{DEFAULT_MAX_ITERS, DEFAULT_TOL};
use cfs_core::{Model, SolverConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "cfs", version, about = "Community detection by constrained symmetric NMF")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factorize one graph with seeded restarts; write assignments and a JSON report.
    Detect(DetectArgs),
    /// Grid-search λ (μ fixed), then μ at the best λ, scoring by mean modularity.
    Sweep(SweepArgs),
    /// Build a dataset × model score table and its Friedman ranks.
    Compare(CompareArgs),
    /// Write a planted-partition graph and its ground truth.
    GenSbm(GenSbmArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Nmf,
    Snmf,
    Gnmf,
    Cfs,
}

impl ModelArg {
    pub fn name(self) -> &'static str {
        match self {
            ModelArg::Nmf => "nmf",
            ModelArg::Snmf => "snmf",
            ModelArg::Gnmf => "gnmf",
            ModelArg::Cfs => "cfs",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Edge list: `src dst [weight]` per line, `#` comments.
    #[arg(long, value_name = "PATH")]
    pub edges: PathBuf,
    /// Read the third column as an edge weight.
    #[arg(long)]
    pub weighted: bool,
    /// `node_label community_label` per line; enables NMI and ARI.
    #[arg(long, value_name = "PATH")]
    pub ground_truth: Option<PathBuf>,
}

/// Solver and restart settings shared by every running subcommand.
#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    /// Number of communities K.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Symmetry-regularizer weight (cfs only).
    #[arg(long, default_value_t = 0.03125)]
    pub mu: f64,
    /// Graph-regularizer weight (cfs and gnmf).
    #[arg(long, default_value_t = 10.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_ITERS)]
    pub max_iters: usize,
    /// Restarts use seeds `seed .. seed + restarts`.
    #[arg(long, default_value_t = 10)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; results do not depend on this.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

impl SolveArgs {
    pub fn validate(&self) -> CliResult<()> {
        if self.restarts == 0 {
            return Err(CliError::Usage("--restarts must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(CliError::Usage("--workers must be at least 1".into()));
        }
        if self.seed.checked_add(self.restarts as u64).is_none() {
            return Err(CliError::Usage("--seed + --restarts overflows".into()));
        }
        self.config(ModelArg::Cfs, self.mu, self.lambda, 0).validate()?;
        Ok(())
    }

    /// Solver configuration for one restart. `gnmf` is CFS with `mu = 0`.
    pub fn config(&self, model: ModelArg, mu: f64, lambda: f64, seed: u64) -> SolverConfig {
        let (model, mu) = match model {
            ModelArg::Nmf => (Model::Nmf, mu),
            ModelArg::Snmf => (Model::Snmf, mu),
            ModelArg::Gnmf => (Model::Cfs, 0.0),
            ModelArg::Cfs => (Model::Cfs, mu),
        };
        SolverConfig {
            model,
            mu,
            lambda,
            k: self.k,
            max_iters: self.max_iters,
            tol: self.tol,
            seed,
            ..SolverConfig::default()
        }
    }

    pub fn seeds(&self) -> impl Iterator<Item = u64> + Clone {
        let base = self.seed;
        (0..self.restarts as u64).map(move |r| base + r)
    }
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = ModelArg::Cfs)]
    pub model: ModelArg,
    #[command(flatten)]
    pub solve: SolveArgs,
    /// Output directory for `assignments.tsv` and `report.json`.
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub solve: SolveArgs,
    /// μ held fixed while λ is swept.
    #[arg(long, default_value_t = 0.00390625)]
    pub fixed_mu: f64,
    #[arg(
        long,
        value_delimiter = ',',
        default_values_t = [0.0, 1e-2, 1e-1, 1.0, 10.0, 100.0, 1000.0]
    )]
    pub lambdas: Vec<f64>,
    #[arg(
        long,
        value_delimiter = ',',
        default_values_t = [0.0009765625, 0.00390625, 0.015625, 0.0625, 0.25, 1.0, 2.0]
    )]
    pub mus: Vec<f64>,
    /// Output directory for `sweep.tsv` and `sweep.json`.
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Precomputed score table (TSV, datasets × models); skips solving.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["edges", "ground_truth", "models"])]
    pub scores: Option<PathBuf>,
    /// Dataset edge list; repeat once per dataset.
    #[arg(long, value_name = "PATH")]
    pub edges: Vec<PathBuf>,
    /// Ground truth for the dataset at the same position.
    #[arg(long, value_name = "PATH")]
    pub ground_truth: Vec<PathBuf>,
    #[arg(long)]
    pub weighted: bool,
    /// Model to compare; repeat for each column.
    #[arg(long = "model", value_enum, value_name = "MODEL")]
    pub models: Vec<ModelArg>,
    #[command(flatten)]
    pub solve: SolveArgs,
    /// Optional directory for `compare.json`.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenSbmArgs {
    /// Block sizes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub blocks: Vec<usize>,
    #[arg(long)]
    pub p_in: f64,
    #[arg(long)]
    pub p_out: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory for `edges.txt` and `truth.txt`.
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
}
