//! Restart execution on a bounded worker pool.
//!
//! Each job is one sequential solve keyed by its position in the job list;
//! results come back in job order regardless of the worker count, so reports
//! are identical for any `--workers`.

use cfs_core::metrics::{ari, asymmetry, modularity, nmi};
use cfs_core::{solve, Error, Partition, SolverConfig};
use rayon::prelude::*;

use crate::error::{CliError, CliResult};
use crate::io::Dataset;
use crate::report::RestartResult;

#[derive(Debug, Clone)]
pub struct RestartOutcome {
    pub result: RestartResult,
    pub partition: Partition,
    pub objective_trace: Vec<f64>,
}

/// `Ok(None)` when the metric is undefined for this input.
fn defined(value: cfs_core::Result<f64>) -> CliResult<Option<f64>> {
    match value {
        Ok(v) => Ok(Some(v)),
        Err(Error::UndefinedMetric(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn run_one(data: &Dataset, cfg: &SolverConfig) -> CliResult<RestartOutcome> {
    let solved = solve(&data.graph, &data.laplacian, cfg).map_err(|e| match e {
        Error::NumericalFailure { .. } => {
            CliError::Numerical(format!("{} (model {}, seed {})", e, cfg.model, cfg.seed))
        }
        other => other.into(),
    })?;
    let partition = solved.partition();
    let (nmi, ari) = match &data.truth {
        Some(truth) => (
            defined(nmi(truth, &partition))?,
            defined(ari(truth, &partition))?,
        ),
        None => (None, None),
    };
    let result = RestartResult {
        seed: cfg.seed,
        modularity: defined(modularity(&data.graph, &partition))?,
        nmi,
        ari,
        asymmetry: asymmetry(&solved.factors),
        iterations: solved.iterations_run,
        converged: solved.converged,
        kkt_residual: solved.kkt_residual,
        final_objective: solved.final_objective(),
        wall_time: solved.wall_time,
    };
    Ok(RestartOutcome {
        result,
        partition,
        objective_trace: solved.objective_trace,
    })
}

/// Runs every `(dataset, config)` job on `workers` threads, returning
/// outcomes in job order. The first failing job (by position) is reported.
pub fn run_jobs(jobs: &[(&Dataset, SolverConfig)], workers: usize) -> CliResult<Vec<RestartOutcome>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {workers} workers: {e}")))?;
    let outcomes: Vec<CliResult<RestartOutcome>> =
        pool.install(|| jobs.par_iter().map(|(data, cfg)| run_one(data, cfg)).collect());
    outcomes.into_iter().collect()
}
