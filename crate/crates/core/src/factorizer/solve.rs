use std::time::Instant;

use super::kkt::kkt_residual;
use super::objective::terms_unchecked;
use super::update::{cfs_update_step, nmf_update_step, snmf_update_step};
use super::{check_dims, init_factors, init_symmetric_factor, LatentFactors, Model, SolverConfig};
use crate::error::{Error, Result};
use crate::graph::{AdjacencyMatrix, Laplacian};
use crate::partition::{assign, Partition};

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub factors: LatentFactors,
    /// Objective at initialization followed by one value per iteration.
    pub objective_trace: Vec<f64>,
    pub kkt_residual: f64,
    pub iterations_run: usize,
    /// True when the relative-change test fired before `max_iters`.
    pub converged: bool,
    /// Seconds.
    pub wall_time: f64,
}

impl SolveResult {
    pub fn final_objective(&self) -> f64 {
        *self.objective_trace.last().expect("trace holds the initial value")
    }

    /// Row-wise argmax of the representation (the single factor for SNMF).
    pub fn partition(&self) -> Partition {
        assign(self.factors.representation().view()).expect("factors are non-empty")
    }
}

/// Runs the configured model from a seeded random start.
pub fn solve(a: &AdjacencyMatrix, lap: &Laplacian, cfg: &SolverConfig) -> Result<SolveResult> {
    cfg.validate()?;
    if a.n() == 0 {
        return Err(Error::Contract("graph has no nodes".into()));
    }
    let start = Instant::now();
    let (mu, lambda) = cfg.effective_weights();
    let mut factors = match cfg.model {
        Model::Snmf => init_symmetric_factor(a.n(), cfg.k, cfg.seed),
        Model::Nmf | Model::Cfs => init_factors(a.n(), cfg.k, cfg.seed),
    };
    check_dims(a, lap, &factors)?;

    let mut trace = Vec::with_capacity(cfg.max_iters.min(100_000) + 1);
    trace.push(terms_unchecked(a, lap, &factors).total(mu, lambda));
    let mut converged = false;
    let mut iterations_run = 0;

    for iteration in 1..=cfg.max_iters {
        factors = match cfg.model {
            Model::Nmf => nmf_update_step(a, factors, cfg.eps_guard),
            Model::Snmf => snmf_update_step(a, factors, cfg.eps_guard),
            Model::Cfs => cfs_update_step(a, lap, factors, mu, lambda, cfg.eps_guard),
        };
        if !factors.is_finite() {
            return Err(Error::NumericalFailure { iteration });
        }
        iterations_run = iteration;
        let previous = *trace.last().unwrap();
        let current = terms_unchecked(a, lap, &factors).total(mu, lambda);
        if !current.is_finite() {
            return Err(Error::NumericalFailure { iteration });
        }
        trace.push(current);
        if (current - previous).abs() / previous.max(cfg.eps_guard) < cfg.tol {
            converged = true;
            break;
        }
    }

    let kkt = kkt_residual(a, lap, &factors, mu, lambda)?;
    Ok(SolveResult {
        factors,
        objective_trace: trace,
        kkt_residual: kkt,
        iterations_run,
        converged,
        wall_time: start.elapsed().as_secs_f64(),
    })
}
