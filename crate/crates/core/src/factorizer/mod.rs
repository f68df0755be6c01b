//! Latent factors, objectives and multiplicative update rules.
//!
//! All three models approximate the adjacency matrix by a rank-`K` product.
//! CFS keeps two factors `U` (basis) and `X` (representation) and adds two
//! penalties to the squared Frobenius fit:
//!
//! ```text
//! J(U, X) = ‖A − UXᵀ‖² + μ/2 ‖UXᵀ − XUᵀ‖² + λ tr(XᵀLX),   U, X ≥ 0
//! ```
//!
//! With `μ = 0` this is GNMF; with `μ = λ = 0` it is plain NMF. SNMF uses a
//! single factor (`X ≡ U`).
//!
//! Updates are Gauss–Seidel: `U` is refreshed from the current `X`, then `X`
//! from the new `U`. Denominators are floored at `eps_guard`.

mod kkt;
mod objective;
mod solve;
mod update;

pub use kkt::{gradients, kkt_residual, Gradients};
pub use objective::{
    approximation_norm_sq, objective, objective_terms, symmetry_gap_sq, ObjectiveTerms,
    EXACT_EVAL_MAX_NODES,
};
pub(crate) use objective::{approximation_norm_sq_with, symmetry_gap_sq_with};
pub use solve::{solve, SolveResult};
pub use update::{cfs_update_step, nmf_update_step, snmf_update_step};

use std::fmt;
use std::str::FromStr;

use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{AdjacencyMatrix, Laplacian};

pub const DEFAULT_EPS_GUARD: f64 = 1e-12;
pub const DEFAULT_TOL: f64 = 1e-6;
pub const DEFAULT_MAX_ITERS: usize = 500;

/// Factorization model. GNMF is [`Model::Cfs`] with `mu = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    Nmf,
    Snmf,
    Cfs,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Nmf => "nmf",
            Model::Snmf => "snmf",
            Model::Cfs => "cfs",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nmf" => Ok(Model::Nmf),
            "snmf" => Ok(Model::Snmf),
            "cfs" => Ok(Model::Cfs),
            other => Err(Error::Contract(format!("unknown model {other:?}"))),
        }
    }
}

/// Nonnegative `n × K` factors.
#[derive(Debug, Clone, PartialEq)]
pub enum LatentFactors {
    /// Independent basis `U` and representation `X`.
    Pair {
        basis: Array2<f64>,
        representation: Array2<f64>,
    },
    /// Single factor; `U` and `X` are the same matrix.
    Symmetric { factor: Array2<f64> },
}

impl LatentFactors {
    pub fn pair(basis: Array2<f64>, representation: Array2<f64>) -> Result<Self> {
        if basis.dim() != representation.dim() {
            return Err(Error::Contract(format!(
                "factor shapes differ: {:?} vs {:?}",
                basis.dim(),
                representation.dim()
            )));
        }
        check_nonnegative(&basis)?;
        check_nonnegative(&representation)?;
        Ok(LatentFactors::Pair {
            basis,
            representation,
        })
    }

    pub fn symmetric(factor: Array2<f64>) -> Result<Self> {
        check_nonnegative(&factor)?;
        Ok(LatentFactors::Symmetric { factor })
    }

    /// `U`.
    pub fn basis(&self) -> &Array2<f64> {
        match self {
            LatentFactors::Pair { basis, .. } => basis,
            LatentFactors::Symmetric { factor } => factor,
        }
    }

    /// `X`; the single factor for the symmetric model.
    pub fn representation(&self) -> &Array2<f64> {
        match self {
            LatentFactors::Pair { representation, .. } => representation,
            LatentFactors::Symmetric { factor } => factor,
        }
    }

    pub fn n(&self) -> usize {
        self.basis().nrows()
    }

    pub fn k(&self) -> usize {
        self.basis().ncols()
    }

    pub fn is_symmetric(&self) -> bool {
        matches!(self, LatentFactors::Symmetric { .. })
    }

    pub fn is_finite(&self) -> bool {
        match self {
            LatentFactors::Pair {
                basis,
                representation,
            } => basis.iter().chain(representation).all(|v| v.is_finite()),
            LatentFactors::Symmetric { factor } => factor.iter().all(|v| v.is_finite()),
        }
    }

    pub fn min_entry(&self) -> f64 {
        self.basis()
            .iter()
            .chain(self.representation())
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// Splits a symmetric factor into an explicit pair (cloning the factor).
    pub fn into_pair(self) -> (Array2<f64>, Array2<f64>) {
        match self {
            LatentFactors::Pair {
                basis,
                representation,
            } => (basis, representation),
            LatentFactors::Symmetric { factor } => (factor.clone(), factor),
        }
    }
}

fn check_nonnegative(m: &Array2<f64>) -> Result<()> {
    if m.iter().any(|&v| v < 0.0 || v.is_nan()) {
        return Err(Error::Contract("factor has a negative or NaN entry".into()));
    }
    Ok(())
}

fn uniform_open_closed(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Array2<f64> {
    // gen() is uniform on [0, 1); reflect to (0, 1] so no entry starts at zero
    Array2::from_shape_simple_fn((n, k), || 1.0 - rng.gen::<f64>())
}

/// Draws `U` then `X` entrywise uniform on `(0, 1]`, row-major.
pub fn init_factors(n: usize, k: usize, seed: u64) -> LatentFactors {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = uniform_open_closed(&mut rng, n, k);
    let representation = uniform_open_closed(&mut rng, n, k);
    LatentFactors::Pair {
        basis,
        representation,
    }
}

/// Single-factor counterpart of [`init_factors`]; equals its `U`.
pub fn init_symmetric_factor(n: usize, k: usize, seed: u64) -> LatentFactors {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    LatentFactors::Symmetric {
        factor: uniform_open_closed(&mut rng, n, k),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub model: Model,
    /// Symmetry-regularizer weight μ (CFS only).
    pub mu: f64,
    /// Graph-regularizer weight λ (CFS only).
    pub lambda: f64,
    pub k: usize,
    pub max_iters: usize,
    /// Stop when `|J_t − J_{t−1}| / max(J_{t−1}, eps_guard) < tol`.
    pub tol: f64,
    pub seed: u64,
    pub eps_guard: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            model: Model::Cfs,
            mu: 2f64.powi(-5),
            lambda: 10.0,
            k: 2,
            max_iters: DEFAULT_MAX_ITERS,
            tol: DEFAULT_TOL,
            seed: 0,
            eps_guard: DEFAULT_EPS_GUARD,
        }
    }
}

impl SolverConfig {
    pub fn new(model: Model, k: usize) -> Self {
        Self {
            model,
            k,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite_nonneg = |v: f64| v.is_finite() && v >= 0.0;
        if !finite_nonneg(self.mu) || !finite_nonneg(self.lambda) {
            return Err(Error::Domain(format!(
                "mu and lambda must be finite and >= 0 (mu={}, lambda={})",
                self.mu, self.lambda
            )));
        }
        if self.k == 0 {
            return Err(Error::Domain("k must be at least 1".into()));
        }
        let positive = |v: f64| v > 0.0; // false for NaN
        if !positive(self.tol) || !positive(self.eps_guard) {
            return Err(Error::Domain("tol and eps_guard must be positive".into()));
        }
        Ok(())
    }

    /// `(mu, lambda)` actually used by the model's objective.
    pub fn effective_weights(&self) -> (f64, f64) {
        match self.model {
            Model::Cfs => (self.mu, self.lambda),
            Model::Nmf | Model::Snmf => (0.0, 0.0),
        }
    }
}

fn check_dims(a: &AdjacencyMatrix, lap: &Laplacian, f: &LatentFactors) -> Result<()> {
    if lap.degrees().len() != a.n() {
        return Err(Error::Contract(format!(
            "laplacian has {} nodes, adjacency has {}",
            lap.degrees().len(),
            a.n()
        )));
    }
    if f.n() != a.n() {
        return Err(Error::Contract(format!(
            "factors have {} rows, adjacency has {} nodes",
            f.n(),
            a.n()
        )));
    }
    Ok(())
}
