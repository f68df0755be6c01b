//! Community detection by nonnegative matrix factorization.
//!
//! The crate hosts the CFS detector (an asymmetric factorization `A ≈ U Xᵀ`
//! with a symmetry regularizer on the approximation and a graph-Laplacian
//! regularizer on the representation) together with its baseline lineage:
//!
//! | model | objective | update |
//! |-------|-----------|--------|
//! | NMF   | `‖A − UXᵀ‖²` | Lee–Seung multiplicative rule |
//! | SNMF  | `‖A − UUᵀ‖²` | damped rule `u ← u (½ + AU / 2UUᵀU)` |
//! | GNMF  | CFS with `μ = 0` | |
//! | CFS   | `‖A − UXᵀ‖² + μ/2 ‖UXᵀ − XUᵀ‖² + λ tr(XᵀLX)` | |
//!
//! Modules:
//! - [`graph`]: edge-list ingestion, sparse adjacency, degree/Laplacian pair, SBM generator
//! - [`factorizer`]: latent factors, objective, update rules, KKT residual, solve loop
//! - [`partition`]: row-wise argmax community assignment
//! - [`metrics`]: modularity, NMI, ARI, asymmetry, Friedman ranks

pub mod error;
pub mod factorizer;
pub mod graph;
pub mod metrics;
pub mod partition;

pub use error::{Error, Result};
pub use factorizer::{
    init_factors, kkt_residual, objective, solve, LatentFactors, Model, SolveResult, SolverConfig,
};
pub use graph::{AdjacencyMatrix, GroundTruth, Laplacian};
pub use partition::{assign, Partition};
