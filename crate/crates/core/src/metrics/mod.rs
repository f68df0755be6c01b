//! Evaluation: modularity (no ground truth), NMI and ARI (against ground
//! truth), the approximation-asymmetry diagnostic, and Friedman ranks for
//! multi-model comparison tables.

mod agreement;
mod friedman;
mod modularity;

pub use agreement::{ari, nmi};
pub use friedman::{friedman_ranks, rank_descending, ScoreTable};
pub use modularity::modularity;

use crate::factorizer::{
    approximation_norm_sq_with, symmetry_gap_sq_with, LatentFactors, EXACT_EVAL_MAX_NODES,
};

/// Floor for the denominator of [`asymmetry`].
pub const ASYMMETRY_EPS: f64 = 1e-300;

/// Relative asymmetry `‖UXᵀ − XUᵀ‖_F / ‖UXᵀ‖_F` of the learnt approximation.
///
/// Large graphs go through `K × K` Gram identities instead of forming the
/// `n × n` product.
pub fn asymmetry(f: &LatentFactors) -> f64 {
    asymmetry_with(f, f.n() <= EXACT_EVAL_MAX_NODES)
}

fn asymmetry_with(f: &LatentFactors, exact: bool) -> f64 {
    if f.is_symmetric() {
        return 0.0;
    }
    let gap = symmetry_gap_sq_with(f, exact).sqrt();
    gap / approximation_norm_sq_with(f, exact).sqrt().max(ASYMMETRY_EPS)
}

/// Formats a `[0, 1]` score as a percentage with two decimals.
pub fn percent(score: f64) -> String {
    format!("{:.2}", score * 100.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorizer::init_factors;
    use ndarray::array;

    #[test]
    fn equal_factors_are_symmetric() {
        let u = array![[0.2, 0.9], [0.4, 0.1], [0.7, 0.3]];
        let f = LatentFactors::pair(u.clone(), u).unwrap();
        assert!(asymmetry(&f) < 1e-15);
    }

    #[test]
    fn scalar_factors_are_symmetric() {
        let f = LatentFactors::pair(array![[3.0]], array![[0.25]]).unwrap();
        assert_eq!(asymmetry(&f), 0.0);
    }

    #[test]
    fn outer_product_of_unit_vectors() {
        let f = LatentFactors::pair(array![[1.0], [0.0]], array![[0.0], [1.0]]).unwrap();
        // dense: UXᵀ = [[0,1],[0,0]], gap = [[0,1],[-1,0]] → √2 / 1
        assert!((asymmetry(&f) - 2f64.sqrt()).abs() < 1e-15);
        let gram = asymmetry_with(&f, false);
        assert!((gram - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn random_factors_dense_vs_gram() {
        let f = init_factors(30, 4, 3);
        let p = f.basis().dot(&f.representation().t());
        let dense = (&p - &p.t()).iter().map(|v| v * v).sum::<f64>().sqrt()
            / p.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!((asymmetry(&f) - dense).abs() < 1e-12);
        assert!((asymmetry_with(&f, false) - dense).abs() < 1e-9);
    }

    #[test]
    fn percent_has_two_decimals() {
        assert_eq!(percent(0.70024), "70.02");
        assert_eq!(percent(1.0), "100.00");
    }
}
