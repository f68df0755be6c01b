use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AdjacencyMatrix, GroundTruth};
use crate::error::{Error, Result};

/// Samples a planted-partition stochastic block model.
///
/// Nodes are numbered block by block. Each unordered pair `i < j` is visited
/// in row-major order and draws exactly one uniform variate, so a given
/// `(block_sizes, p_in, p_out, seed)` always yields the same graph.
pub fn generate_sbm(
    block_sizes: &[usize],
    p_in: f64,
    p_out: f64,
    seed: u64,
) -> Result<(AdjacencyMatrix, GroundTruth)> {
    if block_sizes.is_empty() || block_sizes.contains(&0) {
        return Err(Error::Domain("block sizes must be positive".into()));
    }
    if !(0.0..=1.0).contains(&p_in) || !(0.0..=1.0).contains(&p_out) {
        return Err(Error::Domain(format!(
            "probabilities must lie in [0, 1], got p_in={p_in}, p_out={p_out}"
        )));
    }
    if p_out > p_in {
        return Err(Error::Domain(format!(
            "p_out ({p_out}) exceeds p_in ({p_in}); no planted structure"
        )));
    }

    let labels: Vec<usize> = block_sizes
        .iter()
        .enumerate()
        .flat_map(|(b, &size)| std::iter::repeat_n(b, size))
        .collect();
    let n = labels.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let p = if labels[i] == labels[j] { p_in } else { p_out };
            if rng.gen::<f64>() < p {
                edges.push((i, j, 1.0));
            }
        }
    }
    Ok((AdjacencyMatrix::from_edges(n, edges)?, GroundTruth::new(labels)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_extremes() {
        let (a, gt) = generate_sbm(&[2, 2], 1.0, 0.0, 3).unwrap();
        assert_eq!(gt.labels(), &[0, 0, 1, 1]);
        assert_eq!(a.edges().collect::<Vec<_>>(), vec![(0, 1, 1.0), (2, 3, 1.0)]);
    }

    #[test]
    fn zero_probability_gives_empty_graph() {
        let (a, gt) = generate_sbm(&[3], 0.0, 0.0, 11).unwrap();
        assert_eq!(a.n(), 3);
        assert_eq!(a.nnz(), 0);
        assert_eq!(gt.num_communities(), 1);
    }

    #[test]
    fn same_seed_same_graph() {
        let (a, _) = generate_sbm(&[10, 15], 0.4, 0.1, 42).unwrap();
        let (b, _) = generate_sbm(&[10, 15], 0.4, 0.1, 42).unwrap();
        let (c, _) = generate_sbm(&[10, 15], 0.4, 0.1, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn rejects_inverted_probabilities() {
        assert!(matches!(
            generate_sbm(&[2, 2], 0.1, 0.5, 0),
            Err(Error::Domain(_))
        ));
        assert!(generate_sbm(&[2, 0], 0.5, 0.1, 0).is_err());
        assert!(generate_sbm(&[], 0.5, 0.1, 0).is_err());
        assert!(generate_sbm(&[2], 1.5, 0.1, 0).is_err());
    }
}
