use crate::error::{Error, Result};
use crate::graph::AdjacencyMatrix;
use crate::partition::Partition;

/// Newman modularity `Q = (1/2m) Σ_ij (a_ij − k_i k_j / 2m) δ(c_i, c_j)`,
/// evaluated per community as `Σ_c (in_c / 2m − (d_c / 2m)²)` where `in_c`
/// sums `a_ij` over ordered pairs inside `c` and `d_c` is the community degree.
pub fn modularity(a: &AdjacencyMatrix, p: &Partition) -> Result<f64> {
    if p.len() != a.n() {
        return Err(Error::Contract(format!(
            "partition covers {} nodes, graph has {}",
            p.len(),
            a.n()
        )));
    }
    let two_m = a.total_weight();
    if two_m <= 0.0 {
        return Err(Error::UndefinedMetric("modularity of a graph without edges".into()));
    }
    let labels = p.labels();
    let mut internal = vec![0.0; p.k()];
    let mut degree = vec![0.0; p.k()];
    for i in 0..a.n() {
        let c = labels[i];
        let (cols, vals) = a.row(i);
        for (&j, &w) in cols.iter().zip(vals) {
            degree[c] += w;
            if labels[j] == c {
                internal[c] += w;
            }
        }
    }
    Ok(internal
        .iter()
        .zip(&degree)
        .map(|(&e, &d)| e / two_m - (d / two_m) * (d / two_m))
        .sum())
}
