use crate::error::{Error, Result};
use crate::partition::Partition;

/// Dense contingency table plus its marginals.
struct Contingency {
    cells: Vec<Vec<f64>>,
    rows: Vec<f64>,
    cols: Vec<f64>,
    n: f64,
}

impl Contingency {
    fn new(p1: &Partition, p2: &Partition) -> Result<Self> {
        if p1.len() != p2.len() {
            return Err(Error::Contract(format!(
                "partitions cover {} and {} nodes",
                p1.len(),
                p2.len()
            )));
        }
        let mut cells = vec![vec![0.0; p2.k()]; p1.k()];
        for (&a, &b) in p1.labels().iter().zip(p2.labels()) {
            cells[a][b] += 1.0;
        }
        let rows = cells.iter().map(|r| r.iter().sum()).collect();
        let cols = (0..p2.k()).map(|j| cells.iter().map(|r| r[j]).sum()).collect();
        Ok(Self {
            cells,
            rows,
            cols,
            n: p1.len() as f64,
        })
    }
}

fn entropy(counts: &[f64], n: f64) -> f64 {
    counts
        .iter()
        .filter(|&&c| c > 0.0)
        .map(|&c| {
            let p = c / n;
            -p * p.ln()
        })
        .sum()
}

/// Normalized mutual information `2 I(p1; p2) / (H(p1) + H(p2))`, natural log.
///
/// Both partitions trivial (zero entropy) gives 1; exactly one trivial gives 0.
pub fn nmi(p1: &Partition, p2: &Partition) -> Result<f64> {
    let t = Contingency::new(p1, p2)?;
    if t.n == 0.0 {
        return Err(Error::Contract("partitions are empty".into()));
    }
    let h1 = entropy(&t.rows, t.n);
    let h2 = entropy(&t.cols, t.n);
    if h1 == 0.0 && h2 == 0.0 {
        return Ok(1.0);
    }
    if h1 == 0.0 || h2 == 0.0 {
        return Ok(0.0);
    }
    let mut mi = 0.0;
    for (i, row) in t.cells.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            if c > 0.0 {
                mi += c / t.n * (t.n * c / (t.rows[i] * t.cols[j])).ln();
            }
        }
    }
    Ok((2.0 * mi / (h1 + h2)).clamp(0.0, 1.0))
}

fn pairs(c: f64) -> f64 {
    c * (c - 1.0) / 2.0
}

/// Adjusted Rand index (Hubert–Arabie).
///
/// When the chance-corrected denominator vanishes (both partitions all
/// singletons, or both a single block) the partitions are identical and the
/// result is 1.
pub fn ari(p1: &Partition, p2: &Partition) -> Result<f64> {
    let t = Contingency::new(p1, p2)?;
    if t.n < 2.0 {
        return Err(Error::UndefinedMetric("ARI needs at least two nodes".into()));
    }
    let index: f64 = t.cells.iter().flatten().map(|&c| pairs(c)).sum();
    let row_pairs: f64 = t.rows.iter().map(|&c| pairs(c)).sum();
    let col_pairs: f64 = t.cols.iter().map(|&c| pairs(c)).sum();
    let expected = row_pairs * col_pairs / pairs(t.n);
    let max_index = 0.5 * (row_pairs + col_pairs);
    let denom = max_index - expected;
    if denom == 0.0 {
        return Ok(1.0);
    }
    Ok((index - expected) / denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(labels: &[usize]) -> Partition {
        Partition::from_labels(labels.to_vec())
    }

    #[test]
    fn identical_partitions() {
        let a = p(&[0, 0, 1, 1, 2]);
        assert!((nmi(&a, &a).unwrap() - 1.0).abs() < 1e-15);
        assert!((ari(&a, &a).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn one_trivial_partition() {
        assert_eq!(nmi(&p(&[0, 0, 0, 0]), &p(&[0, 1, 0, 1])).unwrap(), 0.0);
        assert_eq!(nmi(&p(&[0, 0, 0]), &p(&[0, 0, 0])).unwrap(), 1.0);
    }

    #[test]
    fn crossed_triple_ari() {
        // {a,b},{c} vs {a},{b,c}
        let v = ari(&p(&[0, 0, 1]), &p(&[0, 1, 1])).unwrap();
        assert!((v + 0.5).abs() < 1e-15);
    }

    #[test]
    fn degenerate_ari_denominator() {
        assert_eq!(ari(&p(&[0, 1, 2]), &p(&[2, 0, 1])).unwrap(), 1.0);
        assert_eq!(ari(&p(&[0, 0]), &p(&[0, 0])).unwrap(), 1.0);
    }

    #[test]
    fn ari_needs_two_nodes() {
        assert!(matches!(
            ari(&p(&[0]), &p(&[0])),
            Err(Error::UndefinedMetric(_))
        ));
    }

    #[test]
    fn length_mismatch_is_contract_violation() {
        assert!(matches!(nmi(&p(&[0, 1]), &p(&[0])), Err(Error::Contract(_))));
        assert!(matches!(ari(&p(&[0, 1]), &p(&[0])), Err(Error::Contract(_))));
    }

    #[test]
    fn empty_communities_are_tolerated() {
        let a = Partition::new(vec![0, 0, 3, 3], 5).unwrap();
        let b = p(&[1, 1, 0, 0]);
        assert!((nmi(&a, &b).unwrap() - 1.0).abs() < 1e-15);
        assert!((ari(&a, &b).unwrap() - 1.0).abs() < 1e-15);
    }
}
