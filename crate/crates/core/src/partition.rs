//! Hard community assignment from a nonnegative representation matrix.

use ndarray::ArrayView2;

use crate::error::{Error, Result};

/// Node → community labels in `0..k`. Some communities may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    labels: Vec<usize>,
    k: usize,
}

impl Partition {
    pub fn new(labels: Vec<usize>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Contract("partition needs at least one community".into()));
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= k) {
            return Err(Error::Contract(format!("label {bad} out of range for k={k}")));
        }
        Ok(Self { labels, k })
    }

    /// Builds a partition whose `k` is one past the largest label.
    pub fn from_labels(labels: Vec<usize>) -> Self {
        let k = labels.iter().max().map_or(1, |&m| m + 1);
        Self { labels, k }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Assigns node `j` to `argmax_k x_jk`. Ties go to the smallest column index.
pub fn assign(x: ArrayView2<'_, f64>) -> Result<Partition> {
    let (n, k) = x.dim();
    if n == 0 || k == 0 {
        return Err(Error::Contract(format!("cannot assign from an empty {n}x{k} matrix")));
    }
    let labels = x
        .rows()
        .into_iter()
        .map(|row| {
            let mut best = 0;
            for (c, &v) in row.iter().enumerate().skip(1) {
                if v > row[best] {
                    best = c;
                }
            }
            best
        })
        .collect();
    Partition::new(labels, k)
}
