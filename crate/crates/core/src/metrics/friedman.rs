use crate::error::{Error, Result};

/// Mean scores, one row per dataset and one column per model. Higher is better.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreTable {
    pub datasets: Vec<String>,
    pub models: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

impl ScoreTable {
    pub fn new(datasets: Vec<String>, models: Vec<String>, values: Vec<Vec<f64>>) -> Result<Self> {
        if datasets.is_empty() || models.is_empty() {
            return Err(Error::Contract("score table is empty".into()));
        }
        if values.len() != datasets.len() {
            return Err(Error::Contract(format!(
                "{} rows for {} datasets",
                values.len(),
                datasets.len()
            )));
        }
        for (name, row) in datasets.iter().zip(&values) {
            if row.len() != models.len() {
                return Err(Error::Contract(format!(
                    "row {name:?} has {} cells, expected {}",
                    row.len(),
                    models.len()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::Contract(format!("row {name:?} has a missing cell")));
            }
        }
        Ok(Self {
            datasets,
            models,
            values,
        })
    }
}

/// Ranks `scores` descending from 1; tied scores share the mean of their ranks.
pub fn rank_descending(scores: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    let mut ranks = vec![0.0; scores.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && scores[order[end]] == scores[order[start]] {
            end += 1;
        }
        // positions start..end hold ranks start+1..=end
        let shared = (start + 1 + end) as f64 / 2.0;
        for &m in &order[start..end] {
            ranks[m] = shared;
        }
        start = end;
    }
    ranks
}

/// Average Friedman rank per model (column), lower is better.
pub fn friedman_ranks(t: &ScoreTable) -> Result<Vec<f64>> {
    if t.values.is_empty() || t.models.is_empty() {
        return Err(Error::Contract("score table is empty".into()));
    }
    let mut totals = vec![0.0; t.models.len()];
    for row in &t.values {
        if row.len() != totals.len() {
            return Err(Error::Contract("score table is not rectangular".into()));
        }
        for (acc, r) in totals.iter_mut().zip(rank_descending(row)) {
            *acc += r;
        }
    }
    let rows = t.values.len() as f64;
    Ok(totals.into_iter().map(|s| s / rows).collect())
}
