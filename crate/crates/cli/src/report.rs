//! JSON report types. Every report carries `schema_version`; bump it when a
//! field is renamed or removed.

use serde::Serialize;

use crate::io::Dataset;

pub const SCHEMA_VERSION: u32 = 1;

/// Mean and population standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Stat {
    pub mean: f64,
    pub std: f64,
}

impl Stat {
    /// `None` for an empty slice.
    pub fn of(values: &[f64]) -> Option<Stat> {
        if values.is_empty() {
            return None;
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        Some(Stat {
            mean,
            std: var.sqrt(),
        })
    }

    /// Statistic over a metric that is either defined for every restart or for none.
    fn of_optional(values: impl Iterator<Item = Option<f64>>) -> Option<Stat> {
        let collected: Option<Vec<f64>> = values.collect();
        collected.and_then(|v| Stat::of(&v))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphEcho {
    pub name: String,
    pub nodes: usize,
    pub edges: usize,
    pub weighted: bool,
    pub ground_truth: bool,
}

impl GraphEcho {
    pub fn of(data: &Dataset) -> Self {
        Self {
            name: data.name.clone(),
            nodes: data.graph.n(),
            edges: data.graph.edge_count(),
            weighted: data.weighted,
            ground_truth: data.truth.is_some(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub model: String,
    pub k: usize,
    pub mu: f64,
    pub lambda: f64,
    pub tol: f64,
    pub max_iters: usize,
    /// Base seed; restart `r` uses `seed + r`.
    pub seed: u64,
    pub restarts: usize,
}

/// Outcome of one seeded restart.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RestartResult {
    pub seed: u64,
    /// `None` when the graph has no edges.
    pub modularity: Option<f64>,
    pub nmi: Option<f64>,
    pub ari: Option<f64>,
    pub asymmetry: f64,
    pub iterations: usize,
    pub converged: bool,
    pub kkt_residual: f64,
    pub final_objective: f64,
    /// Seconds.
    pub wall_time: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Aggregate {
    pub modularity: Option<Stat>,
    pub nmi: Option<Stat>,
    pub ari: Option<Stat>,
    pub asymmetry: Option<Stat>,
    pub iterations: Option<Stat>,
    pub kkt_residual: Option<Stat>,
    pub wall_time: Option<Stat>,
}

impl Aggregate {
    pub fn of(results: &[RestartResult]) -> Self {
        let column = |f: fn(&RestartResult) -> f64| Stat::of(&results.iter().map(f).collect::<Vec<_>>());
        Self {
            modularity: Stat::of_optional(results.iter().map(|r| r.modularity)),
            nmi: Stat::of_optional(results.iter().map(|r| r.nmi)),
            ari: Stat::of_optional(results.iter().map(|r| r.ari)),
            asymmetry: column(|r| r.asymmetry),
            iterations: column(|r| r.iterations as f64),
            kkt_residual: column(|r| r.kkt_residual),
            wall_time: column(|r| r.wall_time),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub graph: GraphEcho,
    pub config: ConfigEcho,
    pub restarts: Vec<RestartResult>,
    pub aggregate: Aggregate,
    /// Seed of the restart with the highest modularity (first on ties).
    pub best_seed: u64,
    /// Objective values of the best restart, starting at initialization.
    pub objective_trace: Vec<f64>,
}

/// Index of the highest modularity, first on ties; restarts without a
/// modularity value rank below all others.
pub fn best_index(results: &[RestartResult]) -> usize {
    let score = |r: &RestartResult| r.modularity.unwrap_or(f64::NEG_INFINITY);
    let mut best = 0;
    for (i, r) in results.iter().enumerate().skip(1) {
        if score(r) > score(&results[best]) {
            best = i;
        }
    }
    best
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepPoint {
    /// `"lambda"` or `"mu"`: the parameter varied on this row.
    pub grid: &'static str,
    pub value: f64,
    pub mu: f64,
    pub lambda: f64,
    pub modularity: Stat,
    pub restarts: Vec<RestartResult>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub graph: GraphEcho,
    pub config: ConfigEcho,
    pub fixed_mu: f64,
    pub points: Vec<SweepPoint>,
    pub best_lambda: f64,
    pub best_mu: f64,
    pub best_modularity: Stat,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScoreBlock {
    /// Percent, rows are datasets and columns models.
    pub values: Vec<Vec<f64>>,
    /// Average Friedman rank per model; lower is better.
    pub ranks: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    pub schema_version: u32,
    pub datasets: Vec<String>,
    pub models: Vec<String>,
    pub nmi: ScoreBlock,
    /// Absent when scores were read from a file.
    pub ari: Option<ScoreBlock>,
}
