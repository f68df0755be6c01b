use ndarray::Array2;

use super::AdjacencyMatrix;

/// Degree vector of `W = A`; the Laplacian `L = D − W` stays implicit and is
/// applied through the adjacency it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct Laplacian {
    degrees: Vec<f64>,
}

pub fn build_laplacian(a: &AdjacencyMatrix) -> Laplacian {
    Laplacian::new(a)
}

impl Laplacian {
    pub fn new(a: &AdjacencyMatrix) -> Self {
        Self {
            degrees: a.degrees(),
        }
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    /// `D X`.
    pub fn degree_scale(&self, x: &Array2<f64>) -> Array2<f64> {
        let mut out = x.clone();
        for (mut row, &d) in out.rows_mut().into_iter().zip(&self.degrees) {
            row *= d;
        }
        out
    }

    /// `L X = D X − W X`.
    pub fn apply(&self, w: &AdjacencyMatrix, x: &Array2<f64>) -> Array2<f64> {
        self.degree_scale(x) - w.mul_dense(x)
    }

    /// `tr(Xᵀ L X)`, evaluated as `Σ_{i<j} w_ij ‖x_i − x_j‖²`, which is
    /// nonnegative term by term.
    pub fn quadratic_form(&self, w: &AdjacencyMatrix, x: &Array2<f64>) -> f64 {
        w.edges()
            .map(|(i, j, wij)| {
                let d: f64 = x
                    .row(i)
                    .iter()
                    .zip(x.row(j))
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum();
                wij * d
            })
            .sum()
    }

    /// Row sums of the implicit `L`; zero up to rounding.
    pub fn row_sums(&self, w: &AdjacencyMatrix) -> Vec<f64> {
        let adjacency_sums = w.degrees();
        self.degrees
            .iter()
            .zip(adjacency_sums)
            .map(|(d, s)| d - s)
            .collect()
    }
}
