use std::borrow::Cow;

use ndarray::Array2;

use super::{check_dims, LatentFactors};
use crate::error::Result;
use crate::graph::{AdjacencyMatrix, Laplacian};

/// Up to this many nodes the fit and symmetry terms are summed pair by pair
/// (O(n²K), no cancellation). Larger graphs use `K × K` Gram identities.
pub const EXACT_EVAL_MAX_NODES: usize = 1024;

/// Unweighted pieces of the objective.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveTerms {
    /// `‖A − UXᵀ‖_F²`
    pub fit: f64,
    /// `‖UXᵀ − XUᵀ‖_F²`
    pub symmetry: f64,
    /// `tr(XᵀLX)`
    pub graph: f64,
}

impl ObjectiveTerms {
    pub fn total(&self, mu: f64, lambda: f64) -> f64 {
        self.fit + 0.5 * mu * self.symmetry + lambda * self.graph
    }
}

/// Neumaier-compensated accumulator.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// `J = ‖A − UXᵀ‖² + μ/2 ‖UXᵀ − XUᵀ‖² + λ tr(XᵀLX)` with `W = A`.
pub fn objective(
    a: &AdjacencyMatrix,
    lap: &Laplacian,
    f: &LatentFactors,
    mu: f64,
    lambda: f64,
) -> Result<f64> {
    Ok(objective_terms(a, lap, f)?.total(mu, lambda))
}

pub fn objective_terms(
    a: &AdjacencyMatrix,
    lap: &Laplacian,
    f: &LatentFactors,
) -> Result<ObjectiveTerms> {
    check_dims(a, lap, f)?;
    Ok(terms_unchecked(a, lap, f))
}

pub(crate) fn terms_unchecked(
    a: &AdjacencyMatrix,
    lap: &Laplacian,
    f: &LatentFactors,
) -> ObjectiveTerms {
    let (fit, symmetry) = if a.n() <= EXACT_EVAL_MAX_NODES {
        fit_and_symmetry_exact(a, f)
    } else {
        fit_and_symmetry_gram(a, f)
    };
    ObjectiveTerms {
        fit,
        symmetry,
        graph: lap.quadratic_form(a, f.representation()),
    }
}

/// Row-major contiguous rows of an `n × k` matrix.
struct Rows<'a> {
    data: Cow<'a, [f64]>,
    k: usize,
}

impl<'a> Rows<'a> {
    fn new(m: &'a Array2<f64>) -> Self {
        let data = match m.as_slice() {
            Some(s) => Cow::Borrowed(s),
            None => Cow::Owned(m.iter().copied().collect()),
        };
        Self { data, k: m.ncols() }
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.k..(i + 1) * self.k]
    }
}

fn dot_slices(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn fit_and_symmetry_exact(a: &AdjacencyMatrix, f: &LatentFactors) -> (f64, f64) {
    let u = Rows::new(f.basis());
    let x = Rows::new(f.representation());
    let n = a.n();
    let symmetric = f.is_symmetric();
    let mut fit = CompensatedSum::default();
    let mut sym = CompensatedSum::default();
    for i in 0..n {
        let (cols, vals) = a.row(i);
        let (u_i, x_i) = (u.row(i), x.row(i));
        let mut next = 0;
        for j in 0..n {
            let p_ij = dot_slices(u_i, x.row(j));
            let a_ij = if next < cols.len() && cols[next] == j {
                next += 1;
                vals[next - 1]
            } else {
                0.0
            };
            fit.add((a_ij - p_ij) * (a_ij - p_ij));
            if !symmetric && j > i {
                let gap = p_ij - dot_slices(u.row(j), x_i);
                sym.add(2.0 * gap * gap);
            }
        }
    }
    (fit.value(), sym.value())
}

fn fit_and_symmetry_gram(a: &AdjacencyMatrix, f: &LatentFactors) -> (f64, f64) {
    let u = f.basis();
    let x = f.representation();
    let (u_rows, x_rows) = (Rows::new(u), Rows::new(x));
    let mut cross = CompensatedSum::default();
    for i in 0..a.n() {
        let (cols, vals) = a.row(i);
        for (&j, &w) in cols.iter().zip(vals) {
            cross.add(w * dot_slices(u_rows.row(i), x_rows.row(j)));
        }
    }
    let norm_sq = approximation_norm_sq_gram(u, x);
    let fit = (a.frobenius_sq() - 2.0 * cross.value() + norm_sq).max(0.0);
    let symmetry = if f.is_symmetric() {
        0.0
    } else {
        symmetry_gap_sq_gram(u, x, norm_sq)
    };
    (fit, symmetry)
}

/// `‖UXᵀ‖_F² = Σ (UᵀU) ∘ (XᵀX)`.
fn approximation_norm_sq_gram(u: &Array2<f64>, x: &Array2<f64>) -> f64 {
    let uu = u.t().dot(u);
    let xx = x.t().dot(x);
    uu.iter().zip(&xx).map(|(p, q)| p * q).sum::<f64>().max(0.0)
}

/// `‖UXᵀ − XUᵀ‖² = 2‖UXᵀ‖² − 2 tr((XᵀU)²)`.
fn symmetry_gap_sq_gram(u: &Array2<f64>, x: &Array2<f64>, norm_sq: f64) -> f64 {
    let m = x.t().dot(u);
    let k = m.nrows();
    let mut trace_sq = 0.0;
    for p in 0..k {
        for q in 0..k {
            trace_sq += m[[p, q]] * m[[q, p]];
        }
    }
    (2.0 * norm_sq - 2.0 * trace_sq).max(0.0)
}

/// `‖UXᵀ‖_F²`, exact pairwise for small `n`, Gram identity otherwise.
pub fn approximation_norm_sq(f: &LatentFactors) -> f64 {
    approximation_norm_sq_with(f, f.n() <= EXACT_EVAL_MAX_NODES)
}

/// `‖UXᵀ − XUᵀ‖_F²`, exact pairwise for small `n`, Gram identity otherwise.
pub fn symmetry_gap_sq(f: &LatentFactors) -> f64 {
    symmetry_gap_sq_with(f, f.n() <= EXACT_EVAL_MAX_NODES)
}

pub(crate) fn approximation_norm_sq_with(f: &LatentFactors, exact: bool) -> f64 {
    let (u, x) = (f.basis(), f.representation());
    if !exact {
        return approximation_norm_sq_gram(u, x);
    }
    let (u, x) = (Rows::new(u), Rows::new(x));
    let mut acc = CompensatedSum::default();
    for i in 0..f.n() {
        for j in 0..f.n() {
            let p = dot_slices(u.row(i), x.row(j));
            acc.add(p * p);
        }
    }
    acc.value()
}

pub(crate) fn symmetry_gap_sq_with(f: &LatentFactors, exact: bool) -> f64 {
    if f.is_symmetric() {
        return 0.0;
    }
    let (u, x) = (f.basis(), f.representation());
    if !exact {
        return symmetry_gap_sq_gram(u, x, approximation_norm_sq_gram(u, x));
    }
    let (u, x) = (Rows::new(u), Rows::new(x));
    let mut acc = CompensatedSum::default();
    for i in 0..f.n() {
        for j in (i + 1)..f.n() {
            let gap = dot_slices(u.row(i), x.row(j)) - dot_slices(u.row(j), x.row(i));
            acc.add(2.0 * gap * gap);
        }
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorizer::init_factors;
    use crate::graph::{build_laplacian, generate_sbm};
    use ndarray::array;

    fn pair(u: Array2<f64>, x: Array2<f64>) -> LatentFactors {
        LatentFactors::pair(u, x).unwrap()
    }

    /// Materializes every product densely.
    fn brute_force(a: &Array2<f64>, u: &Array2<f64>, x: &Array2<f64>, mu: f64, lambda: f64) -> f64 {
        let p = u.dot(&x.t());
        let fit: f64 = (a - &p).iter().map(|v| v * v).sum();
        let sym: f64 = (&p - &p.t()).iter().map(|v| v * v).sum();
        let d = Array2::from_diag(&a.sum_axis(ndarray::Axis(1)));
        let l = d - a;
        let graph = x.t().dot(&l).dot(x).diag().sum();
        fit + 0.5 * mu * sym + lambda * graph
    }

    #[test]
    fn identity_fit_is_zero() {
        // D = I, W = I, so L = 0
        let eye = Array2::<f64>::eye(2);
        let a = AdjacencyMatrix::from_symmetric_dense(&eye).unwrap();
        let lap = build_laplacian(&a);
        let f = pair(eye.clone(), eye.clone());
        for (mu, lambda) in [(0.0, 0.0), (2.0, 5.0), (0.5, 100.0)] {
            assert_eq!(objective(&a, &lap, &f, mu, lambda).unwrap(), 0.0);
            assert_eq!(brute_force(&eye, &eye, &eye, mu, lambda), 0.0);
        }
    }

    #[test]
    fn scalar_case() {
        let a = AdjacencyMatrix::from_symmetric_dense(&array![[2.0]]).unwrap();
        let lap = build_laplacian(&a);
        let f = pair(array![[1.0]], array![[1.0]]);
        assert_eq!(objective(&a, &lap, &f, 2.0, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn asymmetric_outer_product() {
        let a = AdjacencyMatrix::from_edges(2, []).unwrap();
        let lap = build_laplacian(&a);
        let f = pair(array![[1.0], [0.0]], array![[0.0], [1.0]]);
        let j = objective(&a, &lap, &f, 2.0, 0.0).unwrap();
        assert_eq!(j, 3.0);
        assert_eq!(brute_force(&a.to_dense(), f.basis(), f.representation(), 2.0, 0.0), 3.0);
    }

    #[test]
    fn matches_dense_evaluator_on_sbm() {
        let (a, _) = generate_sbm(&[6, 7], 0.6, 0.1, 5).unwrap();
        let lap = build_laplacian(&a);
        let f = init_factors(a.n(), 3, 1);
        let dense = a.to_dense();
        for (mu, lambda) in [(0.0, 0.0), (1.0, 0.0), (0.25, 10.0)] {
            let got = objective(&a, &lap, &f, mu, lambda).unwrap();
            let want = brute_force(&dense, f.basis(), f.representation(), mu, lambda);
            assert!((got - want).abs() <= 1e-10 * want.max(1.0), "{got} vs {want}");
        }
    }

    #[test]
    fn gram_path_agrees_with_exact_path() {
        let (a, _) = generate_sbm(&[10, 12, 8], 0.5, 0.05, 2).unwrap();
        let f = init_factors(a.n(), 3, 9);
        let (fit_e, sym_e) = fit_and_symmetry_exact(&a, &f);
        let (fit_g, sym_g) = fit_and_symmetry_gram(&a, &f);
        assert!((fit_e - fit_g).abs() < 1e-9 * fit_e);
        assert!((sym_e - sym_g).abs() < 1e-9 * sym_e.max(1.0));
        assert!((approximation_norm_sq_with(&f, true) - approximation_norm_sq_with(&f, false)).abs() < 1e-9);
        assert!((symmetry_gap_sq_with(&f, true) - symmetry_gap_sq_with(&f, false)).abs() < 1e-9);
    }

    #[test]
    fn symmetric_factor_has_no_symmetry_term() {
        let (a, _) = generate_sbm(&[5, 5], 0.8, 0.1, 3).unwrap();
        let lap = build_laplacian(&a);
        let f = crate::factorizer::init_symmetric_factor(a.n(), 2, 0);
        let t = objective_terms(&a, &lap, &f).unwrap();
        assert_eq!(t.symmetry, 0.0);
        let u = f.basis();
        let fit: f64 = (a.to_dense() - u.dot(&u.t())).iter().map(|v| v * v).sum();
        assert!((t.fit - fit).abs() < 1e-10);
    }

    #[test]
    fn dimension_mismatch_is_contract_violation() {
        let a = AdjacencyMatrix::from_edges(3, [(0, 1, 1.0)]).unwrap();
        let lap = build_laplacian(&a);
        let f = init_factors(4, 2, 0);
        assert!(matches!(
            objective(&a, &lap, &f, 0.0, 0.0),
            Err(crate::Error::Contract(_))
        ));
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::default();
        s.add(1e16);
        for _ in 0..1000 {
            s.add(1.0);
        }
        s.add(-1e16);
        assert_eq!(s.value(), 1000.0);
    }
}
