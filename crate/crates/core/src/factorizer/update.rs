use ndarray::{Array2, Zip};

use super::LatentFactors;
use crate::graph::{AdjacencyMatrix, Laplacian};

/// `factor ← factor ∘ numer / max(denom, eps)`.
fn rescale(factor: &mut Array2<f64>, numer: &Array2<f64>, denom: &Array2<f64>, eps: f64) {
    Zip::from(factor)
        .and(numer)
        .and(denom)
        .for_each(|f, &num, &den| *f *= num / den.max(eps));
}

/// One CFS step.
///
/// ```text
/// U ← U ∘ (AX + μ X(UᵀX)) / ((1+μ) U(XᵀX))
/// X ← X ∘ (AU + μ U(XᵀU) + λ AX) / ((1+μ) X(UᵀU) + λ DX)
/// ```
///
/// The `X` rule uses the freshly updated `U`; `AX` is shared between both
/// halves since `X` has not moved yet. `W = A`.
pub fn cfs_update_step(
    a: &AdjacencyMatrix,
    lap: &Laplacian,
    f: LatentFactors,
    mu: f64,
    lambda: f64,
    eps_guard: f64,
) -> LatentFactors {
    let (mut u, mut x) = f.into_pair();

    let ax = a.mul_dense(&x);
    let utx = u.t().dot(&x);
    let xtx = x.t().dot(&x);
    let numer = &ax + &(x.dot(&utx) * mu);
    let denom = u.dot(&xtx) * (1.0 + mu);
    rescale(&mut u, &numer, &denom, eps_guard);

    let au = a.mul_dense(&u);
    let xtu = x.t().dot(&u);
    let utu = u.t().dot(&u);
    let numer = au + &(u.dot(&xtu) * mu) + &(&ax * lambda);
    let denom = x.dot(&utu) * (1.0 + mu) + &(lap.degree_scale(&x) * lambda);
    rescale(&mut x, &numer, &denom, eps_guard);

    LatentFactors::Pair {
        basis: u,
        representation: x,
    }
}

/// One Lee–Seung step for `‖A − UXᵀ‖²`:
/// `U ← U ∘ AX / U(XᵀX)`, then `X ← X ∘ AᵀU / X(UᵀU)` with the new `U`.
pub fn nmf_update_step(a: &AdjacencyMatrix, f: LatentFactors, eps_guard: f64) -> LatentFactors {
    let (mut u, mut x) = f.into_pair();

    let ax = a.mul_dense(&x);
    let ux_x = u.dot(&x.t().dot(&x));
    rescale(&mut u, &ax, &ux_x, eps_guard);

    // A is symmetric, so AᵀU = AU
    let atu = a.mul_dense(&u);
    let xu_u = x.dot(&u.t().dot(&u));
    rescale(&mut x, &atu, &xu_u, eps_guard);

    LatentFactors::Pair {
        basis: u,
        representation: x,
    }
}

/// Damped symmetric step `U ← U ∘ (½ + AU / 2 U(UᵀU))`.
///
/// The undamped rule `U ← U ∘ AU / UUᵀU` oscillates; this one does not.
pub fn snmf_update_step(a: &AdjacencyMatrix, f: LatentFactors, eps_guard: f64) -> LatentFactors {
    let mut u = match f {
        LatentFactors::Symmetric { factor } => factor,
        // a pair is collapsed onto its basis
        LatentFactors::Pair { basis, .. } => basis,
    };
    let au = a.mul_dense(&u);
    let uu_u = u.dot(&u.t().dot(&u));
    Zip::from(&mut u)
        .and(&au)
        .and(&uu_u)
        .for_each(|v, &num, &den| *v *= 0.5 + num / (2.0 * den).max(eps_guard));
    LatentFactors::Symmetric { factor: u }
}
