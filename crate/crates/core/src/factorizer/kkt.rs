use ndarray::Array2;

use super::{check_dims, LatentFactors};
use crate::error::Result;
use crate::graph::{AdjacencyMatrix, Laplacian};

/// Gradients of the objective. `representation` is `None` for a symmetric
/// factor, whose single gradient lives in `basis`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub basis: Array2<f64>,
    pub representation: Option<Array2<f64>>,
}

/// Gradients of `J = ‖A − UXᵀ‖² + μ/2 ‖UXᵀ − XUᵀ‖² + λ tr(XᵀLX)`:
///
/// ```text
/// ∂J/∂U = 2[(1+μ) U(XᵀX) − AX − μ X(UᵀX)]
/// ∂J/∂X = 2[(1+μ) X(UᵀU) − AU − μ U(XᵀU) + λ LX]
/// ```
///
/// For a symmetric factor the objective is `‖A − UUᵀ‖² + λ tr(UᵀLU)` and the
/// gradient is `4[U(UᵀU) − AU] + 2λ LU`.
pub fn gradients(
    a: &AdjacencyMatrix,
    lap: &Laplacian,
    f: &LatentFactors,
    mu: f64,
    lambda: f64,
) -> Result<Gradients> {
    check_dims(a, lap, f)?;
    Ok(match f {
        LatentFactors::Pair {
            basis: u,
            representation: x,
        } => {
            let ax = a.mul_dense(x);
            let au = a.mul_dense(u);
            let xtx = x.t().dot(x);
            let utu = u.t().dot(u);
            let utx = u.t().dot(x);
            let xtu = utx.t();
            let grad_u = (u.dot(&xtx) * (1.0 + mu) - &ax - &(x.dot(&utx) * mu)) * 2.0;
            let grad_x = (x.dot(&utu) * (1.0 + mu) - &au - &(u.dot(&xtu) * mu)
                + &(lap.apply(a, x) * lambda))
                * 2.0;
            Gradients {
                basis: grad_u,
                representation: Some(grad_x),
            }
        }
        LatentFactors::Symmetric { factor: u } => {
            let au = a.mul_dense(u);
            let uu_u = u.dot(&u.t().dot(u));
            let grad = (uu_u - &au) * 4.0 + &(lap.apply(a, u) * (2.0 * lambda));
            Gradients {
                basis: grad,
                representation: None,
            }
        }
    })
}

/// `max |min(θ, ∂J/∂θ)|` over every factor entry θ.
///
/// Zero exactly at a KKT point of the nonnegativity-constrained problem:
/// a positive entry needs a zero gradient, a zero entry a nonnegative one
/// (the negative part of the gradient there is the implicit multiplier).
pub fn kkt_residual(
    a: &AdjacencyMatrix,
    lap: &Laplacian,
    f: &LatentFactors,
    mu: f64,
    lambda: f64,
) -> Result<f64> {
    let grads = gradients(a, lap, f, mu, lambda)?;
    let worst = |factor: &Array2<f64>, grad: &Array2<f64>| {
        factor
            .iter()
            .zip(grad)
            .map(|(&v, &g)| v.min(g).abs())
            .fold(0.0, f64::max)
    };
    let mut residual = worst(f.basis(), &grads.basis);
    if let Some(gx) = &grads.representation {
        residual = residual.max(worst(f.representation(), gx));
    }
    Ok(residual)
}
