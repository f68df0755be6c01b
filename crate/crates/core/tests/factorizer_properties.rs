use cfs_core::factorizer::{
    cfs_update_step, gradients, init_factors, kkt_residual, nmf_update_step, objective,
    DEFAULT_EPS_GUARD,
};
use cfs_core::graph::{build_laplacian, generate_sbm, AdjacencyMatrix, Laplacian};
use cfs_core::metrics::asymmetry;
use cfs_core::{solve, LatentFactors, Model, SolverConfig};
use ndarray::{Array2, Axis};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EPS: f64 = DEFAULT_EPS_GUARD;
const MUS: [f64; 3] = [0.0, 1.0 / 32.0, 1.0];
const LAMBDAS: [f64; 3] = [0.0, 1.0, 10.0];

/// Random simple graph with 2..=50 nodes and a random K in 1..=5.
fn random_instance(seed: u64) -> (AdjacencyMatrix, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=50);
    let k = rng.gen_range(1..=5);
    let density = rng.gen_range(0.05..0.6);
    let weighted = rng.gen_bool(0.3);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(density) {
                let w = if weighted { rng.gen_range(0.1..3.0) } else { 1.0 };
                edges.push((i, j, w));
            }
        }
    }
    (AdjacencyMatrix::from_edges(n, edges).unwrap(), k)
}

#[test]
fn objective_is_monotone_and_factors_stay_nonnegative() {
    let mut checked = 0;
    for seed in 0..54u64 {
        let (a, k) = random_instance(seed);
        let lap = build_laplacian(&a);
        let mu = MUS[seed as usize % 3];
        let lambda = LAMBDAS[(seed as usize / 3) % 3];
        for model in [Model::Nmf, Model::Snmf, Model::Cfs] {
            let cfg = SolverConfig {
                model,
                mu,
                lambda,
                k,
                max_iters: 300,
                tol: 1e-300,
                seed,
                ..SolverConfig::default()
            };
            let r = solve(&a, &lap, &cfg).unwrap();
            for (t, w) in r.objective_trace.windows(2).enumerate() {
                assert!(
                    w[1] <= w[0] + 1e-10,
                    "seed {seed} {model} mu={mu} lambda={lambda} t={t}: {} -> {}",
                    w[0],
                    w[1]
                );
            }
            assert!(r.factors.min_entry() >= 0.0);
            checked += 1;
        }
    }
    assert!(checked >= 150);
}

fn max_relative_gap(p: &Array2<f64>, q: &Array2<f64>) -> f64 {
    p.iter()
        .zip(q)
        .map(|(a, b)| {
            let scale = a.abs().max(b.abs());
            if scale == 0.0 {
                0.0
            } else {
                (a - b).abs() / scale
            }
        })
        .fold(0.0, f64::max)
}

#[test]
fn cfs_without_regularizers_is_nmf() {
    for seed in 0..20u64 {
        let (a, k) = random_instance(1000 + seed);
        let lap = build_laplacian(&a);
        let mut cfs = init_factors(a.n(), k, seed);
        let mut nmf = cfs.clone();
        for _ in 0..10 {
            cfs = cfs_update_step(&a, &lap, cfs, 0.0, 0.0, EPS);
            nmf = nmf_update_step(&a, nmf, EPS);
            assert!(max_relative_gap(cfs.basis(), nmf.basis()) <= 1e-15);
            assert!(max_relative_gap(cfs.representation(), nmf.representation()) <= 1e-15);
        }
    }
}

#[test]
fn cfs_random_five_node_step_equals_nmf_step() {
    let (a, _) = generate_sbm(&[5], 0.6, 0.6, 3).unwrap();
    let lap = build_laplacian(&a);
    let f = init_factors(5, 5, 77);
    let cfs = cfs_update_step(&a, &lap, f.clone(), 0.0, 0.0, EPS);
    let nmf = nmf_update_step(&a, f, EPS);
    assert!(max_relative_gap(cfs.basis(), nmf.basis()) <= 1e-15);
    assert!(max_relative_gap(cfs.representation(), nmf.representation()) <= 1e-15);
}

/// GNMF step written against dense matrices, materializing UXᵀ.
fn dense_gnmf_step(a: &Array2<f64>, u: &Array2<f64>, x: &Array2<f64>, lambda: f64) -> (Array2<f64>, Array2<f64>) {
    let floor = |m: Array2<f64>| m.mapv(|v| v.max(EPS));
    let u_new = u * &(a.dot(x) / floor(u.dot(&x.t()).dot(x)));
    let d = Array2::from_diag(&a.sum_axis(Axis(1)));
    let numer = a.t().dot(&u_new) + a.dot(x) * lambda;
    let denom = x.dot(&u_new.t()).dot(&u_new) + d.dot(x) * lambda;
    let x_new = x * &(numer / floor(denom));
    (u_new, x_new)
}

#[test]
fn cfs_with_zero_mu_matches_dense_gnmf() {
    for seed in 0..10u64 {
        let (a, k) = random_instance(2000 + seed);
        let lap = build_laplacian(&a);
        let dense = a.to_dense();
        for lambda in [1.0, 10.0] {
            let mut f = init_factors(a.n(), k, seed);
            let (mut u, mut x) = (f.basis().clone(), f.representation().clone());
            for _ in 0..5 {
                f = cfs_update_step(&a, &lap, f, 0.0, lambda, EPS);
                (u, x) = dense_gnmf_step(&dense, &u, &x, lambda);
                assert!(max_relative_gap(f.basis(), &u) <= 1e-10);
                assert!(max_relative_gap(f.representation(), &x) <= 1e-10);
            }
        }
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 0 {
        0.5 * (v[m - 1] + v[m])
    } else {
        v[m]
    }
}

#[test]
fn kkt_residual_shrinks_in_median() {
    let (a, _) = generate_sbm(&[20, 20], 0.4, 0.05, 12).unwrap();
    let lap = build_laplacian(&a);
    let (mu, lambda) = (1.0 / 32.0, 1.0);
    let total = 400;
    let checkpoints = [1, total / 2, total];
    let mut at = vec![Vec::new(); 3];
    for seed in 0..20u64 {
        let mut f = init_factors(a.n(), 2, seed);
        for t in 1..=total {
            f = cfs_update_step(&a, &lap, f, mu, lambda, EPS);
            if let Some(c) = checkpoints.iter().position(|&c| c == t) {
                at[c].push(kkt_residual(&a, &lap, &f, mu, lambda).unwrap());
            }
        }
    }
    let medians: Vec<f64> = at.into_iter().map(median).collect();
    assert!(medians[0] >= medians[1] && medians[1] >= medians[2], "{medians:?}");
}

fn perturbed(f: &LatentFactors, which: usize, idx: (usize, usize), delta: f64) -> LatentFactors {
    let (mut u, mut x) = f.clone().into_pair();
    if which == 0 {
        u[idx] += delta;
    } else {
        x[idx] += delta;
    }
    LatentFactors::pair(u, x).unwrap()
}

fn finite_difference_gap(a: &AdjacencyMatrix, lap: &Laplacian, f: &LatentFactors, mu: f64, lambda: f64) -> f64 {
    let g = gradients(a, lap, f, mu, lambda).unwrap();
    let gx = g.representation.unwrap();
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    for which in 0..2 {
        let analytic = if which == 0 { &g.basis } else { &gx };
        for i in 0..f.n() {
            for k in 0..f.k() {
                let plus = objective(a, lap, &perturbed(f, which, (i, k), h), mu, lambda).unwrap();
                let minus = objective(a, lap, &perturbed(f, which, (i, k), -h), mu, lambda).unwrap();
                let fd = (plus - minus) / (2.0 * h);
                let gap = (fd - analytic[[i, k]]).abs() / analytic[[i, k]].abs().max(1.0);
                worst = worst.max(gap);
            }
        }
    }
    worst
}

#[test]
fn gradients_agree_with_central_differences() {
    for point in 0..10u64 {
        let (a, k) = random_instance(3000 + point);
        let lap = build_laplacian(&a);
        let f = init_factors(a.n(), k, point);
        assert!(f.min_entry() > 0.0);
        let mu = MUS[point as usize % 3];
        let lambda = LAMBDAS[(point as usize + 1) % 3];
        let gap = finite_difference_gap(&a, &lap, &f, mu, lambda);
        assert!(gap <= 1e-5, "point {point}: relative gap {gap}");
    }
}

#[test]
fn stronger_symmetry_weight_reduces_asymmetry() {
    let (a, _) = generate_sbm(&[25, 25], 0.3, 0.02, 5).unwrap();
    let lap = build_laplacian(&a);
    let run = |mu: f64| {
        let values = (0..20u64)
            .map(|seed| {
                let cfg = SolverConfig {
                    model: Model::Cfs,
                    mu,
                    lambda: 10.0,
                    k: 2,
                    seed,
                    ..SolverConfig::default()
                };
                asymmetry(&solve(&a, &lap, &cfg).unwrap().factors)
            })
            .collect();
        median(values)
    };
    let strong = run(1.0);
    let weak = run(2f64.powi(-10));
    assert!(strong < weak, "mu=1: {strong}, mu=2^-10: {weak}");
}

#[test]
fn snmf_step_matches_dense_formula() {
    let (a, _) = generate_sbm(&[6, 6], 0.7, 0.1, 2).unwrap();
    let dense = a.to_dense();
    let f = cfs_core::factorizer::init_symmetric_factor(12, 3, 4);
    let u = f.basis().clone();
    let out = cfs_core::factorizer::snmf_update_step(&a, f, EPS);
    let ratio = dense.dot(&u) / (u.dot(&u.t()).dot(&u) * 2.0);
    let expected = &u * &ratio.mapv(|r| 0.5 + r);
    assert!(max_relative_gap(out.basis(), &expected) <= 1e-12);
}
