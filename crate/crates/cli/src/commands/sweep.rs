use std::fmt::Write as _;
use std::io::Write;

use crate::args::{ModelArg, SweepArgs};
use crate::error::{CliError, CliResult};
use crate::io::{load_input, output_path, write, Dataset};
use crate::report::{ConfigEcho, GraphEcho, Stat, SweepPoint, SweepReport, SCHEMA_VERSION};
use crate::runner::run_jobs;

fn check_grid(name: &str, values: &[f64]) -> CliResult<()> {
    if values.is_empty() {
        return Err(CliError::Usage(format!("--{name} grid is empty")));
    }
    if let Some(bad) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
        return Err(CliError::Usage(format!("--{name} value {bad} must be finite and >= 0")));
    }
    Ok(())
}

/// Runs every restart at each `(mu, lambda)` point, all points sharing one pool.
fn evaluate(
    args: &SweepArgs,
    data: &Dataset,
    grid: &'static str,
    points: &[(f64, f64, f64)],
) -> CliResult<Vec<SweepPoint>> {
    let solve = &args.solve;
    let jobs: Vec<_> = points
        .iter()
        .flat_map(|&(_, mu, lambda)| {
            solve
                .seeds()
                .map(move |seed| (data, solve.config(ModelArg::Cfs, mu, lambda, seed)))
        })
        .collect();
    let outcomes = run_jobs(&jobs, solve.workers)?;
    points
        .iter()
        .zip(outcomes.chunks(solve.restarts))
        .map(|(&(value, mu, lambda), chunk)| {
            let restarts: Vec<_> = chunk.iter().map(|o| o.result.clone()).collect();
            let q: Option<Vec<f64>> = restarts.iter().map(|r| r.modularity).collect();
            let q = q.ok_or_else(|| {
                CliError::Input(format!("{}: modularity is undefined on a graph without edges", data.name))
            })?;
            Ok(SweepPoint {
                grid,
                value,
                mu,
                lambda,
                modularity: Stat::of(&q).expect("at least one restart"),
                restarts,
            })
        })
        .collect()
}

/// Index of the highest mean modularity, first on ties.
fn argmax(points: &[SweepPoint]) -> usize {
    let mut best = 0;
    for (i, p) in points.iter().enumerate().skip(1) {
        if p.modularity.mean > points[best].modularity.mean {
            best = i;
        }
    }
    best
}

pub fn run(args: &SweepArgs, stdout: &mut dyn Write) -> CliResult<()> {
    args.solve.validate()?;
    check_grid("lambdas", &args.lambdas)?;
    check_grid("mus", &args.mus)?;
    check_grid("fixed-mu", &[args.fixed_mu])?;
    let data = load_input(&args.input)?;

    let lambda_grid: Vec<_> = args.lambdas.iter().map(|&l| (l, args.fixed_mu, l)).collect();
    let mut points = evaluate(args, &data, "lambda", &lambda_grid)?;
    let best_lambda = points[argmax(&points)].lambda;

    let mu_grid: Vec<_> = args.mus.iter().map(|&m| (m, m, best_lambda)).collect();
    let mu_points = evaluate(args, &data, "mu", &mu_grid)?;
    let best = &mu_points[argmax(&mu_points)];
    let (best_mu, best_modularity) = (best.mu, best.modularity);
    points.extend(mu_points);

    let mut table = String::from("grid\tvalue\tmean_modularity\tstd_modularity\n");
    for p in &points {
        writeln!(table, "{}\t{}\t{}\t{}", p.grid, p.value, p.modularity.mean, p.modularity.std).unwrap();
    }
    let solve = &args.solve;
    let report = SweepReport {
        schema_version: SCHEMA_VERSION,
        graph: GraphEcho::of(&data),
        config: ConfigEcho {
            model: ModelArg::Cfs.name().to_string(),
            k: solve.k,
            mu: best_mu,
            lambda: best_lambda,
            tol: solve.tol,
            max_iters: solve.max_iters,
            seed: solve.seed,
            restarts: solve.restarts,
        },
        fixed_mu: args.fixed_mu,
        points,
        best_lambda,
        best_mu,
        best_modularity,
    };

    let table_path = output_path(&args.out, "sweep.tsv")?;
    write(&table_path, &table)?;
    let report_path = output_path(&args.out, "sweep.json")?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    write(&report_path, &(json + "\n"))?;

    write!(stdout, "{table}")
        .and_then(|_| {
            writeln!(
                stdout,
                "best: lambda={best_lambda} mu={best_mu} modularity {:.4} ± {:.4}",
                best_modularity.mean, best_modularity.std
            )
        })
        .map_err(|e| CliError::Input(format!("stdout: {e}")))
}
