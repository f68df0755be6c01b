use std::io::Write;

use crate::args::DetectArgs;
use crate::error::{CliError, CliResult};
use crate::io::{assignments_tsv, load_input, output_path, write};
use crate::report::{best_index, Aggregate, ConfigEcho, GraphEcho, RunReport, Stat, SCHEMA_VERSION};
use crate::runner::run_jobs;

pub fn run(args: &DetectArgs, stdout: &mut dyn Write) -> CliResult<()> {
    args.solve.validate()?;
    let data = load_input(&args.input)?;
    let solve = &args.solve;
    let jobs: Vec<_> = solve
        .seeds()
        .map(|seed| (&data, solve.config(args.model, solve.mu, solve.lambda, seed)))
        .collect();
    let mut outcomes = run_jobs(&jobs, solve.workers)?;

    let restarts: Vec<_> = outcomes.iter().map(|o| o.result.clone()).collect();
    let best = best_index(&restarts);
    // gnmf forces mu to zero; echo what the solver used
    let effective = &jobs[0].1;
    let report = RunReport {
        schema_version: SCHEMA_VERSION,
        graph: GraphEcho::of(&data),
        config: ConfigEcho {
            model: args.model.name().to_string(),
            k: solve.k,
            mu: effective.mu,
            lambda: solve.lambda,
            tol: solve.tol,
            max_iters: solve.max_iters,
            seed: solve.seed,
            restarts: solve.restarts,
        },
        aggregate: Aggregate::of(&restarts),
        restarts,
        best_seed: outcomes[best].result.seed,
        objective_trace: std::mem::take(&mut outcomes[best].objective_trace),
    };

    let assignments = output_path(&args.out, "assignments.tsv")?;
    write(&assignments, &assignments_tsv(&data.graph, &outcomes[best].partition))?;
    let report_path = output_path(&args.out, "report.json")?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    write(&report_path, &(json + "\n"))?;

    let show = |name: &str, s: Option<Stat>| match s {
        Some(s) => format!("{name} {:.4} ± {:.4}", s.mean, s.std),
        None => format!("{name} n/a"),
    };
    let agg = &report.aggregate;
    writeln!(
        stdout,
        "{} on {} ({} nodes, {} edges), {} restarts: {}  {}  {}",
        args.model.name(),
        data.name,
        data.graph.n(),
        data.graph.edge_count(),
        solve.restarts,
        show("modularity", agg.modularity),
        show("nmi", agg.nmi),
        show("ari", agg.ari),
    )
    .and_then(|_| writeln!(stdout, "wrote {} and {}", assignments.display(), report_path.display()))
    .map_err(|e| CliError::Input(format!("stdout: {e}")))
}
