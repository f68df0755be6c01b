use std::io::Write;
use std::path::Path;

use cfs_core::metrics::{friedman_ranks, ScoreTable};

use crate::args::CompareArgs;
use crate::error::{CliError, CliResult};
use crate::io::{load_dataset, output_path, write};
use crate::report::{CompareReport, ScoreBlock, Stat, SCHEMA_VERSION};
use crate::runner::run_jobs;

/// Rounds half away from zero before printing, so 8.375 shows as 8.38.
pub fn two_decimals(x: f64) -> String {
    format!("{:.2}", (x * 100.0).round() / 100.0)
}

/// Reads one score cell such as `70.02`, `70.02±3.33` or `77.03±0.71●`.
fn parse_cell(cell: &str) -> Option<f64> {
    let mean = cell.split('±').next()?;
    mean.trim().trim_end_matches('●').trim().parse().ok()
}

/// Parses a TSV whose header row names the models and whose other rows
/// start with a dataset name.
pub fn parse_scores(text: &str) -> Result<ScoreTable, String> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (_, header) = lines.next().ok_or("score file is empty")?;
    let models: Vec<String> = header.split('\t').skip(1).map(|m| m.trim().to_string()).collect();
    let mut datasets = Vec::new();
    let mut values = Vec::new();
    for (lineno, line) in lines {
        let mut cells = line.split('\t');
        let name = cells.next().unwrap_or_default().trim().to_string();
        let row = cells
            .map(|c| parse_cell(c).ok_or_else(|| format!("line {}: bad score {c:?}", lineno + 1)))
            .collect::<Result<Vec<f64>, _>>()?;
        if row.len() != models.len() {
            return Err(format!(
                "line {}: {} scores for {} models",
                lineno + 1,
                row.len(),
                models.len()
            ));
        }
        datasets.push(name);
        values.push(row);
    }
    ScoreTable::new(datasets, models, values).map_err(|e| e.to_string())
}

fn block(table: &ScoreTable) -> CliResult<ScoreBlock> {
    Ok(ScoreBlock {
        values: table.values.clone(),
        ranks: friedman_ranks(table)?,
    })
}

fn print_block(out: &mut dyn Write, metric: &str, table: &ScoreTable, b: &ScoreBlock) -> std::io::Result<()> {
    writeln!(out, "{metric}\t{}", table.models.join("\t"))?;
    for (name, row) in table.datasets.iter().zip(&b.values) {
        let cells: Vec<_> = row.iter().map(|&v| two_decimals(v)).collect();
        writeln!(out, "{name}\t{}", cells.join("\t"))?;
    }
    let ranks: Vec<_> = b.ranks.iter().map(|&r| two_decimals(r)).collect();
    writeln!(out, "rank\t{}", ranks.join("\t"))
}

fn from_file(path: &Path) -> CliResult<ScoreTable> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_scores(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Mean NMI and ARI (percent) for every dataset × model.
fn from_runs(args: &CompareArgs) -> CliResult<(ScoreTable, ScoreTable)> {
    if args.edges.is_empty() {
        return Err(CliError::Usage("compare needs --scores or at least one --edges".into()));
    }
    if args.ground_truth.len() != args.edges.len() {
        return Err(CliError::Usage(format!(
            "{} --edges but {} --ground-truth; give one ground truth per dataset",
            args.edges.len(),
            args.ground_truth.len()
        )));
    }
    if args.models.len() < 2 {
        return Err(CliError::Usage("compare needs at least two --model flags".into()));
    }
    let solve = &args.solve;
    solve.validate()?;
    let data = args
        .edges
        .iter()
        .zip(&args.ground_truth)
        .map(|(e, t)| load_dataset(e, args.weighted, Some(t)))
        .collect::<CliResult<Vec<_>>>()?;

    let mut jobs = Vec::new();
    for d in &data {
        for &model in &args.models {
            jobs.extend(solve.seeds().map(|seed| (d, solve.config(model, solve.mu, solve.lambda, seed))));
        }
    }
    let outcomes = run_jobs(&jobs, solve.workers)?;
    let percent_mean = |chunk: &[crate::runner::RestartOutcome], f: fn(&crate::report::RestartResult) -> Option<f64>| {
        let v: Vec<f64> = chunk.iter().filter_map(|o| f(&o.result)).collect();
        Stat::of(&v).map_or(0.0, |s| 100.0 * s.mean)
    };
    let mut nmi = Vec::new();
    let mut ari = Vec::new();
    for per_dataset in outcomes.chunks(solve.restarts * args.models.len()) {
        let chunks: Vec<_> = per_dataset.chunks(solve.restarts).collect();
        nmi.push(chunks.iter().map(|c| percent_mean(c, |r| r.nmi)).collect());
        ari.push(chunks.iter().map(|c| percent_mean(c, |r| r.ari)).collect());
    }
    let mut names: Vec<String> = data.iter().map(|d| d.name.clone()).collect();
    // gen-sbm always writes `edges.txt`; fall back to full paths on collision
    if names.iter().enumerate().any(|(i, n)| names[..i].contains(n)) {
        names = args.edges.iter().map(|p| p.display().to_string()).collect();
    }
    let models: Vec<String> = args.models.iter().map(|m| m.name().to_string()).collect();
    Ok((
        ScoreTable::new(names.clone(), models.clone(), nmi)?,
        ScoreTable::new(names, models, ari)?,
    ))
}

pub fn run(args: &CompareArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let (nmi, ari) = match &args.scores {
        Some(path) => (from_file(path)?, None),
        None => {
            let (nmi, ari) = from_runs(args)?;
            (nmi, Some(ari))
        }
    };
    let report = CompareReport {
        schema_version: SCHEMA_VERSION,
        datasets: nmi.datasets.clone(),
        models: nmi.models.clone(),
        nmi: block(&nmi)?,
        ari: ari.as_ref().map(block).transpose()?,
    };

    let mut printed = print_block(stdout, "nmi", &nmi, &report.nmi);
    if let (Some(table), Some(b)) = (&ari, &report.ari) {
        printed = printed.and_then(|_| print_block(stdout, "ari", table, b));
    }
    printed.map_err(|e| CliError::Input(format!("stdout: {e}")))?;

    if let Some(dir) = &args.out {
        let path = output_path(dir, "compare.json")?;
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        write(&path, &(json + "\n"))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cells_with_std_and_markers() {
        assert_eq!(parse_cell("70.02"), Some(70.02));
        assert_eq!(parse_cell("70.02±3.33"), Some(70.02));
        assert_eq!(parse_cell("77.03±0.71●"), Some(77.03));
        assert_eq!(parse_cell("n/a"), None);
    }

    #[test]
    fn rounding_is_half_away_from_zero() {
        assert_eq!(two_decimals(8.375), "8.38");
        assert_eq!(two_decimals(7.3125), "7.31");
        assert_eq!(two_decimals(1.25), "1.25");
    }

    #[test]
    fn ragged_rows_are_rejected() {
        assert!(parse_scores("x\tA\tB\nD1\t1\n").is_err());
        assert!(parse_scores("").is_err());
        let t = parse_scores("# comment\nx\tA\tB\nD1\t1\t2\n").unwrap();
        assert_eq!(t.values, vec![vec![1.0, 2.0]]);
    }
}
