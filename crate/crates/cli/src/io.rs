use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use cfs_core::graph::{build_laplacian, parse_edge_list, parse_ground_truth};
use cfs_core::{AdjacencyMatrix, Laplacian, Partition};

use crate::args::InputArgs;
use crate::error::{CliError, CliResult};

/// A graph ready for solving, with optional ground truth.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub name: String,
    pub graph: AdjacencyMatrix,
    pub laplacian: Laplacian,
    pub truth: Option<Partition>,
    pub weighted: bool,
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn load_dataset(edges: &Path, weighted: bool, truth: Option<&Path>) -> CliResult<Dataset> {
    let parsed = parse_edge_list(&read(edges)?, weighted).map_err(|e| CliError::input(edges, e))?;
    if parsed.skipped_self_loops > 0 {
        eprintln!(
            "warning: {}: {} self-loop line(s) add no edge (their nodes are kept)",
            edges.display(),
            parsed.skipped_self_loops
        );
    }
    let graph = parsed.adjacency;
    if graph.n() == 0 {
        return Err(CliError::Input(format!("{}: no nodes", edges.display())));
    }

    let truth = match truth {
        Some(path) => {
            let gt = parse_ground_truth(&read(path)?, &graph).map_err(|e| CliError::input(path, e))?;
            if gt.unknown_nodes > 0 {
                eprintln!(
                    "warning: {}: ignored {} label(s) for nodes not in the graph",
                    path.display(),
                    gt.unknown_nodes
                );
            }
            Some(gt.truth.to_partition())
        }
        None => None,
    };

    let name = edges
        .file_stem()
        .map_or_else(|| edges.display().to_string(), |s| s.to_string_lossy().into_owned());
    Ok(Dataset {
        name,
        laplacian: build_laplacian(&graph),
        graph,
        truth,
        weighted,
    })
}

pub fn load_input(input: &InputArgs) -> CliResult<Dataset> {
    load_dataset(&input.edges, input.weighted, input.ground_truth.as_deref())
}

/// Creates `dir` if needed and returns `dir/name`.
pub fn output_path(dir: &Path, name: &str) -> CliResult<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    Ok(dir.join(name))
}

pub fn write(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// `node_label<TAB>community_id` lines in graph node order.
pub fn assignments_tsv(graph: &AdjacencyMatrix, partition: &Partition) -> String {
    let mut out = String::new();
    for (label, community) in graph.node_labels().iter().zip(partition.labels()) {
        writeln!(out, "{label}\t{community}").unwrap();
    }
    out
}
