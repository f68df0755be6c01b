use std::fmt::Write as _;
use std::io::Write;

use cfs_core::graph::generate_sbm;

use crate::args::GenSbmArgs;
use crate::error::{CliError, CliResult};
use crate::io::{output_path, write};

pub fn run(args: &GenSbmArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let (graph, truth) = generate_sbm(&args.blocks, args.p_in, args.p_out, args.seed)?;

    let mut edges = format!(
        "# sbm blocks={:?} p_in={} p_out={} seed={}\n",
        args.blocks, args.p_in, args.p_out, args.seed
    );
    for (i, j, _) in graph.edges() {
        writeln!(edges, "{i} {j}").unwrap();
    }
    // A self-loop line declares an isolated node without adding an edge,
    // keeping the node set aligned with the ground truth.
    for i in (0..graph.n()).filter(|&i| graph.row(i).0.is_empty()) {
        writeln!(edges, "{i} {i}").unwrap();
    }
    let mut labels = String::new();
    for (i, c) in truth.labels().iter().enumerate() {
        writeln!(labels, "{i} {c}").unwrap();
    }

    let edges_path = output_path(&args.out, "edges.txt")?;
    write(&edges_path, &edges)?;
    let truth_path = output_path(&args.out, "truth.txt")?;
    write(&truth_path, &labels)?;
    writeln!(
        stdout,
        "{} nodes, {} edges -> {}, {}",
        graph.n(),
        graph.edge_count(),
        edges_path.display(),
        truth_path.display()
    )
    .map_err(|e| CliError::Input(format!("stdout: {e}")))
}
