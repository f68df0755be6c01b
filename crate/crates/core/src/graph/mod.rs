//! Undirected graph ingestion and the structures the regularized solvers
//! consume: a compressed-row symmetric adjacency matrix `A` (also used as the
//! similarity matrix `W`), its degree vector and the implicit Laplacian
//! `L = D − W`.

mod laplacian;
mod sbm;

pub use laplacian::{build_laplacian, Laplacian};
pub use sbm::generate_sbm;

use std::collections::{BTreeMap, HashMap};

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Sparse symmetric nonnegative adjacency matrix in compressed-row layout.
///
/// Both `(i, j)` and `(j, i)` are stored. Columns within a row are sorted.
/// The diagonal is always empty.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjacencyMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
    node_labels: Vec<String>,
}

/// Result of [`parse_edge_list`]: the matrix plus the number of self-loop
/// lines that were dropped.
#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub adjacency: AdjacencyMatrix,
    pub skipped_self_loops: usize,
}

impl AdjacencyMatrix {
    /// Builds a matrix over `n` nodes labelled `"0".."n-1"` from undirected
    /// edges. Later duplicates of the same unordered pair overwrite earlier ones.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::with_labels(labels, edges)
    }

    /// Like [`from_edges`](Self::from_edges) with explicit external labels.
    pub fn with_labels<I>(node_labels: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let n = node_labels.len();
        let mut pairs = BTreeMap::new();
        for (i, j, w) in edges {
            if i >= n || j >= n {
                return Err(Error::Contract(format!(
                    "edge ({i}, {j}) out of range for {n} nodes"
                )));
            }
            if i == j {
                return Err(Error::Domain(format!("self-loop on node {i}")));
            }
            if !w.is_finite() || w < 0.0 {
                return Err(Error::Domain(format!("invalid weight {w} on edge ({i}, {j})")));
            }
            pairs.insert((i.min(j), i.max(j)), w);
        }
        Ok(Self::from_pairs(node_labels, &pairs))
    }

    /// Wraps a dense symmetric nonnegative matrix, diagonal included.
    ///
    /// This is the only constructor that admits `a_ii ≠ 0`; it exists for
    /// factorizing general similarity matrices. Graph ingestion never
    /// produces diagonal entries.
    pub fn from_symmetric_dense(m: &Array2<f64>) -> Result<Self> {
        let (rows, cols) = m.dim();
        if rows != cols {
            return Err(Error::Contract(format!("matrix is {rows}x{cols}, not square")));
        }
        let n = rows;
        let mut row_ptr = vec![0];
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let w = m[[i, j]];
                if !w.is_finite() || w < 0.0 {
                    return Err(Error::Domain(format!("invalid entry {w} at ({i}, {j})")));
                }
                if w != m[[j, i]] {
                    return Err(Error::Domain(format!("matrix is not symmetric at ({i}, {j})")));
                }
                if w != 0.0 {
                    col_idx.push(j);
                    values.push(w);
                }
            }
            row_ptr.push(col_idx.len());
        }
        Ok(Self {
            n,
            row_ptr,
            col_idx,
            values,
            node_labels: (0..n).map(|i| i.to_string()).collect(),
        })
    }

    fn from_pairs(node_labels: Vec<String>, pairs: &BTreeMap<(usize, usize), f64>) -> Self {
        let n = node_labels.len();
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for (&(i, j), &w) in pairs {
            rows[i].push((j, w));
            rows[j].push((i, w));
        }
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut col_idx = Vec::with_capacity(2 * pairs.len());
        let mut values = Vec::with_capacity(2 * pairs.len());
        row_ptr.push(0);
        for mut row in rows {
            row.sort_unstable_by_key(|&(j, _)| j);
            for (j, w) in row {
                col_idx.push(j);
                values.push(w);
            }
            row_ptr.push(col_idx.len());
        }
        Self {
            n,
            row_ptr,
            col_idx,
            values,
            node_labels,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored entries (twice the number of undirected edges on a
    /// simple graph).
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Off-diagonal undirected edges.
    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn node_labels(&self) -> &[String] {
        &self.node_labels
    }

    /// Column indices and weights of row `i`.
    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let span = self.row_ptr[i]..self.row_ptr[i + 1];
        (&self.col_idx[span.clone()], &self.values[span])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (cols, vals) = self.row(i);
        cols.binary_search(&j).map_or(0.0, |p| vals[p])
    }

    /// Upper-triangle edges `(i, j, w)` with `i < j`, in row order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| {
            let (cols, vals) = self.row(i);
            cols.iter()
                .zip(vals)
                .filter(move |(&j, _)| j > i)
                .map(move |(&j, &w)| (i, j, w))
        })
    }

    /// Weighted degrees `k_i = Σ_j a_ij`.
    pub fn degrees(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).1.iter().sum()).collect()
    }

    /// `Σ_ij a_ij`, i.e. twice the total edge weight.
    pub fn total_weight(&self) -> f64 {
        self.values.iter().sum()
    }

    /// `‖A‖_F²`.
    pub fn frobenius_sq(&self) -> f64 {
        self.values.iter().map(|w| w * w).sum()
    }

    /// Sparse-times-dense product `A X`.
    pub fn mul_dense(&self, x: &Array2<f64>) -> Array2<f64> {
        assert_eq!(x.nrows(), self.n, "row count of dense operand");
        let k = x.ncols();
        let mut out = Array2::zeros((self.n, k));
        for i in 0..self.n {
            let (cols, vals) = self.row(i);
            let mut out_row = out.row_mut(i);
            for (&j, &w) in cols.iter().zip(vals) {
                out_row.scaled_add(w, &x.row(j));
            }
        }
        out
    }

    /// Dense copy, for tests and small diagnostics.
    pub fn to_dense(&self) -> Array2<f64> {
        let mut dense = Array2::zeros((self.n, self.n));
        for i in 0..self.n {
            let (cols, vals) = self.row(i);
            for (&j, &w) in cols.iter().zip(vals) {
                dense[[i, j]] = w;
            }
        }
        dense
    }

    /// Maps external labels to dense indices.
    pub fn label_index(&self) -> HashMap<&str, usize> {
        self.node_labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect()
    }
}

/// Parses a whitespace-separated `src dst [weight]` edge list.
///
/// Lines starting with `#` and blank lines are ignored. Node labels are
/// remapped to `0..n` in order of first appearance. Self-loops are skipped
/// (the endpoint still becomes a node) and counted. When `weighted` is false
/// any extra columns are ignored and every edge gets weight 1.
pub fn parse_edge_list(text: &str, weighted: bool) -> Result<ParsedGraph> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut pairs = BTreeMap::new();
    let mut skipped_self_loops = 0;

    let mut intern = |label: &str, labels: &mut Vec<String>| -> usize {
        if let Some(&i) = index.get(label) {
            return i;
        }
        let i = labels.len();
        labels.push(label.to_owned());
        index.insert(label.to_owned(), i);
        i
    };

    for (lineno, line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (src, dst) = match (tokens.next(), tokens.next()) {
            (Some(s), Some(d)) => (s, d),
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected `src dst [weight]`, got {trimmed:?}"),
                })
            }
        };
        let weight = if weighted {
            let raw = tokens.next().ok_or_else(|| Error::Parse {
                line: line_no,
                message: "missing weight column".into(),
            })?;
            let w: f64 = raw.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid weight {raw:?}"),
            })?;
            if !w.is_finite() {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("non-finite weight {raw:?}"),
                });
            }
            if w < 0.0 {
                return Err(Error::Domain(format!(
                    "line {line_no}: negative weight {w}"
                )));
            }
            w
        } else {
            1.0
        };
        let i = intern(src, &mut labels);
        let j = intern(dst, &mut labels);
        if i == j {
            skipped_self_loops += 1;
            continue;
        }
        pairs.insert((i.min(j), i.max(j)), weight);
    }

    Ok(ParsedGraph {
        adjacency: AdjacencyMatrix::from_pairs(labels, &pairs),
        skipped_self_loops,
    })
}

/// Planted node-community labels, dense in `0..num_communities`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundTruth {
    labels: Vec<usize>,
    num_communities: usize,
}

impl GroundTruth {
    /// Validates that `labels` uses every id in `0..max+1`.
    pub fn new(labels: Vec<usize>) -> Result<Self> {
        let num_communities = labels.iter().max().map_or(0, |&m| m + 1);
        let mut seen = vec![false; num_communities];
        for &l in &labels {
            seen[l] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::Domain(format!(
                "ground-truth labels are not contiguous: community {missing} is empty"
            )));
        }
        Ok(Self {
            labels,
            num_communities,
        })
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn num_communities(&self) -> usize {
        self.num_communities
    }

    pub fn to_partition(&self) -> Partition {
        Partition::new(self.labels.clone(), self.num_communities.max(1))
            .expect("ground-truth labels are below the community count")
    }
}

/// Ground truth read from `node_label community_label` lines, aligned to the
/// node order of `graph`.
#[derive(Debug, Clone)]
pub struct ParsedGroundTruth {
    pub truth: GroundTruth,
    /// Entries naming nodes absent from the graph (e.g. isolated nodes that
    /// never appear in an edge list).
    pub unknown_nodes: usize,
}

/// Parses a ground-truth file against the node labels of `graph`.
///
/// Community labels are remapped to dense ids in order of first appearance.
/// Every graph node must receive exactly one label.
pub fn parse_ground_truth(text: &str, graph: &AdjacencyMatrix) -> Result<ParsedGroundTruth> {
    let index = graph.label_index();
    let mut community_ids: HashMap<&str, usize> = HashMap::new();
    let mut assigned: Vec<Option<usize>> = vec![None; graph.n()];
    let mut unknown_nodes = 0;

    for (lineno, line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (node, community) = match (tokens.next(), tokens.next()) {
            (Some(n), Some(c)) => (n, c),
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected `node_label community_label`, got {trimmed:?}"),
                })
            }
        };
        let next_id = community_ids.len();
        let cid = *community_ids.entry(community).or_insert(next_id);
        match index.get(node) {
            Some(&i) => {
                if assigned[i].is_some_and(|prev| prev != cid) {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("node {node:?} assigned to two communities"),
                    });
                }
                assigned[i] = Some(cid);
            }
            None => unknown_nodes += 1,
        }
    }

    let mut labels = Vec::with_capacity(graph.n());
    for (i, a) in assigned.into_iter().enumerate() {
        match a {
            Some(c) => labels.push(c),
            None => {
                return Err(Error::Domain(format!(
                    "node {:?} has no ground-truth label",
                    graph.node_labels()[i]
                )))
            }
        }
    }
    // Communities seen only on unknown nodes would leave gaps; compact them.
    let mut remap: HashMap<usize, usize> = HashMap::new();
    let labels = labels
        .into_iter()
        .map(|c| {
            let next = remap.len();
            *remap.entry(c).or_insert(next)
        })
        .collect();
    Ok(ParsedGroundTruth {
        truth: GroundTruth::new(labels)?,
        unknown_nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_of_three() {
        let g = parse_edge_list("0 1\n1 2", false).unwrap().adjacency;
        assert_eq!(g.n(), 3);
        assert_eq!(g.get(0, 1), 1.0);
        assert_eq!(g.get(1, 0), 1.0);
        assert_eq!(g.get(1, 2), 1.0);
        assert_eq!(g.get(2, 1), 1.0);
        assert_eq!(g.get(0, 2), 0.0);
        assert_eq!(g.get(0, 0), 0.0);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn reversed_duplicate_collapses() {
        let g = parse_edge_list("0 1\n1 0", false).unwrap().adjacency;
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.get(0, 1), 1.0);
        assert_eq!(g.get(1, 0), 1.0);
    }

    #[test]
    fn self_loop_is_skipped_but_node_kept() {
        let parsed = parse_edge_list("3 3", false).unwrap();
        assert_eq!(parsed.adjacency.n(), 1);
        assert_eq!(parsed.adjacency.nnz(), 0);
        assert_eq!(parsed.skipped_self_loops, 1);
    }

    #[test]
    fn last_weight_wins() {
        let g = parse_edge_list("a b 2.5\n# comment\n\nb a 0.5\n", true)
            .unwrap()
            .adjacency;
        assert_eq!(g.get(0, 1), 0.5);
        assert_eq!(g.get(1, 0), 0.5);
        assert_eq!(g.node_labels(), &["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn labels_keep_first_appearance_order() {
        let g = parse_edge_list("10 7\n7 3\n", false).unwrap().adjacency;
        assert_eq!(g.node_labels(), &["10", "7", "3"]);
        assert_eq!(g.get(1, 2), 1.0);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        match parse_edge_list("0 1\n# c\n5\n", false) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        match parse_edge_list("0 1 x\n", true) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_edge_list("0 1\n", true),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn negative_weight_is_domain_error() {
        assert!(matches!(
            parse_edge_list("0 1 -1.0", true),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn unweighted_ignores_extra_columns() {
        let g = parse_edge_list("0 1 7.0 1999", false).unwrap().adjacency;
        assert_eq!(g.get(0, 1), 1.0);
    }

    #[test]
    fn mul_dense_matches_dense_product() {
        let g = AdjacencyMatrix::from_edges(3, [(0, 1, 2.0), (1, 2, 3.0)]).unwrap();
        let x = ndarray::array![[1.0, 0.0], [0.5, 1.0], [2.0, 4.0]];
        assert_eq!(g.mul_dense(&x), g.to_dense().dot(&x));
    }

    #[test]
    fn ground_truth_aligns_to_graph_order() {
        let g = parse_edge_list("b a\na c\n", false).unwrap().adjacency;
        let gt = parse_ground_truth("# node community\na x\nb y\nc x\nz q\n", &g).unwrap();
        // graph order is b, a, c
        assert_eq!(gt.truth.labels(), &[0, 1, 1]);
        assert_eq!(gt.truth.num_communities(), 2);
        assert_eq!(gt.unknown_nodes, 1);
    }

    #[test]
    fn ground_truth_missing_node_fails() {
        let g = parse_edge_list("0 1\n1 2\n", false).unwrap().adjacency;
        assert!(parse_ground_truth("0 a\n1 a\n", &g).is_err());
    }

    #[test]
    fn ground_truth_requires_contiguous_ids() {
        assert!(GroundTruth::new(vec![0, 2]).is_err());
        assert_eq!(GroundTruth::new(vec![1, 0, 1]).unwrap().num_communities(), 2);
    }
}
