//! Undirected simple graphs in compressed adjacency form.
//!
//! Input edge lists are sanitized on load: self-loops are dropped, reciprocal
//! and duplicate edges are merged, and any weight column is ignored. Vertex
//! labels from the file are remapped to dense ids `0..n`, with the inverse map
//! kept so per-edge output can be reported in the caller's id space.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::{BufRead, Read};

use thiserror::Error;

/// Default vertex cap for [`complement`], whose output is dense.
pub const DEFAULT_COMPLEMENT_CAP: usize = 2000;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("input contains no edges")]
    Empty,
    #[error("graph has {n} vertices, above the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("vertex id {0} out of range")]
    VertexOutOfRange(u64),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Read access to an undirected adjacency structure.
///
/// The census kernels are written against this trait so the same code runs on
/// the immutable [`Graph`] and on the mutable selection used for interactive
/// updates.
pub trait Neighbors {
    /// Size of the id space; marker arrays are allocated with this length.
    fn id_bound(&self) -> usize;
    /// Sorted neighbor list of `v`.
    fn neighbors(&self, v: u32) -> &[u32];

    fn degree(&self, v: u32) -> usize {
        self.neighbors(v).len()
    }

    fn has_edge(&self, u: u32, v: u32) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a).binary_search(&b).is_ok()
    }
}

/// Reference to one canonical undirected edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeRef {
    pub index: usize,
    pub u: u32,
    pub v: u32,
}

/// How vertex labels in the input map onto dense ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IdMode {
    /// Observed labels are sorted and numbered `0..n`. Only vertices that
    /// touch at least one non-loop edge exist.
    #[default]
    Remap,
    /// Labels are taken as contiguous integers starting at `base`; every id up
    /// to the largest observed one is a vertex, so isolated vertices inside
    /// the range are kept.
    Contiguous { base: u64 },
}

#[derive(Debug, Clone, Default)]
pub struct ParseOptions {
    pub id_mode: IdMode,
    /// Pads the vertex set with isolated vertices up to this count.
    pub min_vertices: Option<usize>,
}

impl ParseOptions {
    pub fn contiguous(base: u64) -> Self {
        ParseOptions { id_mode: IdMode::Contiguous { base }, min_vertices: None }
    }
}

/// Immutable undirected simple graph.
///
/// Invariants: neighbor lists are strictly ascending and symmetric, there are
/// no self-loops, and `edges` lists every undirected edge once as `(u, v)` with
/// `u < v`, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    // edge index of each adjacency slot, parallel to `targets`
    slot_edges: Vec<u32>,
    edges: Vec<(u32, u32)>,
    labels: Vec<u64>,
}

impl Graph {
    /// Builds a graph on `n` vertices labelled `0..n` from arbitrary pairs.
    /// Loops and duplicates are discarded.
    pub fn from_edges(n: usize, pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, GraphError> {
        let labels = (0..n as u64).collect();
        Self::with_labels(labels, pairs)
    }

    /// Builds a graph whose dense vertex `i` carries `labels[i]`.
    pub fn with_labels(labels: Vec<u64>, pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, GraphError> {
        let n = labels.len();
        let mut edges = Vec::new();
        for (a, b) in pairs {
            for x in [a, b] {
                if x as usize >= n {
                    return Err(GraphError::VertexOutOfRange(x as u64));
                }
            }
            if a != b {
                edges.push((a.min(b), a.max(b)));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self::from_canonical(labels, edges))
    }

    // `edges` must be sorted, deduplicated, loop-free, with u < v.
    fn from_canonical(labels: Vec<u64>, edges: Vec<(u32, u32)>) -> Self {
        let n = labels.len();
        let mut degree = vec![0usize; n];
        for &(u, v) in &edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0u32; 2 * edges.len()];
        let mut slot_edges = vec![0u32; 2 * edges.len()];
        // Visiting edges in (u, v) order fills every row in ascending order:
        // row x first receives its smaller neighbors (as v) then larger ones.
        for (i, &(u, v)) in edges.iter().enumerate() {
            targets[cursor[u as usize]] = v;
            slot_edges[cursor[u as usize]] = i as u32;
            cursor[u as usize] += 1;
            targets[cursor[v as usize]] = u;
            slot_edges[cursor[v as usize]] = i as u32;
            cursor[v as usize] += 1;
        }
        Graph { offsets, targets, slot_edges, edges, labels }
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> EdgeRef {
        let (u, v) = self.edges[index];
        EdgeRef { index, u, v }
    }

    pub fn edge_refs(&self) -> impl ExactSizeIterator<Item = EdgeRef> + '_ {
        self.edges.iter().enumerate().map(|(index, &(u, v))| EdgeRef { index, u, v })
    }

    /// Index of edge `{u, v}` in the canonical list.
    pub fn edge_index(&self, u: u32, v: u32) -> Option<usize> {
        if u as usize >= self.num_vertices() || v as usize >= self.num_vertices() {
            return None;
        }
        let start = self.offsets[u as usize];
        self.neighbors(u).binary_search(&v).ok().map(|k| self.slot_edges[start + k] as usize)
    }

    /// Edge indices of the adjacency row of `v`, aligned with `neighbors(v)`.
    pub fn incident_edges(&self, v: u32) -> &[u32] {
        &self.slot_edges[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.offsets.windows(2).map(|w| w[1] - w[0])
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().max().unwrap_or(0)
    }

    /// Original label of dense vertex `v`.
    pub fn label(&self, v: u32) -> u64 {
        self.labels[v as usize]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Dense id of an original label.
    pub fn vertex_of(&self, label: u64) -> Option<u32> {
        // labels are ascending in both id modes
        self.labels.binary_search(&label).ok().map(|i| i as u32)
    }

    /// Subgraph induced by `keep`, relabelled densely in ascending order and
    /// carrying the original labels along.
    pub fn induced_subgraph(&self, keep: &[u32]) -> Graph {
        let mut keep: Vec<u32> = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut position = vec![u32::MAX; self.num_vertices()];
        for (i, &v) in keep.iter().enumerate() {
            position[v as usize] = i as u32;
        }
        let mut edges = Vec::new();
        for &u in &keep {
            for &w in self.neighbors(u) {
                if u < w && position[w as usize] != u32::MAX {
                    edges.push((position[u as usize], position[w as usize]));
                }
            }
        }
        edges.sort_unstable();
        let labels = keep.iter().map(|&v| self.labels[v as usize]).collect();
        Graph::from_canonical(labels, edges)
    }
}

impl Neighbors for Graph {
    fn id_bound(&self) -> usize {
        self.num_vertices()
    }

    #[inline]
    fn neighbors(&self, v: u32) -> &[u32] {
        &self.targets[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    #[inline]
    fn degree(&self, v: u32) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }
}

fn parse_token(tok: &str, line: usize) -> Result<u64, GraphError> {
    tok.parse::<u64>().map_err(|_| GraphError::Parse {
        line,
        message: format!("expected a non-negative integer vertex id, found {tok:?}"),
    })
}

/// Reads a whitespace- or comma-separated edge list.
///
/// Lines starting with `#` or `%` are comments. A leading `%%MatrixMarket`
/// banner switches on MatrixMarket handling: the first data line is the size
/// line `rows cols entries`, whose row count sets a lower bound on the vertex
/// count in contiguous id mode.
pub fn load_edge_list<R: Read>(source: R, options: &ParseOptions) -> Result<Graph, GraphError> {
    let reader = std::io::BufReader::new(source);
    let mut raw: Vec<(u64, u64)> = Vec::new();
    let mut size_line_pending = false;
    let mut declared_rows: Option<u64> = None;
    let mut seen_any = false;
    let mut max_label: Option<u64> = None;
    let mut min_label: Option<u64> = None;

    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('%') || trimmed.starts_with('#') {
            if !seen_any && trimmed.starts_with("%%MatrixMarket") {
                size_line_pending = true;
            }
            continue;
        }
        seen_any = true;
        let mut tokens = trimmed.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty());
        let (Some(a), Some(b)) = (tokens.next(), tokens.next()) else {
            return Err(GraphError::Parse { line: line_no, message: "expected at least two vertex ids".into() });
        };
        let a = parse_token(a, line_no)?;
        let b = parse_token(b, line_no)?;
        if size_line_pending {
            size_line_pending = false;
            declared_rows = Some(a.max(b));
            continue;
        }
        for x in [a, b] {
            max_label = Some(max_label.map_or(x, |m| m.max(x)));
            min_label = Some(min_label.map_or(x, |m| m.min(x)));
        }
        raw.push((a, b));
    }

    if raw.is_empty() {
        return Err(GraphError::Empty);
    }

    let (labels, pairs): (Vec<u64>, Vec<(u32, u32)>) = match options.id_mode {
        IdMode::Remap => {
            let observed: BTreeSet<u64> = raw.iter().filter(|(a, b)| a != b).flat_map(|&(a, b)| [a, b]).collect();
            let mut labels: Vec<u64> = observed.into_iter().collect();
            if labels.is_empty() {
                return Err(GraphError::Empty);
            }
            if let Some(min_n) = options.min_vertices {
                let mut next = labels.last().unwrap() + 1;
                while labels.len() < min_n {
                    labels.push(next);
                    next += 1;
                }
            }
            let id = |x: u64| labels.binary_search(&x).unwrap() as u32;
            let pairs = raw.iter().filter(|(a, b)| a != b).map(|&(a, b)| (id(a), id(b))).collect();
            (labels, pairs)
        }
        IdMode::Contiguous { base } => {
            if let Some(lo) = min_label.filter(|&lo| lo < base) {
                return Err(GraphError::VertexOutOfRange(lo));
            }
            let mut n = (max_label.unwrap() - base + 1) as usize;
            if let Some(rows) = declared_rows {
                n = n.max(rows as usize);
            }
            if let Some(min_n) = options.min_vertices {
                n = n.max(min_n);
            }
            if n > u32::MAX as usize {
                return Err(GraphError::TooLarge { n, cap: u32::MAX as usize });
            }
            let labels = (0..n as u64).map(|i| i + base).collect();
            let pairs = raw.iter().map(|&(a, b)| ((a - base) as u32, (b - base) as u32)).collect();
            (labels, pairs)
        }
    };
    if labels.len() > u32::MAX as usize {
        return Err(GraphError::TooLarge { n: labels.len(), cap: u32::MAX as usize });
    }
    Graph::with_labels(labels, pairs)
}

/// Loads a graph from a file path.
pub fn load_edge_list_file(path: impl AsRef<std::path::Path>, options: &ParseOptions) -> Result<Graph, GraphError> {
    let file = std::fs::File::open(path)?;
    load_edge_list(file, options)
}

/// Canonical text form: one `u v` line per edge using original labels, sorted.
pub fn write_edge_list(g: &Graph) -> String {
    let mut pairs: Vec<(u64, u64)> = g.edges().iter().map(|&(u, v)| (g.label(u), g.label(v))).collect();
    pairs.sort_unstable();
    let mut out = String::with_capacity(pairs.len() * 12);
    for (a, b) in pairs {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}

/// Complement on the same vertex set and labels. Rejects graphs above `cap`
/// vertices since the result has `C(n,2) - m` edges.
pub fn complement(g: &Graph, cap: usize) -> Result<Graph, GraphError> {
    let n = g.num_vertices();
    if n > cap {
        return Err(GraphError::TooLarge { n, cap });
    }
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2 - g.num_edges());
    for u in 0..n as u32 {
        let mut present = g.neighbors(u).iter().copied().filter(|&w| w > u).peekable();
        for v in u + 1..n as u32 {
            if present.peek() == Some(&v) {
                present.next();
            } else {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_canonical(g.labels.clone(), edges))
}

/// Edge processing order by larger endpoint degree, descending. Ties go to
/// the larger smaller-endpoint degree, then to canonical index.
pub fn order_edges_by_degree(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.num_edges()).collect();
    let key = |i: usize| {
        let (u, v) = g.edges[i];
        let (a, b) = (g.degree(u), g.degree(v));
        (a.max(b), a.min(b))
    };
    order.sort_by(|&a, &b| key(b).cmp(&key(a)).then(a.cmp(&b)));
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> Result<Graph, GraphError> {
        load_edge_list(text.as_bytes(), &ParseOptions::default())
    }

    #[test]
    fn sanitizes_loops_duplicates_and_weights() {
        let g = load("1 2\n2 1\n2 2\n1 3 0.5\n").unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.num_edges(), 2);
        assert_eq!(g.edges(), &[(0, 1), (0, 2)]);
        assert_eq!(g.labels(), &[1, 2, 3]);
    }

    #[test]
    fn comments_only_is_an_error() {
        assert!(matches!(load("# nothing\n% here\n"), Err(GraphError::Empty)));
        assert!(matches!(load(""), Err(GraphError::Empty)));
    }

    #[test]
    fn malformed_line_reports_line_number() {
        match load("1 2\n# ok\n3 x\n") {
            Err(GraphError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(load("7\n"), Err(GraphError::Parse { line: 1, .. })));
    }

    #[test]
    fn comma_separated_and_large_ids() {
        let g = load("10000000000,5\n5, 7\n").unwrap();
        assert_eq!(g.labels(), &[5, 7, 10_000_000_000]);
        assert_eq!(g.edge_index(0, 2), Some(1));
        assert_eq!(g.vertex_of(10_000_000_000), Some(2));
    }

    #[test]
    fn matrix_market_size_line_is_skipped() {
        let text = "%%MatrixMarket matrix coordinate pattern symmetric\n% comment\n6 6 3\n1 2\n2 3\n3 1\n";
        let g = load_edge_list(text.as_bytes(), &ParseOptions::default()).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (3, 3));
        let g = load_edge_list(text.as_bytes(), &ParseOptions::contiguous(1)).unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (6, 3));
        assert_eq!(g.label(0), 1);
    }

    #[test]
    fn padding_keeps_isolated_vertices() {
        let opts = ParseOptions { min_vertices: Some(5), ..Default::default() };
        let g = load_edge_list("0 1\n".as_bytes(), &opts).unwrap();
        assert_eq!(g.num_vertices(), 5);
        assert_eq!(g.degree(4), 0);
    }

    #[test]
    fn complement_of_small_graphs() {
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let c = complement(&k4, DEFAULT_COMPLEMENT_CAP).unwrap();
        assert_eq!((c.num_vertices(), c.num_edges()), (4, 0));

        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(complement(&c4, 10).unwrap().edges(), &[(0, 2), (1, 3)]);

        assert!(matches!(complement(&c4, 3), Err(GraphError::TooLarge { n: 4, cap: 3 })));
    }

    #[test]
    fn degree_ordering_examples() {
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(order_edges_by_degree(&star), vec![0, 1, 2]);
        let path = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(order_edges_by_degree(&path)[0], 1);
    }

    #[test]
    fn induced_subgraph_keeps_labels() {
        let g = load("10 20\n20 30\n30 10\n30 40\n").unwrap();
        let sub = g.induced_subgraph(&[2, 3, 0]);
        assert_eq!(sub.labels(), &[10, 30, 40]);
        assert_eq!(sub.edges(), &[(0, 1), (1, 2)]);
    }
}
