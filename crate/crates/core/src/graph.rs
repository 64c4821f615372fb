//! Immutable undirected simple graphs.
//!
//! Nodes carry an external 64-bit id and a dense index in `0..N`. Dense
//! indices follow ascending external id, so iteration order, component
//! tie-breaks and serialization are all deterministic. Adjacency is stored
//! in CSR form with each neighbor list sorted, which gives `O(log deg)` edge
//! queries.

use std::collections::VecDeque;
use std::io::{BufRead, Write};
use std::sync::OnceLock;

use rustc_hash::FxHashMap;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// External node identifier.
pub type NodeId = u64;

#[derive(Debug, Clone)]
pub struct Graph {
    ids: Vec<NodeId>,
    index: FxHashMap<NodeId, usize>,
    offsets: Vec<usize>,
    targets: Vec<usize>,
    edge_count: usize,
    components: OnceLock<usize>,
    digest: OnceLock<String>,
}

/// Exact degree statistics of a whole graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphStats {
    pub mean_degree: f64,
    pub mean_square_degree: f64,
    pub density: f64,
    /// Double-sweep BFS lower bound on the diameter; `None` when disconnected.
    pub diameter_hint: Option<usize>,
}

/// Counts of input lines that did not become edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub lines: usize,
    pub comment_lines: usize,
    pub blank_lines: usize,
    pub self_loops: usize,
    pub duplicate_edges: usize,
}

#[derive(Debug, Clone)]
pub struct LoadOptions {
    /// A line whose first non-blank character is one of these is a comment.
    pub comment_chars: Vec<char>,
    /// Ignore columns after the first two (weights, timestamps) instead of
    /// rejecting the line.
    pub allow_extra_columns: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self { comment_chars: vec!['#'], allow_extra_columns: false }
    }
}

/// Accumulates nodes and edges, then freezes them into a [`Graph`].
#[derive(Debug, Default)]
pub struct GraphBuilder {
    nodes: Vec<NodeId>,
    edges: Vec<(NodeId, NodeId)>,
    self_loops: usize,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, id: NodeId) -> &mut Self {
        self.nodes.push(id);
        self
    }

    /// Adds `{a, b}`. Self-loops register the node but are otherwise dropped.
    pub fn add_edge(&mut self, a: NodeId, b: NodeId) -> &mut Self {
        if a == b {
            self.self_loops += 1;
            self.nodes.push(a);
        } else {
            self.edges.push((a.min(b), a.max(b)));
        }
        self
    }

    /// Returns the graph and the number of duplicate edges that were collapsed.
    pub fn build_counting(mut self) -> Result<(Graph, usize)> {
        self.nodes.extend(self.edges.iter().flat_map(|&(a, b)| [a, b]));
        self.nodes.sort_unstable();
        self.nodes.dedup();
        if self.nodes.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let index: FxHashMap<NodeId, usize> =
            self.nodes.iter().enumerate().map(|(i, &id)| (id, i)).collect();

        self.edges.sort_unstable();
        let before = self.edges.len();
        self.edges.dedup();
        let duplicates = before - self.edges.len();

        let n = self.nodes.len();
        let mut degree = vec![0usize; n];
        let dense: Vec<(usize, usize)> =
            self.edges.iter().map(|(a, b)| (index[a], index[b])).collect();
        for &(a, b) in &dense {
            degree[a] += 1;
            degree[b] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0usize; offsets[n]];
        for &(a, b) in &dense {
            targets[fill[a]] = b;
            fill[a] += 1;
            targets[fill[b]] = a;
            fill[b] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }

        let graph = Graph {
            ids: self.nodes,
            index,
            offsets,
            targets,
            edge_count: dense.len(),
            components: OnceLock::new(),
            digest: OnceLock::new(),
        };
        Ok((graph, duplicates))
    }

    pub fn build(self) -> Result<Graph> {
        self.build_counting().map(|(g, _)| g)
    }
}

impl Graph {
    /// Builds a graph from an edge iterator, dropping self-loops and duplicates.
    pub fn from_edges<I: IntoIterator<Item = (NodeId, NodeId)>>(edges: I) -> Result<Graph> {
        let mut b = GraphBuilder::new();
        for (u, v) in edges {
            b.add_edge(u, v);
        }
        b.build()
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Sorted dense neighbor indices of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    pub fn id(&self, v: usize) -> NodeId {
        self.ids[v]
    }

    pub fn index_of(&self, id: NodeId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn ids(&self) -> &[NodeId] {
        &self.ids
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.offsets.windows(2).map(|w| w[1] - w[0])
    }

    /// Component label per dense index; labels are assigned in order of the
    /// smallest member index, so component 0 holds node 0.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let n = self.node_count();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for root in 0..n {
            if label[root] != usize::MAX {
                continue;
            }
            label[root] = count;
            queue.push_back(root);
            while let Some(v) = queue.pop_front() {
                for &u in self.neighbors(v) {
                    if label[u] == usize::MAX {
                        label[u] = count;
                        queue.push_back(u);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn component_count(&self) -> usize {
        *self.components.get_or_init(|| self.component_labels().1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Subgraph induced on `nodes` (dense indices of `self`), keeping external ids.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Result<Graph> {
        let mut keep = vec![false; self.node_count()];
        let mut b = GraphBuilder::new();
        for &v in nodes {
            keep[v] = true;
            b.add_node(self.id(v));
        }
        for &v in nodes {
            for &u in self.neighbors(v) {
                if keep[u] && v < u {
                    b.add_edge(self.id(v), self.id(u));
                }
            }
        }
        b.build()
    }

    /// SHA-256 over the canonical edge list, first 16 hex digits.
    pub fn digest(&self) -> &str {
        self.digest.get_or_init(|| {
            let mut h = Sha256::new();
            h.update((self.node_count() as u64).to_le_bytes());
            for v in 0..self.node_count() {
                h.update(self.id(v).to_le_bytes());
                h.update((self.degree(v) as u64).to_le_bytes());
                for &u in self.neighbors(v) {
                    h.update(self.id(u).to_le_bytes());
                }
            }
            h.finalize()[..8].iter().map(|b| format!("{b:02x}")).collect()
        })
    }

    fn bfs_farthest(&self, source: usize) -> (usize, usize) {
        let mut dist = vec![usize::MAX; self.node_count()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        let mut far = (source, 0);
        while let Some(v) = queue.pop_front() {
            if dist[v] > far.1 {
                far = (v, dist[v]);
            }
            for &u in self.neighbors(v) {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        far
    }
}

/// Parses a whitespace-separated edge list.
pub fn load_edge_list<R: BufRead>(source: R, options: &LoadOptions) -> Result<(Graph, LoadReport)> {
    let mut report = LoadReport::default();
    let mut b = GraphBuilder::new();
    for (i, line) in source.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        report.lines += 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            report.blank_lines += 1;
            continue;
        }
        if trimmed.starts_with(|c| options.comment_chars.contains(&c)) {
            report.comment_lines += 1;
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<NodeId> {
            let tok = tok.ok_or_else(|| Error::Parse {
                line: lineno,
                message: "expected two node ids".into(),
            })?;
            tok.parse::<NodeId>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid node id {tok:?}"),
            })
        };
        let a = parse(tokens.next())?;
        let c = parse(tokens.next())?;
        if !options.allow_extra_columns && tokens.next().is_some() {
            return Err(Error::Parse { line: lineno, message: "expected exactly two columns".into() });
        }
        if a == c {
            report.self_loops += 1;
        }
        b.add_edge(a, c);
    }
    let (graph, duplicates) = b.build_counting()?;
    report.duplicate_edges = duplicates;
    Ok((graph, report))
}

/// Writes `g` as an edge list that [`load_edge_list`] reads back into an
/// identical graph. Isolated nodes are written as self-loop lines, which the
/// loader turns back into bare nodes.
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "# nodes {} edges {}", g.node_count(), g.edge_count())?;
    for v in 0..g.node_count() {
        if g.degree(v) == 0 {
            writeln!(out, "{} {}", g.id(v), g.id(v))?;
        }
        for &u in g.neighbors(v) {
            if v < u {
                writeln!(out, "{} {}", g.id(v), g.id(u))?;
            }
        }
    }
    Ok(())
}

/// The largest connected component as a fresh graph. Ties go to the
/// component containing the smallest external id.
pub fn largest_connected_component(g: &Graph) -> Graph {
    let (label, count) = g.component_labels();
    if count <= 1 {
        return g.clone();
    }
    let mut sizes = vec![0usize; count];
    for &l in &label {
        sizes[l] += 1;
    }
    // Labels are ordered by smallest member, i.e. by smallest external id,
    // so the first maximum is the tie-break winner.
    let best = (0..count).fold(0, |best, l| if sizes[l] > sizes[best] { l } else { best });
    let nodes: Vec<usize> = (0..g.node_count()).filter(|&v| label[v] == best).collect();
    g.induced_subgraph(&nodes).expect("component is non-empty")
}

pub fn exact_stats(g: &Graph) -> Result<GraphStats> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::DensityUndefined);
    }
    let nf = n as f64;
    let (sum, sum_sq) = g.degrees().fold((0u128, 0u128), |(s, q), d| {
        let d = d as u128;
        (s + d, q + d * d)
    });
    let two_e = 2.0 * g.edge_count() as f64;
    debug_assert_eq!(sum, 2 * g.edge_count() as u128);
    let diameter_hint = g.is_connected().then(|| {
        let (far, _) = g.bfs_farthest(0);
        g.bfs_farthest(far).1
    });
    Ok(GraphStats {
        mean_degree: two_e / nf,
        mean_square_degree: sum_sq as f64 / nf,
        density: two_e / (nf * (nf - 1.0)),
        diameter_hint,
    })
}

/// `N = <k>/rho + 1`, evaluated from exact statistics.
pub fn size_identity(g: &Graph) -> Result<f64> {
    let stats = exact_stats(g)?;
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    Ok(stats.mean_degree / stats.density + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> (Graph, LoadReport) {
        load_edge_list(text.as_bytes(), &LoadOptions::default()).unwrap()
    }

    pub(crate) fn complete(n: u64) -> Graph {
        Graph::from_edges((0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).unwrap()
    }

    fn star4() -> Graph {
        Graph::from_edges((1..=4).map(|l| (0, l))).unwrap()
    }

    #[test]
    fn loads_two_edge_path() {
        let (g, _) = load("1 2\n2 3");
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        let degs: Vec<_> = (1..=3).map(|id| g.degree(g.index_of(id).unwrap())).collect();
        assert_eq!(degs, vec![1, 2, 1]);
    }

    #[test]
    fn drops_self_loops() {
        let (g, report) = load("1 1\n1 2");
        assert_eq!((g.node_count(), g.edge_count()), (2, 1));
        assert_eq!(report.self_loops, 1);
    }

    #[test]
    fn collapses_duplicates_and_skips_comments() {
        let (g, report) = load("1 2\n2 1\n# c");
        assert_eq!((g.node_count(), g.edge_count()), (2, 1));
        assert_eq!(report.duplicate_edges, 1);
        assert_eq!(report.comment_lines, 1);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = load_edge_list("1 2\n3 x\n".as_bytes(), &LoadOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        let err = load_edge_list("1 2\n\n7\n".as_bytes(), &LoadOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = load_edge_list("1 2 0.5\n".as_bytes(), &LoadOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let opts = LoadOptions { allow_extra_columns: true, ..Default::default() };
        assert!(load_edge_list("1 2 0.5\n".as_bytes(), &opts).is_ok());
    }

    #[test]
    fn empty_input_is_an_error() {
        let err = load_edge_list("# only a comment\n\n".as_bytes(), &LoadOptions::default());
        assert!(matches!(err, Err(Error::EmptyGraph)));
    }

    #[test]
    fn adjacency_is_symmetric_and_sorted() {
        let (g, _) = load("5 1\n1 3\n3 5\n9 1\n");
        let mut deg_sum = 0;
        for v in 0..g.node_count() {
            let nb = g.neighbors(v);
            assert!(nb.windows(2).all(|w| w[0] < w[1]));
            for &u in nb {
                assert!(g.neighbors(u).contains(&v));
                assert_ne!(u, v);
            }
            deg_sum += g.degree(v);
        }
        assert_eq!(deg_sum, 2 * g.edge_count());
    }

    #[test]
    fn lcc_keeps_triangle() {
        let (g, _) = load("1 2\n2 3\n3 1\n10 11\n");
        let lcc = largest_connected_component(&g);
        assert_eq!((lcc.node_count(), lcc.edge_count()), (3, 3));
        assert_eq!(lcc.ids(), &[1, 2, 3]);
    }

    #[test]
    fn lcc_of_connected_graph_is_identity() {
        let g = complete(6);
        let lcc = largest_connected_component(&g);
        assert_eq!(lcc.ids(), g.ids());
        assert_eq!(lcc.digest(), g.digest());
    }

    #[test]
    fn lcc_tie_break_prefers_smallest_id() {
        let (g, _) = load("20 21\n5 30\n");
        let lcc = largest_connected_component(&g);
        assert_eq!(lcc.ids(), &[5, 30]);
        let (g, _) = load("5 30\n20 21\n4 40\n");
        assert_eq!(largest_connected_component(&g).ids(), &[4, 40]);
    }

    #[test]
    fn stats_of_small_graphs() {
        let s = exact_stats(&complete(5)).unwrap();
        assert_eq!((s.mean_degree, s.density), (4.0, 1.0));
        let s = exact_stats(&star4()).unwrap();
        assert!((s.mean_degree - 1.6).abs() < 1e-15);
        assert!((s.density - 0.4).abs() < 1e-15);
        assert!(s.mean_square_degree >= s.mean_degree * s.mean_degree);
        assert_eq!(s.diameter_hint, Some(2));
        let (p3, _) = load("1 2\n2 3");
        let s = exact_stats(&p3).unwrap();
        assert!((s.mean_degree - 4.0 / 3.0).abs() < 1e-15);
        assert!((s.density - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn stats_need_two_nodes() {
        let (g, _) = load("7 7");
        assert_eq!(g.node_count(), 1);
        assert!(matches!(exact_stats(&g), Err(Error::DensityUndefined)));
    }

    #[test]
    fn size_identity_small_graphs() {
        assert_eq!(size_identity(&complete(5)).unwrap(), 5.0);
        assert!((size_identity(&star4()).unwrap() - 5.0).abs() < 1e-12);
        let (p3, _) = load("1 2\n2 3");
        assert!((size_identity(&p3).unwrap() - 3.0).abs() < 1e-12);
        let (no_edges, _) = load("1 1\n2 2");
        assert!(matches!(size_identity(&no_edges), Err(Error::NoEdges)));
    }

    #[test]
    fn serialization_round_trips() {
        let (g, _) = load("1 2\n2 3\n3 1\n8 8\n10 11\n");
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let (h, _) = load_edge_list(buf.as_slice(), &LoadOptions::default()).unwrap();
        assert_eq!(h.ids(), g.ids());
        assert_eq!(h.edge_count(), g.edge_count());
        assert_eq!(h.digest(), g.digest());
    }

    #[test]
    fn connectivity() {
        assert!(complete(4).is_connected());
        let (g, _) = load("1 2\n3 4\n");
        assert_eq!(g.component_count(), 2);
        assert!(g.has_edge(0, 1) && !g.has_edge(0, 2));
    }
}
