//! Simple graphs with dense vertex ids.
//!
//! Graphs are immutable once built: every constructor cleans its input
//! (self-loops dropped, parallel edges collapsed, neighbor lists sorted) so
//! the rest of the library can rely on those invariants. Vertex ids are
//! always `0..n`; external string labels, when present, ride along and are
//! preserved through vertex removal.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// A simple directed or undirected graph.
///
/// Undirected graphs store each edge in both endpoint neighbor lists but
/// count it once in [`Graph::edge_count`]. Directed graphs keep separate
/// out- and in-lists so both traversal directions are cheap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    directed: bool,
    out: Vec<Vec<usize>>,
    /// In-neighbor lists; empty for undirected graphs (`out` already has both
    /// directions).
    inn: Vec<Vec<usize>>,
    edges: usize,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph from an edge iterator, cleaning as it goes.
    ///
    /// Self-loops and duplicate edges are silently dropped; for undirected
    /// graphs `(u, v)` and `(v, u)` are duplicates of each other. `m == 0`
    /// is allowed (isolated vertices are legitimate), `n == 0` is not.
    pub fn from_edges(
        directed: bool,
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Graph> {
        let (g, _, _) = Self::from_edges_counting(directed, n, edges)?;
        Ok(g)
    }

    /// Like [`Graph::from_edges`] but also reports how many self-loops and
    /// duplicate edges were discarded.
    pub fn from_edges_counting(
        directed: bool,
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<(Graph, usize, usize)> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut out = vec![Vec::new(); n];
        let mut loops = 0usize;
        let mut raw = 0usize;
        for (u, v) in edges {
            if u >= n {
                return Err(Error::InvalidVertex { vertex: u, n });
            }
            if v >= n {
                return Err(Error::InvalidVertex { vertex: v, n });
            }
            if u == v {
                loops += 1;
                continue;
            }
            raw += 1;
            out[u].push(v);
            if !directed {
                out[v].push(u);
            }
        }
        for list in &mut out {
            list.sort_unstable();
            list.dedup();
        }
        let mut inn = Vec::new();
        let mut edges = 0usize;
        if directed {
            inn = vec![Vec::new(); n];
            for (u, targets) in out.iter().enumerate() {
                edges += targets.len();
                for &v in targets {
                    inn[v].push(u);
                }
            }
            // Sources were visited in order, so the in-lists are born sorted.
        } else {
            edges = out.iter().map(Vec::len).sum::<usize>() / 2;
        }
        let duplicates = raw - edges;
        Ok((
            Graph {
                directed,
                out,
                inn,
                edges,
                labels: None,
            },
            loops,
            duplicates,
        ))
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Number of vertices, always at least 1.
    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    /// Number of edges (undirected) or arcs (directed), each counted once.
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// Out-neighbors for directed graphs; all neighbors for undirected ones.
    /// Sorted ascending, no duplicates, never contains `v` itself.
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    /// In-neighbors for directed graphs; all neighbors for undirected ones.
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        if self.directed {
            &self.inn[v]
        } else {
            &self.out[v]
        }
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_neighbors(v).len()
    }

    /// Degree for undirected graphs; in-degree plus out-degree for directed
    /// ones (a reciprocal arc pair therefore counts twice).
    pub fn total_degree(&self, v: usize) -> usize {
        if self.directed {
            self.out[v].len() + self.inn[v].len()
        } else {
            self.out[v].len()
        }
    }

    /// The external label of `v`, or its id rendered as text when the graph
    /// was built without labels.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(labels) => labels[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.vertex_count() {
            return Err(Error::LengthMismatch {
                left: labels.len(),
                right: self.vertex_count(),
            });
        }
        self.labels = Some(labels);
        Ok(())
    }

    /// Turns a directed graph into its undirected shadow: every arc becomes
    /// an edge, reciprocal arc pairs collapse into one edge.
    pub fn symmetrize(&self) -> Result<Graph> {
        if !self.directed {
            return Err(Error::AlreadyUndirected);
        }
        Ok(self.undirected_view())
    }

    /// Undirected shadow without the "already undirected" guard; clones
    /// undirected inputs as-is. Used wherever a direction-blind traversal is
    /// needed on a possibly directed graph.
    pub(crate) fn undirected_view(&self) -> Graph {
        if !self.directed {
            return self.clone();
        }
        let n = self.vertex_count();
        let mut out = vec![Vec::new(); n];
        for u in 0..n {
            for &v in &self.out[u] {
                out[u].push(v);
                out[v].push(u);
            }
        }
        for list in &mut out {
            list.sort_unstable();
            list.dedup();
        }
        let edges = out.iter().map(Vec::len).sum::<usize>() / 2;
        Graph {
            directed: false,
            out,
            inn: Vec::new(),
            edges,
            labels: self.labels.clone(),
        }
    }

    /// Deletes `victims` and their incident edges, returning the induced
    /// subgraph on the survivors (re-indexed densely) plus the id map back
    /// to the original graph. Removing every vertex is an error; isolated
    /// survivors are kept.
    pub fn remove_vertices(&self, victims: &VertexSet) -> Result<(Graph, IdMap)> {
        let n = self.vertex_count();
        if victims.universe() != n {
            return Err(Error::LengthMismatch {
                left: victims.universe(),
                right: n,
            });
        }
        if victims.len() == n {
            return Err(Error::EmptyGraph);
        }
        let mut to_new = vec![usize::MAX; n];
        let mut to_original = Vec::with_capacity(n - victims.len());
        for v in 0..n {
            if !victims.contains(v) {
                to_new[v] = to_original.len();
                to_original.push(v);
            }
        }
        let filter = |list: &[usize]| -> Vec<usize> {
            list.iter()
                .filter(|&&w| to_new[w] != usize::MAX)
                .map(|&w| to_new[w])
                .collect()
        };
        let out: Vec<Vec<usize>> = to_original.iter().map(|&v| filter(&self.out[v])).collect();
        let inn: Vec<Vec<usize>> = if self.directed {
            to_original.iter().map(|&v| filter(&self.inn[v])).collect()
        } else {
            Vec::new()
        };
        let edges = if self.directed {
            out.iter().map(Vec::len).sum()
        } else {
            out.iter().map(Vec::len).sum::<usize>() / 2
        };
        let labels = self
            .labels
            .as_ref()
            .map(|labels| to_original.iter().map(|&v| labels[v].clone()).collect());
        Ok((
            Graph {
                directed: self.directed,
                out,
                inn,
                edges,
                labels,
            },
            IdMap { to_original },
        ))
    }

    /// Total degree sequence in vertex-id order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .map(|v| self.total_degree(v))
            .collect()
    }
}

/// Maps the dense ids of an induced subgraph back to ids in the graph it was
/// cut from. Survivor order follows original-id order, so `to_original` is
/// strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdMap {
    to_original: Vec<usize>,
}

impl IdMap {
    pub fn len(&self) -> usize {
        self.to_original.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_original.is_empty()
    }

    /// Original id of survivor `new_id`.
    pub fn original(&self, new_id: usize) -> usize {
        self.to_original[new_id]
    }

    /// New id of `original`, if it survived.
    pub fn new_id(&self, original: usize) -> Option<usize> {
        self.to_original.binary_search(&original).ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.to_original.iter().copied()
    }
}

/// A set of vertex ids tied to a fixed universe size; inserting an id outside
/// `0..universe` is rejected rather than silently ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    mask: Vec<bool>,
    len: usize,
}

impl VertexSet {
    pub fn new(universe: usize) -> VertexSet {
        VertexSet {
            mask: vec![false; universe],
            len: 0,
        }
    }

    pub fn from_members(universe: usize, members: impl IntoIterator<Item = usize>) -> Result<VertexSet> {
        let mut set = VertexSet::new(universe);
        for v in members {
            set.insert(v)?;
        }
        Ok(set)
    }

    pub fn insert(&mut self, v: usize) -> Result<bool> {
        if v >= self.mask.len() {
            return Err(Error::InvalidVertex {
                vertex: v,
                n: self.mask.len(),
            });
        }
        if self.mask[v] {
            Ok(false)
        } else {
            self.mask[v] = true;
            self.len += 1;
            Ok(true)
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.mask.get(v).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Size of the universe this set draws from (the graph's vertex count).
    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask
            .iter()
            .enumerate()
            .filter_map(|(v, &m)| m.then_some(v))
    }
}

/// Result of parsing an edge-list file: the cleaned graph plus counts of what
/// the cleanup threw away.
#[derive(Debug)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub loops_removed: usize,
    pub duplicates_removed: usize,
}

/// Parses whitespace-separated edge lists as published by the common network
/// dataset archives: one `u v` pair per line, `#` or `%` starting a comment
/// line, blank lines ignored.
///
/// Labels are arbitrary tokens and get dense ids in order of first
/// appearance. A vertex mentioned only in self-loop lines is kept (as an
/// isolated vertex) even though the loops themselves are dropped. A file
/// with no surviving edges at all is an error.
pub fn load_edge_list(reader: impl BufRead, directed: bool) -> Result<LoadedGraph> {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let intern = |token: &str, labels: &mut Vec<String>, ids: &mut HashMap<String, usize>| {
        *ids.entry(token.to_string()).or_insert_with(|| {
            labels.push(token.to_string());
            labels.len() - 1
        })
    };
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let (u, v) = match (fields.next(), fields.next(), fields.next()) {
            (Some(u), Some(v), None) => (u, v),
            _ => {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("expected two whitespace-separated vertex tokens, got: {trimmed:?}"),
                })
            }
        };
        let u = intern(u, &mut labels, &mut ids);
        let v = intern(v, &mut labels, &mut ids);
        edges.push((u, v));
    }
    if labels.is_empty() {
        return Err(Error::EmptyEdgeSet);
    }
    let (mut graph, loops_removed, duplicates_removed) =
        Graph::from_edges_counting(directed, labels.len(), edges)?;
    if graph.edge_count() == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    graph.set_labels(labels)?;
    Ok(LoadedGraph {
        graph,
        loops_removed,
        duplicates_removed,
    })
}

/// Writes a graph in the edge-list dialect [`load_edge_list`] reads.
///
/// Isolated vertices are emitted as self-loop lines: the loader discards the
/// loop but keeps the vertex, so a load/write cycle preserves the vertex set.
pub fn write_edge_list(graph: &Graph, mut writer: impl Write) -> Result<()> {
    let n = graph.vertex_count();
    for u in 0..n {
        if graph.total_degree(u) == 0 {
            writeln!(writer, "{} {}", graph.label(u), graph.label(u))?;
        }
    }
    for u in 0..n {
        for &v in graph.out_neighbors(u) {
            if graph.is_directed() || u < v {
                writeln!(writer, "{} {}", graph.label(u), graph.label(v))?;
            }
        }
    }
    Ok(())
}
