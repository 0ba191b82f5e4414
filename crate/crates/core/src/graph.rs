//! Undirected weighted graphs, the edge-list interchange format, hard
//! partitions, and the bundled weighted karate club network.
//!
//! Edge-list text is one edge per line, `u v [w]`, whitespace separated.
//! Node ids are non-negative integers, the weight defaults to `1.0` and must
//! be strictly positive and finite. `#` starts a comment that runs to the end
//! of the line. A `# nodes N` comment line fixes the node count (so isolated
//! trailing nodes survive a round trip); otherwise it is `max id + 1`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{validation, Error, Result};

/// The bundled karate edge list, verbatim.
pub const KARATE_EDGES: &str = include_str!("../data/karate.edges");
/// The bundled karate faction labels, verbatim.
pub const KARATE_LABELS: &str = include_str!("../data/karate.labels");

/// One undirected edge, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

/// An undirected graph with strictly positive edge weights and no self-loops.
///
/// Immutable once built; the dense adjacency is materialized on demand.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n_nodes: usize,
    edges: Vec<Edge>,
    node_labels: Option<Vec<usize>>,
}

impl WeightedGraph {
    /// Builds a graph, checking every invariant. Edges may be given in either
    /// orientation; they are stored as `(min, max)` in input order.
    pub fn new(n_nodes: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut stored = Vec::new();
        for (u, v, w) in edges {
            let (u, v) = if u <= v { (u, v) } else { (v, u) };
            if v >= n_nodes {
                return Err(validation(format!(
                    "edge ({u},{v}) references node {v} but n_nodes = {n_nodes}"
                )));
            }
            if u == v {
                return Err(validation(format!("self-loop on node {u}")));
            }
            check_weight(w).map_err(|m| validation(format!("edge ({u},{v}): {m}")))?;
            if !seen.insert((u, v)) {
                return Err(validation(format!("duplicate edge ({u},{v})")));
            }
            stored.push(Edge { u, v, w });
        }
        Ok(Self {
            n_nodes,
            edges: stored,
            node_labels: None,
        })
    }

    /// Attaches ground-truth cluster ids, one per node.
    pub fn with_labels(mut self, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != self.n_nodes {
            return Err(validation(format!(
                "{} labels for {} nodes",
                labels.len(),
                self.n_nodes
            )));
        }
        self.node_labels = Some(labels);
        Ok(self)
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node_labels(&self) -> Option<&[usize]> {
        self.node_labels.as_deref()
    }

    /// Ground truth as an [`Assignment`], when labels are attached.
    pub fn ground_truth(&self) -> Option<Assignment> {
        self.node_labels.as_ref().map(|l| Assignment::from_labels(l.clone()))
    }

    /// Σ edge weights (the `m` of modularity).
    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    /// Weighted degree of every node.
    pub fn degrees(&self) -> Vec<f64> {
        let mut deg = vec![0.0; self.n_nodes];
        for e in &self.edges {
            deg[e.u] += e.w;
            deg[e.v] += e.w;
        }
        deg
    }

    /// Neighbor lists `(neighbor, weight)`, sorted by neighbor id.
    pub fn neighbors(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.n_nodes];
        for e in &self.edges {
            adj[e.u].push((e.v, e.w));
            adj[e.v].push((e.u, e.w));
        }
        for list in &mut adj {
            list.sort_by_key(|&(j, _)| j);
        }
        adj
    }

    /// Same topology with every weight replaced by 1.
    pub fn unweighted(&self) -> Self {
        Self {
            n_nodes: self.n_nodes,
            edges: self.edges.iter().map(|e| Edge { w: 1.0, ..*e }).collect(),
            node_labels: self.node_labels.clone(),
        }
    }

    /// Serializes to the edge-list format, edges sorted by `(u, v)`.
    ///
    /// Isolated trailing nodes are not representable in plain edge-list text,
    /// so a `# nodes N` header is written; the parser honors it.
    pub fn to_edge_list(&self) -> String {
        let mut edges = self.edges.clone();
        edges.sort_by_key(|e| (e.u, e.v));
        let mut out = format!("# nodes {}\n", self.n_nodes);
        for e in edges {
            // `{}` on f64 prints the shortest round-tripping representation.
            let _ = writeln!(out, "{} {} {}", e.u, e.v, e.w);
        }
        out
    }
}

fn check_weight(w: f64) -> std::result::Result<(), String> {
    if !w.is_finite() {
        Err(format!("weight {w} is not finite"))
    } else if w <= 0.0 {
        Err(format!("weight {w} must be strictly positive"))
    } else {
        Ok(())
    }
}

/// Parses edge-list text. See the module docs for the format.
pub fn load_edge_list(text: &str) -> Result<WeightedGraph> {
    let mut edges = Vec::new();
    let mut declared_nodes: Option<usize> = None;
    let mut max_id: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let (content, comment) = match raw.find('#') {
            Some(pos) => (&raw[..pos], Some(&raw[pos + 1..])),
            None => (raw, None),
        };
        if let Some(n) = comment.and_then(parse_nodes_header) {
            declared_nodes = Some(n);
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() < 2 || fields.len() > 3 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected `u v [w]`, found {} fields", fields.len()),
            });
        }
        let parse_id = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid node id `{s}`"),
            })
        };
        let u = parse_id(fields[0])?;
        let v = parse_id(fields[1])?;
        let w = match fields.get(2) {
            Some(s) => s.parse::<f64>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid weight `{s}`"),
            })?,
            None => 1.0,
        };
        check_weight(w).map_err(|m| validation(format!("line {line_no}: {m}")))?;
        if u == v {
            return Err(validation(format!("line {line_no}: self-loop on node {u}")));
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v, w, line_no));
    }

    let inferred = max_id.map_or(0, |m| m + 1);
    let n_nodes = match declared_nodes {
        Some(n) if n < inferred => {
            return Err(validation(format!(
                "header declares {n} nodes but ids reach {}",
                inferred - 1
            )))
        }
        Some(n) => n,
        None => inferred,
    };

    let mut seen = BTreeSet::new();
    for &(u, v, _, line_no) in &edges {
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(validation(format!("line {line_no}: duplicate edge ({u},{v})")));
        }
    }
    WeightedGraph::new(n_nodes, edges.into_iter().map(|(u, v, w, _)| (u, v, w)))
}

fn parse_nodes_header(comment: &str) -> Option<usize> {
    let mut parts = comment.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some("nodes"), Some(n), None) => n.parse().ok(),
        _ => None,
    }
}

/// Parses a label file: `id label` per line, `#` comments, every id in
/// `0..n` exactly once.
pub fn load_labels(text: &str, n_nodes: usize) -> Result<Vec<usize>> {
    let mut labels = vec![None; n_nodes];
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        let parsed = match fields.as_slice() {
            [id, label] => id.parse::<usize>().ok().zip(label.parse::<usize>().ok()),
            _ => None,
        };
        let (id, label) = parsed.ok_or_else(|| Error::Parse {
            line: line_no,
            message: "expected `id label`".into(),
        })?;
        let slot = labels
            .get_mut(id)
            .ok_or_else(|| validation(format!("line {line_no}: node {id} out of range")))?;
        if slot.replace(label).is_some() {
            return Err(validation(format!("line {line_no}: node {id} labelled twice")));
        }
    }
    labels
        .into_iter()
        .enumerate()
        .map(|(i, l)| l.ok_or_else(|| validation(format!("node {i} has no label"))))
        .collect()
}

/// Zachary's karate club with friendship-strength weights (34 nodes, 78
/// edges) and the two-faction split as node labels: 0 for Mr. Hi's side
/// (node 0), 1 for John A's side (node 33).
pub fn karate_club() -> WeightedGraph {
    let graph = load_edge_list(KARATE_EDGES).expect("bundled karate edge list is valid");
    let labels = load_labels(KARATE_LABELS, graph.n_nodes()).expect("bundled karate labels are valid");
    graph.with_labels(labels).expect("label count matches")
}

/// Dense symmetric adjacency matrix with zero diagonal.
pub fn adjacency(graph: &WeightedGraph) -> DMatrix<f64> {
    let n = graph.n_nodes;
    let mut a = DMatrix::zeros(n, n);
    for e in &graph.edges {
        a[(e.u, e.v)] = e.w;
        a[(e.v, e.u)] = e.w;
    }
    a
}

/// A hard partition of `n` nodes into `k` clusters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    cluster_of: Vec<usize>,
    k: usize,
}

impl Assignment {
    /// `k` may exceed the number of clusters actually used (empty clusters
    /// are allowed) but never the node count.
    pub fn new(cluster_of: Vec<usize>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(validation("k must be at least 1"));
        }
        if k > cluster_of.len() {
            return Err(validation(format!("k = {k} exceeds node count {}", cluster_of.len())));
        }
        if let Some((i, c)) = cluster_of.iter().enumerate().find(|(_, &c)| c >= k) {
            return Err(validation(format!("node {i} has cluster {c} outside 0..{k}")));
        }
        Ok(Self { cluster_of, k })
    }

    /// Uses `max label + 1` as `k`; labels need not be contiguous.
    pub fn from_labels(labels: Vec<usize>) -> Self {
        let k = labels.iter().max().map_or(1, |m| m + 1);
        Self { cluster_of: labels, k }
    }

    /// Relabels clusters to `0..c` in order of first appearance, dropping
    /// empty ones.
    pub fn canonical(&self) -> Self {
        let mut map = vec![usize::MAX; self.k];
        let mut next = 0;
        let cluster_of = self
            .cluster_of
            .iter()
            .map(|&c| {
                if map[c] == usize::MAX {
                    map[c] = next;
                    next += 1;
                }
                map[c]
            })
            .collect();
        Self {
            cluster_of,
            k: next.max(1),
        }
    }

    pub fn cluster_of(&self) -> &[usize] {
        &self.cluster_of
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.cluster_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cluster_of.is_empty()
    }

    /// Number of non-empty clusters.
    pub fn n_used(&self) -> usize {
        self.cluster_of.iter().collect::<BTreeSet<_>>().len()
    }

    /// Members of each cluster id in `0..k`, ascending.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (i, &c) in self.cluster_of.iter().enumerate() {
            out[c].push(i);
        }
        out
    }
}

const PALETTE: [&str; 12] = [
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd",
    "#ccebc5", "#ffed6f",
];

/// Renders the graph as Graphviz DOT with nodes filled by cluster color and
/// edges labelled with their weights. Palette colors cycle past 12 clusters.
pub fn export_dot(graph: &WeightedGraph, assignment: &Assignment) -> Result<String> {
    if assignment.len() != graph.n_nodes {
        return Err(validation(format!(
            "assignment covers {} nodes, graph has {}",
            assignment.len(),
            graph.n_nodes
        )));
    }
    let mut out = String::from("graph wgcgs {\n  node [style=filled, shape=circle];\n");
    for (i, &c) in assignment.cluster_of().iter().enumerate() {
        let _ = writeln!(
            out,
            "  {i} [label=\"{i}\", cluster=\"{c}\", fillcolor=\"{}\"];",
            PALETTE[c % PALETTE.len()]
        );
    }
    for e in &graph.edges {
        let _ = writeln!(out, "  {} -- {} [label=\"{}\", weight={}];", e.u, e.v, e.w, e.w);
    }
    out.push_str("}\n");
    Ok(out)
}
