//! Classical community-detection baselines: label propagation, Louvain-style
//! modularity optimization, leading-eigenvector bisection, and Girvan–Newman
//! edge betweenness.
//!
//! Every algorithm is deterministic given its inputs; ties break toward the
//! lowest node id, cluster id, or lexicographically smallest edge.

mod eigenvector;
mod girvan_newman;
mod label_propagation;
mod louvain;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{Assignment, WeightedGraph};
use crate::metrics::modularity;

pub use eigenvector::{leading_eigenvector, modularity_matrix, power_iteration, PowerIteration};
pub use girvan_newman::{edge_betweenness, girvan_newman};
pub use label_propagation::label_propagation;
pub use louvain::greedy_modularity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "PL")]
    LabelPropagation,
    #[serde(rename = "MOM")]
    GreedyModularity,
    #[serde(rename = "ECM")]
    LeadingEigenvector,
    #[serde(rename = "EB")]
    EdgeBetweenness,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::LabelPropagation,
        Algorithm::GreedyModularity,
        Algorithm::LeadingEigenvector,
        Algorithm::EdgeBetweenness,
    ];

    /// Short code used in tables (`PL`, `MOM`, `ECM`, `EB`).
    pub fn code(self) -> &'static str {
        match self {
            Algorithm::LabelPropagation => "PL",
            Algorithm::GreedyModularity => "MOM",
            Algorithm::LeadingEigenvector => "ECM",
            Algorithm::EdgeBetweenness => "EB",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "pl" | "lpa" => Ok(Algorithm::LabelPropagation),
            "mom" | "louvain" => Ok(Algorithm::GreedyModularity),
            "ecm" | "eigenvector" => Ok(Algorithm::LeadingEigenvector),
            "eb" | "girvan-newman" => Ok(Algorithm::EdgeBetweenness),
            other => Err(format!("unknown baseline `{other}`")),
        }
    }
}

/// A baseline's partition together with its weighted modularity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineResult {
    pub algorithm: Algorithm,
    pub assignment: Assignment,
    /// `NaN` when the graph has no edges.
    pub modularity: f64,
}

impl BaselineResult {
    pub(crate) fn new(graph: &WeightedGraph, algorithm: Algorithm, labels: Vec<usize>) -> Self {
        let assignment = Assignment::from_labels(labels).canonical();
        let modularity = modularity(graph, &assignment).unwrap_or(f64::NAN);
        Self {
            algorithm,
            assignment,
            modularity,
        }
    }
}

/// Runs one baseline. `k` is ignored by label propagation and Louvain, and
/// `seed` by everything except label propagation.
pub fn run(algorithm: Algorithm, graph: &WeightedGraph, k: usize, seed: u64) -> Result<BaselineResult> {
    match algorithm {
        Algorithm::LabelPropagation => Ok(label_propagation(graph, seed)),
        Algorithm::GreedyModularity => greedy_modularity(graph),
        Algorithm::LeadingEigenvector => leading_eigenvector(graph, k),
        Algorithm::EdgeBetweenness => girvan_newman(graph, k),
    }
}

/// Connected components labelled by order of their lowest node.
pub(crate) fn components(n: usize, neighbors: &[Vec<(usize, f64)>]) -> Vec<usize> {
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        label[start] = next;
        while let Some(u) = stack.pop() {
            for &(v, _) in &neighbors[u] {
                if label[v] == usize::MAX {
                    label[v] = next;
                    stack.push(v);
                }
            }
        }
        next += 1;
    }
    label
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.code().parse::<Algorithm>().unwrap(), a);
        }
        assert!("walktrap".parse::<Algorithm>().is_err());
    }

    #[test]
    fn components_of_two_triangles() {
        let g = WeightedGraph::new(7, [(0, 1, 1.0), (1, 2, 1.0), (4, 5, 1.0), (5, 6, 1.0)]).unwrap();
        assert_eq!(components(7, &g.neighbors()), vec![0, 0, 0, 1, 2, 2, 2]);
    }
}
