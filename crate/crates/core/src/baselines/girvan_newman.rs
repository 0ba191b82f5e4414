use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};

use super::{components, Algorithm, BaselineResult};
use crate::error::{domain, validation, Result};
use crate::graph::WeightedGraph;

/// Relative tolerance for treating two path lengths as equal.
const PATH_EPS: f64 = 1e-12;
/// Relative tolerance for treating two betweenness values as tied.
const SCORE_EPS: f64 = 1e-9;

#[derive(PartialEq)]
struct Frontier {
    dist: f64,
    node: usize,
}

impl Eq for Frontier {}

impl Ord for Frontier {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Frontier {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn same_length(a: f64, b: f64) -> bool {
    (a - b).abs() <= PATH_EPS * a.abs().max(b.abs()).max(1.0)
}

/// Edge betweenness with path length `Σ 1/w`, keyed by `(u, v)` with `u < v`.
///
/// Each unordered pair of nodes contributes the fraction of its shortest
/// paths that cross the edge (Brandes accumulation over Dijkstra trees).
pub fn edge_betweenness(n: usize, neighbors: &[Vec<(usize, f64)>]) -> BTreeMap<(usize, usize), f64> {
    let mut score: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for (u, adj) in neighbors.iter().enumerate() {
        for &(v, _) in adj {
            if u < v {
                score.insert((u, v), 0.0);
            }
        }
    }

    for source in 0..n {
        let mut dist = vec![f64::INFINITY; n];
        let mut sigma = vec![0.0f64; n];
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut settled = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut heap = BinaryHeap::new();
        dist[source] = 0.0;
        sigma[source] = 1.0;
        heap.push(Frontier {
            dist: 0.0,
            node: source,
        });

        while let Some(Frontier { dist: d, node: u }) = heap.pop() {
            if settled[u] || d > dist[u] {
                continue;
            }
            settled[u] = true;
            order.push(u);
            for &(v, w) in &neighbors[u] {
                if settled[v] {
                    continue;
                }
                let candidate = d + 1.0 / w;
                if dist[v].is_finite() && same_length(candidate, dist[v]) {
                    sigma[v] += sigma[u];
                    preds[v].push(u);
                } else if candidate < dist[v] {
                    dist[v] = candidate;
                    sigma[v] = sigma[u];
                    preds[v] = vec![u];
                    heap.push(Frontier {
                        dist: candidate,
                        node: v,
                    });
                }
            }
        }

        let mut delta = vec![0.0; n];
        for &w in order.iter().rev() {
            for &v in &preds[w] {
                let share = sigma[v] / sigma[w] * (1.0 + delta[w]);
                *score.get_mut(&(v.min(w), v.max(w))).expect("edge exists") += share;
                delta[v] += share;
            }
        }
    }
    // Every unordered pair was counted from both endpoints.
    for s in score.values_mut() {
        *s /= 2.0;
    }
    score
}

/// Girvan–Newman divisive clustering: remove the highest-betweenness edge
/// (lexicographically smallest on ties), recompute, and stop once at least
/// `k` connected components exist.
pub fn girvan_newman(graph: &WeightedGraph, k: usize) -> Result<BaselineResult> {
    let n = graph.n_nodes();
    if k > n {
        return Err(validation(format!("k = {k} exceeds node count {n}")));
    }
    if graph.edges().is_empty() {
        return Err(domain("edge betweenness clustering needs at least one edge"));
    }
    let mut neighbors = graph.neighbors();
    let count = |labels: &[usize]| labels.iter().max().map_or(0, |m| m + 1);
    let mut labels = components(n, &neighbors);
    while count(&labels) < k {
        let scores = edge_betweenness(n, &neighbors);
        let top = scores.values().copied().fold(f64::NEG_INFINITY, f64::max);
        let Some((&(u, v), _)) = scores
            .iter()
            .find(|(_, &s)| (top - s) <= SCORE_EPS * top.abs().max(1.0))
        else {
            break;
        };
        neighbors[u].retain(|&(x, _)| x != v);
        neighbors[v].retain(|&(x, _)| x != u);
        labels = components(n, &neighbors);
    }
    Ok(BaselineResult::new(graph, Algorithm::EdgeBetweenness, labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::karate_club;

    #[test]
    fn path_tie_removes_first_edge() {
        let g = WeightedGraph::new(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let scores = edge_betweenness(3, &g.neighbors());
        assert_eq!(scores[&(0, 1)], 2.0);
        assert_eq!(scores[&(1, 2)], 2.0);
        let r = girvan_newman(&g, 2).unwrap();
        assert_eq!(r.assignment.cluster_of(), &[0, 1, 1]);
    }

    #[test]
    fn bridge_goes_first() {
        let g = WeightedGraph::new(
            6,
            [
                (0, 1, 1.0),
                (1, 2, 1.0),
                (0, 2, 1.0),
                (2, 3, 1.0),
                (3, 4, 1.0),
                (4, 5, 1.0),
                (3, 5, 1.0),
            ],
        )
        .unwrap();
        let scores = edge_betweenness(6, &g.neighbors());
        let (&top, _) = scores.iter().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
        assert_eq!(top, (2, 3));
        assert_eq!(scores[&(2, 3)], 9.0);
        let r = girvan_newman(&g, 2).unwrap();
        assert_eq!(r.assignment.cluster_of(), &[0, 0, 0, 1, 1, 1]);
    }

    #[test]
    fn heavier_edges_are_shorter() {
        // 0–1–2 with a heavy detour 0–3–2: 1/4 + 1/4 < 1 + 1
        let g = WeightedGraph::new(4, [(0, 1, 1.0), (1, 2, 1.0), (0, 3, 4.0), (2, 3, 4.0)]).unwrap();
        let scores = edge_betweenness(4, &g.neighbors());
        assert!(scores[&(0, 3)] > scores[&(0, 1)]);
    }

    #[test]
    fn karate_reaches_k_components() {
        let g = karate_club();
        for k in [1, 2, 4] {
            assert_eq!(girvan_newman(&g, k).unwrap().assignment.n_used(), k);
        }
        assert!(girvan_newman(&g, 35).is_err());
    }
}
