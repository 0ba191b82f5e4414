use std::collections::BTreeMap;

use super::{Algorithm, BaselineResult};
use crate::error::{domain, Result};
use crate::graph::WeightedGraph;

/// Graph at one aggregation level. `loops[i]` is `A_ii`, i.e. twice the
/// weight internal to super-node `i`.
struct Level {
    neighbors: Vec<Vec<(usize, f64)>>,
    loops: Vec<f64>,
}

impl Level {
    fn n(&self) -> usize {
        self.neighbors.len()
    }

    fn degrees(&self) -> Vec<f64> {
        self.neighbors
            .iter()
            .zip(&self.loops)
            .map(|(adj, l)| l + adj.iter().map(|(_, w)| w).sum::<f64>())
            .collect()
    }

    /// Local moving phase. Returns the community of each node and whether any
    /// node moved.
    fn local_moves(&self, two_m: f64) -> (Vec<usize>, bool) {
        let n = self.n();
        let degree = self.degrees();
        let mut community: Vec<usize> = (0..n).collect();
        let mut totals = degree.clone();
        let mut moved_any = false;
        loop {
            let mut moved = false;
            for i in 0..n {
                let current = community[i];
                let mut links: BTreeMap<usize, f64> = BTreeMap::new();
                for &(j, w) in &self.neighbors[i] {
                    *links.entry(community[j]).or_insert(0.0) += w;
                }
                totals[current] -= degree[i];
                // Gain of joining c, up to the common factor 1/m.
                let gain = |c: usize, link: f64| link - totals[c] * degree[i] / two_m;
                let mut best = current;
                let mut best_gain = gain(current, links.get(&current).copied().unwrap_or(0.0));
                for (&c, &link) in &links {
                    let g = gain(c, link);
                    if g > best_gain + 1e-12 {
                        best = c;
                        best_gain = g;
                    }
                }
                totals[best] += degree[i];
                if best != current {
                    community[i] = best;
                    moved = true;
                    moved_any = true;
                }
            }
            if !moved {
                break;
            }
        }
        (compact(&community), moved_any)
    }

    fn aggregate(&self, community: &[usize]) -> Level {
        let c = community.iter().max().map_or(0, |m| m + 1);
        let mut loops = vec![0.0; c];
        let mut links: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); c];
        for i in 0..self.n() {
            let ci = community[i];
            loops[ci] += self.loops[i];
            for &(j, w) in &self.neighbors[i] {
                let cj = community[j];
                if ci == cj {
                    loops[ci] += w;
                } else {
                    *links[ci].entry(cj).or_insert(0.0) += w;
                }
            }
        }
        Level {
            neighbors: links.into_iter().map(|m| m.into_iter().collect()).collect(),
            loops,
        }
    }
}

fn compact(labels: &[usize]) -> Vec<usize> {
    let mut map = BTreeMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = map.len();
            *map.entry(l).or_insert(next)
        })
        .collect()
}

/// Louvain-style multi-level modularity optimization.
///
/// Nodes are scanned in id order and moved to the neighboring community with
/// the largest strictly positive modularity gain. When no node moves, the
/// communities are collapsed into super-nodes and the scan repeats.
pub fn greedy_modularity(graph: &WeightedGraph) -> Result<BaselineResult> {
    let two_m = 2.0 * graph.total_weight();
    if two_m <= 0.0 {
        return Err(domain("modularity optimization needs at least one edge"));
    }
    let mut level = Level {
        neighbors: graph.neighbors(),
        loops: vec![0.0; graph.n_nodes()],
    };
    let mut labels: Vec<usize> = (0..graph.n_nodes()).collect();
    loop {
        let (community, moved) = level.local_moves(two_m);
        if !moved {
            break;
        }
        for l in &mut labels {
            *l = community[*l];
        }
        level = level.aggregate(&community);
    }
    Ok(BaselineResult::new(graph, Algorithm::GreedyModularity, labels))
}
