use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Algorithm, BaselineResult};
use crate::graph::WeightedGraph;

const MAX_SWEEPS: usize = 100;

/// Asynchronous weighted label propagation.
///
/// Every node starts in its own label. Each sweep visits nodes in a seeded
/// random order and moves each one to the label carrying the most incident
/// weight. A node keeps its current label when that label is among the best;
/// otherwise the lowest best label wins. Stops at a fixed point or after 100
/// sweeps.
pub fn label_propagation(graph: &WeightedGraph, seed: u64) -> BaselineResult {
    let n = graph.n_nodes();
    let neighbors = graph.neighbors();
    let mut labels: Vec<usize> = (0..n).collect();
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _ in 0..MAX_SWEEPS {
        order.shuffle(&mut rng);
        let mut changed = false;
        for &i in &order {
            if neighbors[i].is_empty() {
                continue;
            }
            let mut weight_by_label: BTreeMap<usize, f64> = BTreeMap::new();
            for &(j, w) in &neighbors[i] {
                *weight_by_label.entry(labels[j]).or_insert(0.0) += w;
            }
            let best = weight_by_label.values().copied().fold(f64::NEG_INFINITY, f64::max);
            if weight_by_label.get(&labels[i]) == Some(&best) {
                continue;
            }
            let choice = weight_by_label
                .iter()
                .find(|(_, &w)| w == best)
                .map(|(&l, _)| l)
                .expect("non-empty neighborhood");
            labels[i] = choice;
            changed = true;
        }
        if !changed {
            break;
        }
    }
    BaselineResult::new(graph, Algorithm::LabelPropagation, labels)
}
