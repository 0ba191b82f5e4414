//! Independent reference computations used by the integration tests.
//!
//! Nothing here calls into the code paths it checks: metrics are recomputed
//! from explicit pair enumeration or probability tables, modularity from the
//! dense double sum, gradients from central differences, betweenness from
//! enumeration of every simple path.
#![allow(dead_code)]

use std::collections::HashMap;

use nalgebra::DMatrix;
use rand::Rng;
use wgcgs::graph::WeightedGraph;
use wgcgs::train::Objective;

pub fn two_triangles() -> WeightedGraph {
    WeightedGraph::new(
        6,
        [
            (0, 1, 1.0),
            (1, 2, 1.0),
            (0, 2, 1.0),
            (3, 4, 1.0),
            (4, 5, 1.0),
            (3, 5, 1.0),
        ],
    )
    .unwrap()
}

/// Two triangles joined by the bridge 2–3.
pub fn barbell() -> WeightedGraph {
    WeightedGraph::new(
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
    .unwrap()
}

/// Erdős–Rényi graph with uniform weights in `weights`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64, weights: std::ops::Range<f64>) -> WeightedGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j, rng.gen_range(weights.clone())));
            }
        }
    }
    WeightedGraph::new(n, edges).unwrap()
}

pub fn random_labels<R: Rng>(rng: &mut R, n: usize, max_k: usize) -> Vec<usize> {
    let k = rng.gen_range(1..=max_k);
    (0..n).map(|_| rng.gen_range(0..k)).collect()
}

pub fn dense(graph: &WeightedGraph) -> Vec<Vec<f64>> {
    let mut a = vec![vec![0.0; graph.n_nodes()]; graph.n_nodes()];
    for e in graph.edges() {
        a[e.u][e.v] = e.w;
        a[e.v][e.u] = e.w;
    }
    a
}

/// ARI from explicit enumeration of all node pairs.
pub fn ari_by_pairs(truth: &[usize], pred: &[usize]) -> f64 {
    let n = truth.len();
    let (mut both, mut same_truth, mut same_pred, mut total) = (0.0, 0.0, 0.0, 0.0);
    for i in 0..n {
        for j in i + 1..n {
            let t = truth[i] == truth[j];
            let p = pred[i] == pred[j];
            total += 1.0;
            same_truth += t as u8 as f64;
            same_pred += p as u8 as f64;
            both += (t && p) as u8 as f64;
        }
    }
    let expected = same_truth * same_pred / total;
    let max = (same_truth + same_pred) / 2.0;
    if max == expected {
        1.0
    } else {
        (both - expected) / (max - expected)
    }
}

/// (homogeneity, completeness, v-measure, nmi) from joint and marginal
/// probability tables, via mutual information.
pub fn entropy_scores_by_tables(truth: &[usize], pred: &[usize]) -> (f64, f64, f64, f64) {
    let n = truth.len() as f64;
    let mut joint: HashMap<(usize, usize), usize> = HashMap::new();
    let mut ct: HashMap<usize, usize> = HashMap::new();
    let mut cp: HashMap<usize, usize> = HashMap::new();
    for (&t, &p) in truth.iter().zip(pred) {
        *joint.entry((t, p)).or_default() += 1;
        *ct.entry(t).or_default() += 1;
        *cp.entry(p).or_default() += 1;
    }
    let prob =
        |m: HashMap<usize, usize>| -> HashMap<usize, f64> { m.into_iter().map(|(k, c)| (k, c as f64 / n)).collect() };
    let (pt, pp) = (prob(ct), prob(cp));
    let joint: HashMap<(usize, usize), f64> = joint.into_iter().map(|(k, c)| (k, c as f64 / n)).collect();
    let h = |m: &HashMap<usize, f64>| -> f64 { m.values().map(|&q| -q * q.ln()).sum() };
    let (h_t, h_p) = (h(&pt), h(&pp));
    let mi: f64 = joint.iter().map(|(&(t, p), &q)| q * (q / (pt[&t] * pp[&p])).ln()).sum();
    let homo = if h_t == 0.0 { 1.0 } else { mi / h_t };
    let comp = if h_p == 0.0 { 1.0 } else { mi / h_p };
    let v = if homo + comp == 0.0 {
        0.0
    } else {
        2.0 * homo * comp / (homo + comp)
    };
    let nmi = if h_t + h_p == 0.0 { 1.0 } else { 2.0 * mi / (h_t + h_p) };
    (homo, comp, v, nmi)
}

/// `(1/2m) Σ_ij [A_ij − k_i k_j / 2m] δ(c_i, c_j)` over the dense matrix.
pub fn modularity_double_sum(graph: &WeightedGraph, labels: &[usize]) -> f64 {
    let a = dense(graph);
    let n = a.len();
    let k: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();
    let two_m: f64 = k.iter().sum();
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                q += a[i][j] - k[i] * k[j] / two_m;
            }
        }
    }
    q / two_m
}

/// Central finite differences of the objective's loss with respect to each logit.
pub fn fd_gradient(obj: &Objective, logits: &DMatrix<f64>, tau: f64, noise: &DMatrix<f64>, h: f64) -> DMatrix<f64> {
    let mut grad = DMatrix::zeros(logits.nrows(), logits.ncols());
    for i in 0..logits.nrows() {
        for c in 0..logits.ncols() {
            let mut plus = logits.clone();
            plus[(i, c)] += h;
            let mut minus = logits.clone();
            minus[(i, c)] -= h;
            grad[(i, c)] = (obj.loss(&plus, tau, noise).unwrap() - obj.loss(&minus, tau, noise).unwrap()) / (2.0 * h);
        }
    }
    grad
}

pub fn relative_error(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(floor)
}

/// Loss of an explicit hard labelling, computed from scratch:
/// `R = c·SᵀAS` by triple loop, then row log-softmax.
pub fn hard_loss_direct(graph: &WeightedGraph, labels: &[usize], k: usize, scale: f64) -> f64 {
    let a = dense(graph);
    let mut r = vec![vec![0.0; k]; k];
    for i in 0..a.len() {
        for j in 0..a.len() {
            r[labels[i]][labels[j]] += scale * a[i][j];
        }
    }
    let mut loss = 0.0;
    for (row_idx, row) in r.iter().enumerate() {
        let lse = row.iter().map(|x| x.exp()).sum::<f64>().ln();
        loss -= row[row_idx] - lse;
    }
    loss / k as f64
}

/// Minimum hard loss over every labelling in `{0,1}ⁿ`, with the minimizers
/// (as canonical labellings, first node in cluster 0).
pub fn exhaustive_two_partitions(graph: &WeightedGraph, scale: f64) -> (f64, Vec<Vec<usize>>) {
    let n = graph.n_nodes();
    let mut best = f64::INFINITY;
    let mut argmins: Vec<Vec<usize>> = Vec::new();
    for mask in 0u32..(1 << n) {
        let labels: Vec<usize> = (0..n).map(|i| ((mask >> i) & 1) as usize).collect();
        let loss = hard_loss_direct(graph, &labels, 2, scale);
        let canonical: Vec<usize> = labels.iter().map(|&l| l ^ labels[0]).collect();
        if loss < best - 1e-12 {
            best = loss;
            argmins = vec![canonical];
        } else if (loss - best).abs() <= 1e-12 && !argmins.contains(&canonical) {
            argmins.push(canonical);
        }
    }
    (best, argmins)
}

/// Edge betweenness by enumerating every simple path between every pair,
/// with length Σ 1/w. Keys are `(u, v)` with `u < v`.
pub fn betweenness_by_paths(graph: &WeightedGraph) -> HashMap<(usize, usize), f64> {
    let n = graph.n_nodes();
    let a = dense(graph);
    let mut score: HashMap<(usize, usize), f64> = graph.edges().iter().map(|e| ((e.u, e.v), 0.0)).collect();

    fn walk(
        a: &[Vec<f64>],
        node: usize,
        target: usize,
        visited: &mut Vec<bool>,
        path: &mut Vec<usize>,
        length: f64,
        out: &mut Vec<(f64, Vec<usize>)>,
    ) {
        if node == target {
            out.push((length, path.clone()));
            return;
        }
        for next in 0..a.len() {
            if a[node][next] > 0.0 && !visited[next] {
                visited[next] = true;
                path.push(next);
                walk(a, next, target, visited, path, length + 1.0 / a[node][next], out);
                path.pop();
                visited[next] = false;
            }
        }
    }

    for s in 0..n {
        for t in s + 1..n {
            let mut paths = Vec::new();
            let mut visited = vec![false; n];
            visited[s] = true;
            walk(&a, s, t, &mut visited, &mut vec![s], 0.0, &mut paths);
            if paths.is_empty() {
                continue;
            }
            let shortest = paths.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
            let tied: Vec<&Vec<usize>> = paths
                .iter()
                .filter(|p| (p.0 - shortest).abs() <= 1e-12 * shortest.max(1.0))
                .map(|p| &p.1)
                .collect();
            let share = 1.0 / tied.len() as f64;
            for path in tied {
                for hop in path.windows(2) {
                    *score.get_mut(&(hop[0].min(hop[1]), hop[0].max(hop[1]))).unwrap() += share;
                }
            }
        }
    }
    score
}
