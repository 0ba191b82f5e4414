use nalgebra::{DMatrix, DVector};

use super::{components, Algorithm, BaselineResult};
use crate::error::{domain, Result};
use crate::graph::{adjacency, WeightedGraph};

const TOLERANCE: f64 = 1e-10;
const MAX_ITERATIONS: usize = 10_000;

/// Modularity matrix `B = A − k kᵀ / 2m`.
pub fn modularity_matrix(graph: &WeightedGraph) -> Result<DMatrix<f64>> {
    let two_m = 2.0 * graph.total_weight();
    if two_m <= 0.0 {
        return Err(domain("modularity matrix is undefined without edges"));
    }
    let k = DVector::from_vec(graph.degrees());
    Ok(adjacency(graph) - (&k * k.transpose()) / two_m)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerIteration {
    pub eigenvalue: f64,
    /// Unit length; the largest-magnitude component is positive.
    pub eigenvector: DVector<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Largest (most positive) eigenpair of a symmetric matrix by power
/// iteration on `M + σI`, with `σ` the largest absolute row sum so that the
/// shifted spectrum is non-negative.
pub fn power_iteration(matrix: &DMatrix<f64>) -> PowerIteration {
    let n = matrix.nrows();
    let shift = matrix
        .row_iter()
        .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let shifted = matrix + DMatrix::identity(n, n) * shift;

    // Fixed, non-symmetric start so that no eigenvector is orthogonal to it by construction.
    let mut v = DVector::from_fn(n, |i, _| 1.0 + (i as f64 + 1.0).sqrt() / n as f64);
    v.normalize_mut();
    let mut iterations = 0;
    let mut converged = false;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let mut next = &shifted * &v;
        let norm = next.norm();
        if norm == 0.0 {
            converged = true;
            break;
        }
        next /= norm;
        let delta = (&next - &v).amax();
        v = next;
        if delta < TOLERANCE {
            converged = true;
            break;
        }
    }
    let pivot = v.iamax();
    if v[pivot] < 0.0 {
        v.neg_mut();
    }
    let eigenvalue = v.dot(&(matrix * &v));
    PowerIteration {
        eigenvalue,
        eigenvector: v,
        iterations,
        converged,
    }
}

/// Best bisection of one group: the `±1` split and its modularity gain
/// `sᵀ B⁽ᵍ⁾ s / 4m`.
fn bisect(b: &DMatrix<f64>, group: &[usize], two_m: f64) -> Option<(Vec<usize>, Vec<usize>, f64)> {
    let size = group.len();
    if size < 2 {
        return None;
    }
    // Generalized modularity matrix of the subgroup.
    let mut sub = DMatrix::from_fn(size, size, |i, j| b[(group[i], group[j])]);
    for i in 0..size {
        let row_sum: f64 = sub.row(i).sum();
        sub[(i, i)] -= row_sum;
    }
    let leading = power_iteration(&sub);
    if leading.eigenvalue <= 1e-12 {
        return None;
    }
    let s = leading.eigenvector.map(|x| if x >= 0.0 { 1.0 } else { -1.0 });
    let gain = s.dot(&(&sub * &s)) / (2.0 * two_m);
    if gain <= 1e-12 {
        return None;
    }
    let (pos, neg): (Vec<usize>, Vec<usize>) = group.iter().zip(s.iter()).map(|(&i, &x)| (i, x)).fold(
        (Vec::new(), Vec::new()),
        |(mut pos, mut neg), (i, x)| {
            if x > 0.0 {
                pos.push(i);
            } else {
                neg.push(i);
            }
            (pos, neg)
        },
    );
    if pos.is_empty() || neg.is_empty() {
        return None;
    }
    Some((pos, neg, gain))
}

/// Newman's leading-eigenvector method: repeatedly bisect the group whose
/// split gains the most modularity, until `k` groups exist or no split
/// gains. Power-of-two `k` gives the usual recursive bisection.
///
/// Connected components are the starting groups, so a disconnected graph
/// yields at least one group per component, even beyond `k`.
pub fn leading_eigenvector(graph: &WeightedGraph, k: usize) -> Result<BaselineResult> {
    let b = modularity_matrix(graph)?;
    let two_m = 2.0 * graph.total_weight();
    let component_of = components(graph.n_nodes(), &graph.neighbors());
    let n_components = component_of.iter().max().map_or(0, |m| m + 1);
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n_components];
    for (i, &c) in component_of.iter().enumerate() {
        groups[c].push(i);
    }
    while groups.len() < k {
        let best = groups
            .iter()
            .enumerate()
            .filter_map(|(idx, g)| bisect(&b, g, two_m).map(|split| (idx, split)))
            .fold(
                None::<(usize, (Vec<usize>, Vec<usize>, f64))>,
                |best, cand| match best {
                    Some(ref b) if b.1 .2 >= cand.1 .2 => best,
                    _ => Some(cand),
                },
            );
        let Some((idx, (pos, neg, _))) = best else { break };
        groups[idx] = pos;
        groups.push(neg);
    }
    let mut labels = vec![0; graph.n_nodes()];
    for (c, group) in groups.iter().enumerate() {
        for &i in group {
            labels[i] = c;
        }
    }
    Ok(BaselineResult::new(graph, Algorithm::LeadingEigenvector, labels))
}
