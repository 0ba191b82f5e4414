//! External cluster-validity scores and Newman modularity.
//!
//! Pair-counting (ARI) and entropy-based (homogeneity, completeness,
//! V-measure, NMI) scores are computed from a [`ContingencyTable`]. Entropies
//! use the natural log; every score is a ratio, so the base cancels. NMI is
//! normalized by the arithmetic mean of the two entropies, which makes it
//! coincide with the V-measure.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{domain, validation, Result};
use crate::graph::{Assignment, WeightedGraph};

/// Counts of nodes per (true class, predicted cluster). Only labels that
/// occur are kept, so every row and column margin is positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContingencyTable {
    counts: Vec<Vec<u64>>,
    n: u64,
}

impl ContingencyTable {
    /// Rows are true classes, columns predicted clusters, both in ascending
    /// label order.
    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn class_totals(&self) -> Vec<u64> {
        self.counts.iter().map(|row| row.iter().sum()).collect()
    }

    pub fn cluster_totals(&self) -> Vec<u64> {
        let cols = self.counts.first().map_or(0, Vec::len);
        (0..cols).map(|j| self.counts.iter().map(|row| row[j]).sum()).collect()
    }
}

pub fn contingency(truth: &Assignment, pred: &Assignment) -> Result<ContingencyTable> {
    contingency_from_labels(truth.cluster_of(), pred.cluster_of())
}

/// Same as [`contingency`] on raw label slices.
pub fn contingency_from_labels(truth: &[usize], pred: &[usize]) -> Result<ContingencyTable> {
    if truth.len() != pred.len() {
        return Err(validation(format!(
            "label lengths differ: {} vs {}",
            truth.len(),
            pred.len()
        )));
    }
    let index = |labels: &[usize]| -> BTreeMap<usize, usize> {
        let mut map: BTreeMap<usize, usize> = labels.iter().map(|&l| (l, 0)).collect();
        for (i, v) in map.values_mut().enumerate() {
            *v = i;
        }
        map
    };
    let rows = index(truth);
    let cols = index(pred);
    let mut counts = vec![vec![0u64; cols.len()]; rows.len()];
    for (t, p) in truth.iter().zip(pred) {
        counts[rows[t]][cols[p]] += 1;
    }
    Ok(ContingencyTable {
        counts,
        n: truth.len() as u64,
    })
}

fn pairs(x: u64) -> f64 {
    let x = x as f64;
    x * (x - 1.0) / 2.0
}

/// Hubert–Arabie adjusted Rand index. Returns 1 when the chance-corrected
/// denominator vanishes (both partitions trivial in the same way).
pub fn adjusted_rand_index(table: &ContingencyTable) -> Result<f64> {
    if table.n < 2 {
        return Err(domain(format!("ARI needs at least 2 samples, got {}", table.n)));
    }
    let index: f64 = table.counts.iter().flatten().map(|&c| pairs(c)).sum();
    let rows: f64 = table.class_totals().into_iter().map(pairs).sum();
    let cols: f64 = table.cluster_totals().into_iter().map(pairs).sum();
    let expected = rows * cols / pairs(table.n);
    let max = (rows + cols) / 2.0;
    if max == expected {
        return Ok(1.0);
    }
    Ok((index - expected) / (max - expected))
}

/// Conditional-entropy scores of one labelling against another.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyScores {
    pub homogeneity: f64,
    pub completeness: f64,
    pub v_measure: f64,
    pub nmi: f64,
}

fn entropy(totals: &[u64], n: f64) -> f64 {
    totals
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.ln()
        })
        .sum()
}

/// Homogeneity `1 − H(C|K)/H(C)`, completeness `1 − H(K|C)/H(K)`, their
/// harmonic mean, and NMI `I(C;K) / ((H(C)+H(K))/2)`.
///
/// A zero-entropy denominator scores 1 for homogeneity or completeness; NMI
/// is 1 when both entropies vanish.
pub fn entropy_metrics(table: &ContingencyTable) -> EntropyScores {
    if table.n == 0 {
        return EntropyScores {
            homogeneity: 1.0,
            completeness: 1.0,
            v_measure: 1.0,
            nmi: 1.0,
        };
    }
    let n = table.n as f64;
    let classes = table.class_totals();
    let clusters = table.cluster_totals();
    let h_c = entropy(&classes, n);
    let h_k = entropy(&clusters, n);

    let mut h_c_given_k = 0.0;
    let mut h_k_given_c = 0.0;
    for (i, row) in table.counts.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let joint = c as f64 / n;
            h_c_given_k -= joint * (c as f64 / clusters[j] as f64).ln();
            h_k_given_c -= joint * (c as f64 / classes[i] as f64).ln();
        }
    }

    let homogeneity = if h_c == 0.0 { 1.0 } else { 1.0 - h_c_given_k / h_c };
    let completeness = if h_k == 0.0 { 1.0 } else { 1.0 - h_k_given_c / h_k };
    let v_measure = if homogeneity + completeness == 0.0 {
        0.0
    } else {
        2.0 * homogeneity * completeness / (homogeneity + completeness)
    };
    let nmi = if h_c + h_k == 0.0 {
        1.0
    } else {
        let mutual = (h_c - h_c_given_k).max(0.0);
        (mutual / ((h_c + h_k) / 2.0)).min(1.0)
    };
    EntropyScores {
        homogeneity,
        completeness,
        v_measure,
        nmi,
    }
}

/// Weighted Newman modularity
/// `Q = Σ_c [ in_c / 2m − (tot_c / 2m)² ]`, where `in_c` sums `A_ij` over
/// ordered pairs inside cluster `c` and `tot_c` sums weighted degrees.
pub fn modularity(graph: &WeightedGraph, pred: &Assignment) -> Result<f64> {
    if pred.len() != graph.n_nodes() {
        return Err(validation(format!(
            "assignment covers {} nodes, graph has {}",
            pred.len(),
            graph.n_nodes()
        )));
    }
    let m = graph.total_weight();
    if m <= 0.0 {
        return Err(domain("modularity is undefined on a graph without edges"));
    }
    let labels = pred.cluster_of();
    let mut inside = vec![0.0; pred.k()];
    let mut total = vec![0.0; pred.k()];
    for e in graph.edges() {
        total[labels[e.u]] += e.w;
        total[labels[e.v]] += e.w;
        if labels[e.u] == labels[e.v] {
            inside[labels[e.u]] += 2.0 * e.w;
        }
    }
    let two_m = 2.0 * m;
    Ok(inside
        .iter()
        .zip(&total)
        .map(|(i, t)| i / two_m - (t / two_m).powi(2))
        .sum())
}

/// Every score for one partition against ground truth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub ari: f64,
    pub nmi: f64,
    pub homogeneity: f64,
    pub completeness: f64,
    pub v_measure: f64,
    /// Weighted modularity.
    pub modularity: f64,
    /// Modularity of the same partition with every edge weight set to 1.
    pub modularity_unweighted: f64,
}

impl MetricsReport {
    pub fn evaluate(graph: &WeightedGraph, truth: &Assignment, pred: &Assignment) -> Result<Self> {
        let table = contingency(truth, pred)?;
        let ari = adjusted_rand_index(&table)?;
        let e = entropy_metrics(&table);
        Ok(Self {
            ari,
            nmi: e.nmi,
            homogeneity: e.homogeneity,
            completeness: e.completeness,
            v_measure: e.v_measure,
            modularity: modularity(graph, pred)?,
            modularity_unweighted: modularity(&graph.unweighted(), pred)?,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain struct serializes")
    }
}

/// Scores that only need the graph (no ground truth).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    pub modularity: f64,
    pub modularity_unweighted: f64,
}

impl StructureReport {
    pub fn evaluate(graph: &WeightedGraph, pred: &Assignment) -> Result<Self> {
        Ok(Self {
            modularity: modularity(graph, pred)?,
            modularity_unweighted: modularity(&graph.unweighted(), pred)?,
        })
    }
}

/// Plain-text table with one column per named report and one row per metric.
pub fn render_table(columns: &[(String, MetricsReport)]) -> String {
    type Row = (&'static str, fn(&MetricsReport) -> f64);
    let rows: [Row; 7] = [
        ("ARI", |r| r.ari),
        ("NMI", |r| r.nmi),
        ("HOMO", |r| r.homogeneity),
        ("COMP", |r| r.completeness),
        ("V-MES", |r| r.v_measure),
        ("Q", |r| r.modularity),
        ("Q(unw)", |r| r.modularity_unweighted),
    ];
    let width = columns.iter().map(|(name, _)| name.len()).max().unwrap_or(0).max(8);
    let mut out = format!("{:<8}", "Metric");
    for (name, _) in columns {
        let _ = write!(out, " {name:>width$}");
    }
    out.push('\n');
    for (label, get) in rows {
        let _ = write!(out, "{label:<8}");
        for (_, report) in columns {
            let _ = write!(out, " {:>width$.4}", get(report));
        }
        out.push('\n');
    }
    out
}
