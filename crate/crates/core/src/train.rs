//! Gumbel-softmax cluster training.
//!
//! The trainable parameters are an `n × k` logits matrix. Each epoch draws
//! Gumbel noise, relaxes the logits into a row-stochastic soft assignment
//! `S`, forms the cluster-strength matrix `R = Sᵀ A S`, and pushes the
//! row-softmax of `R` toward the identity with a cross-entropy loss:
//!
//! ```text
//! S    = softmax_rows((logits − log(−log U)) / τ)
//! R    = c · Sᵀ A S
//! P    = softmax_rows(R)
//! loss = −(1/k) Σ_a log P[a][a]
//! ```
//!
//! `c` is the strength scale (see [`StrengthScale`]). Gradients are computed
//! by a hand-written reverse pass through the chain in [`Objective::gradient`].

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, validation, Result};
use crate::graph::{adjacency, Assignment, WeightedGraph};

/// Trainable logits behind the soft cluster-assignment matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterModel {
    logits: DMatrix<f64>,
}

impl ClusterModel {
    pub fn new(logits: DMatrix<f64>) -> Result<Self> {
        if logits.ncols() == 0 || logits.nrows() == 0 {
            return Err(validation("logits must be at least 1x1"));
        }
        if logits.ncols() > logits.nrows() {
            return Err(validation(format!(
                "k = {} exceeds node count {}",
                logits.ncols(),
                logits.nrows()
            )));
        }
        if logits.iter().any(|x| !x.is_finite()) {
            return Err(validation("logits must be finite"));
        }
        Ok(Self { logits })
    }

    /// Uniform logits in `(-half_width, half_width)`.
    pub fn random<R: Rng>(n: usize, k: usize, half_width: f64, rng: &mut R) -> Self {
        let logits = DMatrix::from_fn(n, k, |_, _| rng.gen_range(-half_width..half_width));
        Self { logits }
    }

    pub fn n(&self) -> usize {
        self.logits.nrows()
    }

    pub fn k(&self) -> usize {
        self.logits.ncols()
    }

    pub fn logits(&self) -> &DMatrix<f64> {
        &self.logits
    }

    /// Row-softmax of the logits: the noise-free soft assignment.
    pub fn probabilities(&self) -> DMatrix<f64> {
        softmax_rows(&self.logits)
    }
}

/// Numerically stable softmax applied to each row.
pub fn softmax_rows(x: &DMatrix<f64>) -> DMatrix<f64> {
    let mut out = x.clone();
    for mut row in out.row_iter_mut() {
        let max = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        row.iter_mut().for_each(|v| *v = (*v - max).exp());
        let sum: f64 = row.iter().sum();
        row.iter_mut().for_each(|v| *v /= sum);
    }
    out
}

fn check_tau(tau: f64) -> Result<()> {
    if tau.is_finite() && tau > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("temperature must be positive and finite, got {tau}")))
    }
}

/// Relaxed categorical sample per row: `softmax((logits + g) / τ)` with
/// Gumbel noise `g = −log(−log u)` built from the supplied uniforms.
pub fn gumbel_softmax_rows(logits: &DMatrix<f64>, tau: f64, noise: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    check_tau(tau)?;
    if noise.shape() != logits.shape() {
        return Err(validation(format!(
            "noise shape {:?} differs from logits shape {:?}",
            noise.shape(),
            logits.shape()
        )));
    }
    if noise.iter().any(|&u| !(u > 0.0 && u < 1.0)) {
        return Err(domain("uniform noise must lie strictly inside (0, 1)"));
    }
    let perturbed = logits.zip_map(noise, |l, u| (l - (-u.ln()).ln()) / tau);
    Ok(softmax_rows(&perturbed))
}

/// `R = Sᵀ A S`, the `k × k` cluster-strength matrix. Diagonal entries hold
/// intra-cluster weight, off-diagonals the weight between clusters.
pub fn cluster_strength(a: &DMatrix<f64>, s: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if !a.is_square() || a.nrows() != s.nrows() {
        return Err(validation(format!(
            "adjacency {:?} does not conform with assignment {:?}",
            a.shape(),
            s.shape()
        )));
    }
    Ok(s.transpose() * a * s)
}

/// Row-softmax `P` of `R` and the mean cross-entropy of its rows against the
/// identity, `−(1/k) Σ_a log P[a][a]`.
pub fn wgcgs_loss(r: &DMatrix<f64>) -> Result<(f64, DMatrix<f64>)> {
    if !r.is_square() {
        return Err(validation(format!(
            "strength matrix must be square, got {:?}",
            r.shape()
        )));
    }
    if r.iter().any(|x| !x.is_finite()) {
        return Err(domain("strength matrix has non-finite entries"));
    }
    let k = r.nrows();
    let mut loss = 0.0;
    for (a, row) in r.row_iter().enumerate() {
        // log-sum-exp per row keeps the diagonal log-probability exact when P saturates.
        let max = row.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lse = max + row.iter().map(|v| (v - max).exp()).sum::<f64>().ln();
        loss -= row[a] - lse;
    }
    // Rounding can leave a tiny negative value when every row saturates.
    let loss = (loss / k as f64).max(0.0);
    Ok((loss, softmax_rows(r)))
}

/// How raw cluster strengths are scaled before the row-softmax.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum StrengthScale {
    /// Use `R` as is.
    Raw,
    /// Divide `R` by its mean entry and multiply by `gain`. Because rows of
    /// `S` sum to one, `Σ R = Σ A`, so the mean entry is the constant
    /// `Σ A / k²` and the scale does not depend on `S`.
    MeanEntry { gain: f64 },
}

impl StrengthScale {
    fn factor(self, a: &DMatrix<f64>, k: usize) -> f64 {
        match self {
            StrengthScale::Raw => 1.0,
            StrengthScale::MeanEntry { gain } => {
                let total = a.sum();
                if total > 0.0 {
                    gain * (k * k) as f64 / total
                } else {
                    1.0
                }
            }
        }
    }
}

/// The loss as a function of logits for a fixed adjacency and scale.
#[derive(Debug, Clone)]
pub struct Objective {
    adjacency: DMatrix<f64>,
    scale: f64,
}

impl Objective {
    /// `scale` multiplies `R` before the softmax; `1.0` is the raw loss.
    pub fn new(adjacency: DMatrix<f64>, scale: f64) -> Result<Self> {
        if !adjacency.is_square() {
            return Err(validation("adjacency must be square"));
        }
        if !(scale.is_finite() && scale > 0.0) {
            return Err(domain(format!("strength scale must be positive, got {scale}")));
        }
        Ok(Self { adjacency, scale })
    }

    pub fn with_strength_scale(adjacency: DMatrix<f64>, k: usize, scale: StrengthScale) -> Result<Self> {
        let factor = scale.factor(&adjacency, k);
        Self::new(adjacency, factor)
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn adjacency(&self) -> &DMatrix<f64> {
        &self.adjacency
    }

    pub fn loss(&self, logits: &DMatrix<f64>, tau: f64, noise: &DMatrix<f64>) -> Result<f64> {
        let s = gumbel_softmax_rows(logits, tau, noise)?;
        let r = cluster_strength(&self.adjacency, &s)? * self.scale;
        Ok(wgcgs_loss(&r)?.0)
    }

    /// Loss of a hard assignment: `S` is the one-hot indicator matrix.
    pub fn hard_loss(&self, assignment: &Assignment) -> Result<f64> {
        let k = assignment.k();
        let s = DMatrix::from_fn(assignment.len(), k, |i, c| {
            if assignment.cluster_of()[i] == c {
                1.0
            } else {
                0.0
            }
        });
        let r = cluster_strength(&self.adjacency, &s)? * self.scale;
        Ok(wgcgs_loss(&r)?.0)
    }

    /// Loss and `∂loss/∂logits` via a reverse pass through
    /// `P ← R ← S ← logits`.
    pub fn gradient(&self, logits: &DMatrix<f64>, tau: f64, noise: &DMatrix<f64>) -> Result<(f64, DMatrix<f64>)> {
        let s = gumbel_softmax_rows(logits, tau, noise)?;
        let a_s = cluster_strength_parts(&self.adjacency, &s)?;
        let r = (s.transpose() * &a_s) * self.scale;
        let (loss, p) = wgcgs_loss(&r)?;
        let k = r.nrows();

        // ∂loss/∂R = (P − I) / k, the usual softmax cross-entropy adjoint.
        let mut d_r = p;
        for a in 0..k {
            d_r[(a, a)] -= 1.0;
        }
        d_r /= k as f64;

        // R = c·SᵀAS with A symmetric: ∂loss/∂S = c·A S (G + Gᵀ).
        let sym = &d_r + d_r.transpose();
        let d_s = (a_s * sym) * self.scale;

        // Row-softmax adjoint, then the 1/τ of the perturbed logits.
        let mut d_logits = DMatrix::zeros(s.nrows(), s.ncols());
        for i in 0..s.nrows() {
            let dot = s.row(i).dot(&d_s.row(i));
            for c in 0..s.ncols() {
                d_logits[(i, c)] = s[(i, c)] * (d_s[(i, c)] - dot) / tau;
            }
        }
        Ok((loss, d_logits))
    }
}

fn cluster_strength_parts(a: &DMatrix<f64>, s: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if !a.is_square() || a.nrows() != s.nrows() {
        return Err(validation(format!(
            "adjacency {:?} does not conform with assignment {:?}",
            a.shape(),
            s.shape()
        )));
    }
    Ok(a * s)
}

/// `∂loss/∂logits` of the unscaled loss for one draw of uniform noise.
pub fn backward(a: &DMatrix<f64>, logits: &DMatrix<f64>, tau: f64, noise: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    Ok(Objective::new(a.clone(), 1.0)?.gradient(logits, tau, noise)?.1)
}

/// Hard assignment: per row, the arg-max of the softmax (lowest index on ties).
pub fn assign(model: &ClusterModel) -> Assignment {
    let probs = model.probabilities();
    let cluster_of = probs
        .row_iter()
        .map(|row| {
            let mut best = 0;
            for c in 1..row.len() {
                if row[c] > row[best] {
                    best = c;
                }
            }
            best
        })
        .collect();
    Assignment::new(cluster_of, model.k()).expect("arg-max lies in 0..k and k <= n")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Anneal {
    Exponential,
    Linear,
    Constant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OptimizerKind {
    Sgd,
    Adam,
}

/// Training hyper-parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub epochs: usize,
    pub learning_rate: f64,
    pub tau_start: f64,
    pub tau_end: f64,
    pub anneal: Anneal,
    pub seed: u64,
    pub optimizer: OptimizerKind,
    pub restarts: usize,
    pub strength_scale: StrengthScale,
    /// Logits start uniform in `(-init_range, init_range)`.
    pub init_range: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            epochs: 300,
            learning_rate: 0.05,
            tau_start: 5.0,
            tau_end: 0.5,
            anneal: Anneal::Exponential,
            seed: 0,
            optimizer: OptimizerKind::Adam,
            restarts: 10,
            strength_scale: StrengthScale::MeanEntry { gain: 0.7 },
            init_range: 0.01,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.epochs == 0 {
            return Err(validation("epochs must be at least 1"));
        }
        if self.restarts == 0 {
            return Err(validation("restarts must be at least 1"));
        }
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return Err(validation("learning rate must be positive"));
        }
        if !(self.tau_end.is_finite() && self.tau_end > 0.0 && self.tau_end <= self.tau_start) {
            return Err(validation("temperatures must satisfy 0 < tau_end <= tau_start"));
        }
        if !(self.tau_start.is_finite()) {
            return Err(validation("tau_start must be finite"));
        }
        if !(self.init_range.is_finite() && self.init_range > 0.0) {
            return Err(validation("init_range must be positive"));
        }
        if let StrengthScale::MeanEntry { gain } = self.strength_scale {
            if !(gain.is_finite() && gain > 0.0) {
                return Err(validation("strength gain must be positive"));
            }
        }
        Ok(())
    }

    /// Temperature used at `epoch` (0-based).
    pub fn temperature(&self, epoch: usize) -> f64 {
        let t = if self.epochs > 1 {
            epoch as f64 / (self.epochs - 1) as f64
        } else {
            1.0
        };
        match self.anneal {
            Anneal::Constant => self.tau_start,
            Anneal::Linear => self.tau_start + t * (self.tau_end - self.tau_start),
            Anneal::Exponential => self.tau_start * (self.tau_end / self.tau_start).powf(t),
        }
    }
}

enum Optimizer {
    Sgd {
        lr: f64,
    },
    Adam {
        lr: f64,
        m: DMatrix<f64>,
        v: DMatrix<f64>,
        t: i32,
    },
}

impl Optimizer {
    const BETA1: f64 = 0.9;
    const BETA2: f64 = 0.999;
    const EPS: f64 = 1e-8;

    fn new(kind: OptimizerKind, lr: f64, n: usize, k: usize) -> Self {
        match kind {
            OptimizerKind::Sgd => Optimizer::Sgd { lr },
            OptimizerKind::Adam => Optimizer::Adam {
                lr,
                m: DMatrix::zeros(n, k),
                v: DMatrix::zeros(n, k),
                t: 0,
            },
        }
    }

    fn step(&mut self, params: &mut DMatrix<f64>, grad: &DMatrix<f64>) {
        match self {
            Optimizer::Sgd { lr } => *params -= grad * *lr,
            Optimizer::Adam { lr, m, v, t } => {
                *t += 1;
                let c1 = 1.0 - Self::BETA1.powi(*t);
                let c2 = 1.0 - Self::BETA2.powi(*t);
                for ((p, g), (mi, vi)) in params.iter_mut().zip(grad.iter()).zip(m.iter_mut().zip(v.iter_mut())) {
                    *mi = Self::BETA1 * *mi + (1.0 - Self::BETA1) * g;
                    *vi = Self::BETA2 * *vi + (1.0 - Self::BETA2) * g * g;
                    *p -= *lr * (*mi / c1) / ((*vi / c2).sqrt() + Self::EPS);
                }
            }
        }
    }
}

/// Outcome of one training run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RestartOutcome {
    pub restart: usize,
    pub final_loss: f64,
    pub loss_history: Vec<f64>,
    pub model: ClusterModel,
}

/// Best restart plus an audit trail of every restart's final loss.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainReport {
    pub final_loss: f64,
    pub loss_history: Vec<f64>,
    pub best_restart: usize,
    pub model: ClusterModel,
    pub restart_final_losses: Vec<f64>,
}

impl TrainReport {
    pub fn assignment(&self) -> Assignment {
        assign(&self.model)
    }
}

/// Uniforms in the open interval (0, 1).
fn uniform_noise<R: Rng>(n: usize, k: usize, rng: &mut R) -> DMatrix<f64> {
    DMatrix::from_fn(n, k, |_, _| loop {
        let u: f64 = rng.gen();
        if u > 0.0 {
            break u;
        }
    })
}

/// Random generator owned by one restart: the master seed picks the key,
/// the restart index picks the ChaCha stream.
pub fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

/// One seeded run from random initialization.
pub fn train_once(objective: &Objective, k: usize, config: &TrainConfig, restart: usize) -> Result<RestartOutcome> {
    let n = objective.adjacency().nrows();
    let mut rng = restart_rng(config.seed, restart);
    let mut model = ClusterModel::random(n, k, config.init_range, &mut rng);
    let mut optimizer = Optimizer::new(config.optimizer, config.learning_rate, n, k);
    let mut history = Vec::with_capacity(config.epochs);
    for epoch in 0..config.epochs {
        let tau = config.temperature(epoch);
        let noise = uniform_noise(n, k, &mut rng);
        let (loss, grad) = objective.gradient(&model.logits, tau, &noise)?;
        history.push(loss);
        optimizer.step(&mut model.logits, &grad);
    }
    if model.logits.iter().any(|x| !x.is_finite()) {
        return Err(domain("training diverged to non-finite logits"));
    }
    Ok(RestartOutcome {
        restart,
        final_loss: *history.last().expect("epochs >= 1"),
        loss_history: history,
        model,
    })
}

/// Trains `config.restarts` independent runs and keeps the one with the
/// lowest final loss (earliest restart on ties). Restarts run in parallel;
/// the result does not depend on scheduling.
pub fn train(graph: &WeightedGraph, k: usize, config: &TrainConfig) -> Result<TrainReport> {
    config.validate()?;
    if k == 0 || k > graph.n_nodes() {
        return Err(validation(format!("k = {k} must lie in 1..={}", graph.n_nodes())));
    }
    let objective = Objective::with_strength_scale(adjacency(graph), k, config.strength_scale)?;
    let outcomes: Vec<RestartOutcome> = (0..config.restarts)
        .into_par_iter()
        .map(|r| train_once(&objective, k, config, r))
        .collect::<Result<_>>()?;
    let restart_final_losses = outcomes.iter().map(|o| o.final_loss).collect();
    let best = outcomes
        .into_iter()
        .reduce(|best, o| if o.final_loss < best.final_loss { o } else { best })
        .expect("restarts >= 1");
    Ok(TrainReport {
        final_loss: best.final_loss,
        loss_history: best.loss_history,
        best_restart: best.restart,
        model: best.model,
        restart_final_losses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn m(rows: usize, cols: usize, data: &[f64]) -> DMatrix<f64> {
        DMatrix::from_row_slice(rows, cols, data)
    }

    #[test]
    fn equal_noise_cancels() {
        let s = gumbel_softmax_rows(&m(1, 2, &[0.0, 0.0]), 1.0, &m(1, 2, &[0.5, 0.5])).unwrap();
        assert_relative_eq!(s[(0, 0)], 0.5);
        assert_relative_eq!(s[(0, 1)], 0.5);
    }

    #[test]
    fn low_temperature_saturates() {
        // (10 - 0) / 0.1 = 100 → second entry ≈ e^-100
        let s = gumbel_softmax_rows(&m(1, 2, &[10.0, 0.0]), 0.1, &m(1, 2, &[0.5, 0.5])).unwrap();
        assert!(s[(0, 0)] > 0.999);
    }

    #[test]
    fn gumbel_domain_errors() {
        let l = m(1, 2, &[0.0, 0.0]);
        let u = m(1, 2, &[0.5, 0.5]);
        assert!(matches!(gumbel_softmax_rows(&l, 0.0, &u), Err(crate::Error::Domain(_))));
        assert!(matches!(
            gumbel_softmax_rows(&l, -1.0, &u),
            Err(crate::Error::Domain(_))
        ));
        for bad in [0.0, 1.0, 1.5, f64::NAN] {
            let u = m(1, 2, &[0.5, bad]);
            assert!(matches!(gumbel_softmax_rows(&l, 1.0, &u), Err(crate::Error::Domain(_))));
        }
        assert!(gumbel_softmax_rows(&l, 1.0, &m(2, 1, &[0.5, 0.5])).is_err());
    }

    #[test]
    fn strength_examples() {
        let a = m(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        assert_eq!(cluster_strength(&a, &DMatrix::identity(2, 2)).unwrap(), a);

        let a = m(4, 4, &[0., 1., 0., 0., 1., 0., 0., 0., 0., 0., 0., 1., 0., 0., 1., 0.]);
        let s = m(4, 2, &[1., 0., 1., 0., 0., 1., 0., 1.]);
        assert_eq!(cluster_strength(&a, &s).unwrap(), m(2, 2, &[2., 0., 0., 2.]));
        assert!(cluster_strength(&a, &m(3, 2, &[0.0; 6])).is_err());
    }

    #[test]
    fn loss_examples() {
        let (loss, p) = wgcgs_loss(&DMatrix::zeros(2, 2)).unwrap();
        assert_relative_eq!(loss, std::f64::consts::LN_2, epsilon = 1e-15);
        assert!(p.iter().all(|&x| (x - 0.5).abs() < 1e-15));

        // −log(e²/(e²+1)) = log(1 + e⁻²)
        let (loss, _) = wgcgs_loss(&m(2, 2, &[2., 0., 0., 2.])).unwrap();
        assert_relative_eq!(loss, 0.126_928_011_042_972_6, epsilon = 1e-12);

        let (loss, _) = wgcgs_loss(&m(2, 2, &[800., 0., 0., 800.])).unwrap();
        assert!(loss < 1e-12);

        assert!(matches!(
            wgcgs_loss(&m(1, 1, &[f64::NAN])),
            Err(crate::Error::Domain(_))
        ));
    }

    #[test]
    fn single_cluster_has_no_gradient() {
        let a = m(3, 3, &[0., 2., 1., 2., 0., 3., 1., 3., 0.]);
        let g = backward(&a, &m(3, 1, &[0.3, -1.0, 2.0]), 0.7, &m(3, 1, &[0.2, 0.5, 0.9])).unwrap();
        assert!(g.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn symmetric_inputs_give_permuted_gradient_columns() {
        // A triangle, equal logits and equal noise: swapping the two clusters
        // maps the problem onto itself.
        let a = m(3, 3, &[0., 1., 1., 1., 0., 1., 1., 1., 0.]);
        let g = backward(&a, &DMatrix::zeros(3, 2), 1.0, &DMatrix::from_element(3, 2, 0.3)).unwrap();
        for i in 0..3 {
            assert_relative_eq!(g[(i, 0)], g[(i, 1)], epsilon = 1e-15);
        }
    }

    #[test]
    fn assign_examples_and_tie_break() {
        let logits = m(
            3,
            2,
            &[0.65f64.ln(), 0.35f64.ln(), 0.39f64.ln(), 0.61f64.ln(), 0.0, 0.0],
        );
        let a = assign(&ClusterModel::new(logits).unwrap());
        assert_eq!(a.cluster_of(), &[0, 1, 0]);
    }

    #[test]
    fn schedules() {
        let mut c = TrainConfig {
            epochs: 3,
            tau_start: 4.0,
            tau_end: 1.0,
            ..TrainConfig::default()
        };
        assert_relative_eq!(c.temperature(0), 4.0);
        assert_relative_eq!(c.temperature(1), 2.0);
        assert_relative_eq!(c.temperature(2), 1.0);
        c.anneal = Anneal::Linear;
        assert_relative_eq!(c.temperature(1), 2.5);
        c.anneal = Anneal::Constant;
        assert_relative_eq!(c.temperature(2), 4.0);
    }

    #[test]
    fn config_validation() {
        let ok = TrainConfig::default();
        assert!(ok.validate().is_ok());
        for bad in [
            TrainConfig {
                epochs: 0,
                ..ok.clone()
            },
            TrainConfig {
                restarts: 0,
                ..ok.clone()
            },
            TrainConfig {
                learning_rate: 0.0,
                ..ok.clone()
            },
            TrainConfig {
                tau_end: 6.0,
                ..ok.clone()
            },
            TrainConfig {
                tau_end: 0.0,
                ..ok.clone()
            },
        ] {
            assert!(bad.validate().is_err(), "{bad:?}");
        }
    }
}
