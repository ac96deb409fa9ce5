//! L2-regularised logistic regression over sparse feature vectors.
//!
//! The objective is the mean logistic loss plus `(l2 / 2)·‖w‖²`; the bias is
//! not penalised. Training is deterministic full-batch gradient descent with
//! Armijo backtracking.

mod cv;
mod file;

use std::cmp::Ordering;

use crate::features::{FeatureSpace, FeatureVector, Featurizer};
use crate::lexicon::Lexicon;
use crate::{Error, Result};

pub use cv::{
    cross_validate, cross_validate_detailed, cross_validate_with_folds, stratified_folds, CvRun, EvalReport, FoldResult,
};
pub use file::{load_model, read_model, save_model, write_model, FORMAT_VERSION, L2_CONVENTION};

pub const DEFAULT_L2: f64 = 1.5;
pub const DEFAULT_FOLDS: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainConfig {
    pub l2_strength: f64,
    pub max_iters: usize,
    /// Stop once the gradient norm falls below this.
    pub tolerance: f64,
    pub min_df: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            l2_strength: DEFAULT_L2,
            max_iters: 2000,
            tolerance: 1e-6,
            min_df: crate::features::DEFAULT_MIN_DF,
        }
    }
}

pub(crate) fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// `ln(1 + e^z)` without overflow.
fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

/// Regularised mean logistic loss over a fixed data set.
///
/// Parameter vectors are the weights followed by the bias.
#[derive(Debug, Clone)]
pub struct LogisticObjective<'a> {
    features: Vec<&'a FeatureVector>,
    labels: Vec<bool>,
    dimension: usize,
    l2: f64,
}

impl<'a> LogisticObjective<'a> {
    pub fn new(features: &'a [FeatureVector], labels: &[bool], l2_strength: f64) -> Result<Self> {
        if features.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: features.len(),
                found: labels.len(),
            });
        }
        if features.is_empty() {
            return Err(Error::InvalidInput("no training examples".into()));
        }
        if !(l2_strength >= 0.0 && l2_strength.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "l2 strength must be a finite nonnegative number, got {l2_strength}"
            )));
        }
        let dimension = features[0].dimension();
        if let Some(f) = features.iter().find(|f| f.dimension() != dimension) {
            return Err(Error::DimensionMismatch {
                expected: dimension,
                found: f.dimension(),
            });
        }
        // Canonical example order makes every floating-point sum independent
        // of the caller's ordering.
        let mut order: Vec<usize> = (0..features.len()).collect();
        order.sort_by(|&a, &b| compare_examples(&features[a], labels[a], &features[b], labels[b]));
        Ok(LogisticObjective {
            features: order.iter().map(|&i| &features[i]).collect(),
            labels: order.iter().map(|&i| labels[i]).collect(),
            dimension,
            l2: l2_strength,
        })
    }

    /// Number of parameters: feature dimension plus one for the bias.
    pub fn n_params(&self) -> usize {
        self.dimension + 1
    }

    fn margins(&self, params: &[f64]) -> Vec<f64> {
        let (w, b) = params.split_at(self.dimension);
        self.features.iter().map(|x| x.dot(w) + b[0]).collect()
    }

    pub fn loss(&self, params: &[f64]) -> f64 {
        self.loss_from_margins(params, &self.margins(params))
    }

    fn loss_from_margins(&self, params: &[f64], margins: &[f64]) -> f64 {
        let data: f64 = margins
            .iter()
            .zip(&self.labels)
            .map(|(&z, &y)| if y { softplus(-z) } else { softplus(z) })
            .sum();
        let w = &params[..self.dimension];
        data / self.labels.len() as f64 + 0.5 * self.l2 * w.iter().map(|v| v * v).sum::<f64>()
    }

    pub fn gradient(&self, params: &[f64]) -> Vec<f64> {
        self.gradient_from_margins(params, &self.margins(params))
    }

    fn gradient_from_margins(&self, params: &[f64], margins: &[f64]) -> Vec<f64> {
        let n = self.labels.len() as f64;
        let mut g = vec![0.0; self.n_params()];
        for ((x, &z), &y) in self.features.iter().zip(margins).zip(&self.labels) {
            let r = sigmoid(z) - if y { 1.0 } else { 0.0 };
            for (i, v) in x.iter() {
                g[i] += r * v;
            }
            g[self.dimension] += r;
        }
        for (gi, wi) in g.iter_mut().zip(params).take(self.dimension) {
            *gi = *gi / n + self.l2 * wi;
        }
        g[self.dimension] /= n;
        g
    }

    pub fn loss_and_gradient(&self, params: &[f64]) -> (f64, Vec<f64>) {
        let m = self.margins(params);
        (self.loss_from_margins(params, &m), self.gradient_from_margins(params, &m))
    }
}

fn compare_examples(a: &FeatureVector, ya: bool, b: &FeatureVector, yb: bool) -> Ordering {
    ya.cmp(&yb)
        .then_with(|| a.indices().cmp(b.indices()))
        .then_with(|| {
            let bits = |v: &FeatureVector| v.values().iter().map(|x| x.to_bits()).collect::<Vec<_>>();
            bits(a).cmp(&bits(b))
        })
}

/// Fitted weights and bias.
#[derive(Debug, Clone, PartialEq)]
pub struct LogisticRegression {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub l2_strength: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl LogisticRegression {
    pub fn dimension(&self) -> usize {
        self.weights.len()
    }

    pub fn decision(&self, x: &FeatureVector) -> Result<f64> {
        if x.dimension() != self.weights.len() {
            return Err(Error::DimensionMismatch {
                expected: self.weights.len(),
                found: x.dimension(),
            });
        }
        Ok(x.dot(&self.weights) + self.bias)
    }

    /// `sigmoid(w·x + b)`.
    pub fn predict_proba(&self, x: &FeatureVector) -> Result<f64> {
        self.decision(x).map(sigmoid)
    }
}

/// Trains a logistic regression by full-batch gradient descent.
pub fn train(
    features: &[FeatureVector],
    labels: &[bool],
    l2_strength: f64,
    max_iters: usize,
    tolerance: f64,
) -> Result<LogisticRegression> {
    train_traced(features, labels, l2_strength, max_iters, tolerance).map(|(m, _)| m)
}

/// [`train`], also returning the loss after every accepted step (the first
/// entry is the loss at zero).
pub fn train_traced(
    features: &[FeatureVector],
    labels: &[bool],
    l2_strength: f64,
    max_iters: usize,
    tolerance: f64,
) -> Result<(LogisticRegression, Vec<f64>)> {
    let positives = labels.iter().filter(|&&y| y).count();
    if positives == 0 || positives == labels.len() {
        return Err(Error::InvalidInput(
            "training data must contain both classes".into(),
        ));
    }
    let objective = LogisticObjective::new(features, labels, l2_strength)?;
    let mut params = vec![0.0; objective.n_params()];
    let (mut loss, mut grad) = objective.loss_and_gradient(&params);
    let mut trace = vec![loss];
    let mut step = 1.0;
    let mut iterations = 0;
    let mut converged = false;
    let mut candidate = vec![0.0; params.len()];

    while iterations < max_iters {
        let gnorm2: f64 = grad.iter().map(|g| g * g).sum();
        if gnorm2.sqrt() < tolerance {
            converged = true;
            break;
        }
        let mut accepted = false;
        for _ in 0..60 {
            for ((c, p), g) in candidate.iter_mut().zip(&params).zip(&grad) {
                *c = p - step * g;
            }
            let trial = objective.loss(&candidate);
            if !trial.is_finite() {
                step *= 0.5;
                continue;
            }
            if trial <= loss - 1e-4 * step * gnorm2 {
                accepted = true;
                params.copy_from_slice(&candidate);
                let (l, g) = objective.loss_and_gradient(&params);
                loss = l;
                grad = g;
                break;
            }
            step *= 0.5;
        }
        if !loss.is_finite() {
            return Err(Error::Diverged(format!("loss became {loss}")));
        }
        if !accepted {
            // No decrease is representable at this precision.
            converged = true;
            break;
        }
        trace.push(loss);
        iterations += 1;
        step *= 2.0;
    }
    if params.iter().any(|p| !p.is_finite()) {
        return Err(Error::Diverged("non-finite parameters".into()));
    }
    let bias = params.pop().expect("bias parameter");
    let model = LogisticRegression {
        weights: params,
        bias,
        l2_strength,
        iterations,
        converged,
    };
    Ok((model, trace))
}

/// A trained classifier together with the feature space it was trained in.
#[derive(Debug, Clone, PartialEq)]
pub struct LogisticModel {
    pub regression: LogisticRegression,
    pub space: FeatureSpace,
}

impl LogisticModel {
    /// Fits the feature space and the classifier on labelled documents.
    pub fn fit<S: AsRef<str>>(
        docs: &[S],
        labels: &[bool],
        family: crate::features::FeatureFamily,
        config: &TrainConfig,
        lexicon: Option<&Lexicon>,
    ) -> Result<Self> {
        if docs.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: docs.len(),
                found: labels.len(),
            });
        }
        let space = FeatureSpace::fit(family, docs, config.min_df)?;
        let featurizer = space.featurizer(lexicon)?;
        let features: Vec<FeatureVector> = docs.iter().map(|d| featurizer.featurize(d.as_ref())).collect();
        let regression = train(
            &features,
            labels,
            config.l2_strength,
            config.max_iters,
            config.tolerance,
        )?;
        Ok(LogisticModel { regression, space })
    }

    pub fn featurizer<'a>(&'a self, lexicon: Option<&'a Lexicon>) -> Result<Featurizer<'a>> {
        self.space.featurizer(lexicon)
    }

    pub fn predict_proba(&self, x: &FeatureVector) -> Result<f64> {
        self.regression.predict_proba(x)
    }
}
