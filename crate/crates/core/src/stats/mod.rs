//! Statistical primitives used across the pipeline.
//!
//! Every function here is pure and allocation-light; none of them keep state
//! between calls.

mod agreement;
mod association;
mod auc;
mod binomial;
mod mann_whitney;
mod ols;

pub use agreement::{krippendorff_alpha, DistanceMetric, RatingsMatrix};
pub(crate) use association::pair_key;
pub use association::{holm_correct, odds_ratio, pmi, PairKey};
pub use auc::auc;
pub use binomial::{binomial_test, Tail};
pub use mann_whitney::{mann_whitney_u, midranks, MwuMode};
pub use ols::{ols_fit, OlsFit};

/// How a p-value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestMethod {
    Exact,
    NormalApprox,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestResult {
    pub statistic: f64,
    pub p_value: f64,
    pub method: TestMethod,
}

/// Mean and population standard deviation.
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}
