use statrs::function::factorial::ln_binomial;

use super::{TestMethod, TestResult};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    /// `P(X >= k)`
    Greater,
    /// `P(X <= k)`
    Less,
    /// Sum of all outcomes no more likely than `k`.
    TwoSided,
}

fn ln_pmf(i: u64, n: u64, p: f64) -> f64 {
    ln_binomial(n, i) + i as f64 * p.ln() + (n - i) as f64 * (1.0 - p).ln()
}

/// Exact binomial test of `k` successes in `n` trials against rate `p0`.
pub fn binomial_test(k: u64, n: u64, p0: f64, tail: Tail) -> Result<TestResult> {
    if k > n {
        return Err(Error::InvalidInput(format!("k = {k} exceeds n = {n}")));
    }
    if !(p0 > 0.0 && p0 < 1.0) {
        return Err(Error::InvalidInput(format!("p0 = {p0} must lie in (0, 1)")));
    }
    let pmf = |i: u64| ln_pmf(i, n, p0).exp();
    let p = match tail {
        Tail::Greater => (k..=n).map(pmf).sum::<f64>(),
        Tail::Less => (0..=k).map(pmf).sum::<f64>(),
        Tail::TwoSided => {
            let threshold = ln_pmf(k, n, p0) + 1e-7f64.ln_1p();
            (0..=n)
                .filter(|&i| ln_pmf(i, n, p0) <= threshold)
                .map(pmf)
                .sum::<f64>()
        }
    };
    Ok(TestResult {
        statistic: k as f64,
        p_value: p.clamp(0.0, 1.0),
        method: TestMethod::Exact,
    })
}
