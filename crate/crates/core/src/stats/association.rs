use std::collections::{BTreeMap, HashMap};

use crate::{Error, Result};

/// Holm step-down adjustment, returned in input order.
pub fn holm_correct(p_values: &[f64]) -> Result<Vec<f64>> {
    if let Some(p) = p_values.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::InvalidInput(format!("p-value {p} outside [0, 1]")));
    }
    let m = p_values.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| p_values[a].total_cmp(&p_values[b]));
    let mut adjusted = vec![0.0; m];
    let mut running = 0.0f64;
    for (rank, &i) in order.iter().enumerate() {
        let scaled = ((m - rank) as f64 * p_values[i]).min(1.0);
        running = running.max(scaled);
        adjusted[i] = running;
    }
    Ok(adjusted)
}

/// Odds ratio `(a/b) / (c/d)` of a 2×2 table. When any cell is zero, 0.5 is
/// added to every cell (Haldane–Anscombe).
pub fn odds_ratio(a: u64, b: u64, c: u64, d: u64) -> f64 {
    let (a, b, c, d) = if a == 0 || b == 0 || c == 0 || d == 0 {
        (a as f64 + 0.5, b as f64 + 0.5, c as f64 + 0.5, d as f64 + 0.5)
    } else {
        (a as f64, b as f64, c as f64, d as f64)
    };
    (a * d) / (b * c)
}

/// Unordered pair of names, stored with the smaller name first.
pub type PairKey = (String, String);

pub(crate) fn pair_key(a: &str, b: &str) -> PairKey {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// Pointwise mutual information of unordered pairs.
///
/// `p(x, y)` is the pair's share of all pair counts and `p(x)` the share of
/// pairs containing `x`. Keys in either orientation are merged; zero counts
/// are dropped. The result uses canonical keys (smaller name first).
pub fn pmi(pair_counts: &BTreeMap<PairKey, u64>) -> Result<BTreeMap<PairKey, f64>> {
    let mut merged: BTreeMap<PairKey, u64> = BTreeMap::new();
    for ((x, y), &count) in pair_counts {
        if x == y {
            return Err(Error::InvalidInput(format!("self-pair ({x}, {x}) in pair counts")));
        }
        if count > 0 {
            *merged.entry(pair_key(x, y)).or_default() += count;
        }
    }
    let total: u64 = merged.values().sum();
    if total == 0 {
        return Err(Error::InvalidInput("pair counts sum to zero".into()));
    }
    let mut marginal: HashMap<&str, u64> = HashMap::new();
    for ((x, y), &count) in &merged {
        *marginal.entry(x).or_default() += count;
        *marginal.entry(y).or_default() += count;
    }
    let total = total as f64;
    Ok(merged
        .iter()
        .map(|(key, &count)| {
            let mx = marginal[key.0.as_str()] as f64;
            let my = marginal[key.1.as_str()] as f64;
            (key.clone(), (count as f64 * total / (mx * my)).ln())
        })
        .collect())
}
