use statrs::function::erf::erfc;

use super::{TestMethod, TestResult};
use crate::{Error, Result};

/// Largest combined sample size for the exact null distribution.
pub const EXACT_MAX_N: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MwuMode {
    /// Exact permutation distribution. Requires no ties and `n1 + n2 <= 20`.
    Exact,
    /// Normal approximation with tie and continuity corrections.
    NormalApprox,
    /// Exact when allowed, otherwise the normal approximation.
    Auto,
}

/// 1-based ranks with ties sharing their mean rank, plus the tie term
/// `sum(t^3 - t)` over tie groups.
pub fn midranks(values: &[f64]) -> (Vec<f64>, f64) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut ties = 0.0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + 1 + j) as f64 / 2.0;
        for &k in &order[i..j] {
            ranks[k] = rank;
        }
        let t = (j - i) as f64;
        ties += t * t * t - t;
        i = j;
    }
    (ranks, ties)
}

/// Two-sided Mann-Whitney U test. The statistic is U for `xs`: the number of
/// `(x, y)` pairs with `x > y`, ties counting one half.
pub fn mann_whitney_u(xs: &[f64], ys: &[f64], mode: MwuMode) -> Result<TestResult> {
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::InvalidInput(
            "Mann-Whitney U needs two nonempty samples".into(),
        ));
    }
    if xs.iter().chain(ys).any(|v| v.is_nan()) {
        return Err(Error::InvalidInput("Mann-Whitney U sample contains NaN".into()));
    }
    let (n1, n2) = (xs.len(), ys.len());
    let pooled: Vec<f64> = xs.iter().chain(ys).copied().collect();
    let (ranks, ties) = midranks(&pooled);
    let rank_sum: f64 = ranks[..n1].iter().sum();
    let u = rank_sum - (n1 * (n1 + 1)) as f64 / 2.0;

    let exact_ok = n1 + n2 <= EXACT_MAX_N && ties == 0.0;
    let use_exact = match mode {
        MwuMode::Exact if !exact_ok => {
            return Err(Error::InvalidInput(format!(
                "exact Mann-Whitney needs tie-free samples with n1 + n2 <= {EXACT_MAX_N}"
            )))
        }
        MwuMode::Exact => true,
        MwuMode::NormalApprox => false,
        MwuMode::Auto => exact_ok,
    };

    if use_exact {
        let p = exact_p(n1, n2, u.round() as usize);
        return Ok(TestResult {
            statistic: u,
            p_value: p,
            method: TestMethod::Exact,
        });
    }

    let (a, b) = (n1 as f64, n2 as f64);
    let n = a + b;
    let mean = a * b / 2.0;
    let var = a * b / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
    let p = if var <= 0.0 {
        1.0
    } else {
        let z = ((u - mean).abs() - 0.5).max(0.0) / var.sqrt();
        erfc(z / std::f64::consts::SQRT_2).min(1.0)
    };
    Ok(TestResult {
        statistic: u,
        p_value: p,
        method: TestMethod::NormalApprox,
    })
}

/// Number of rank arrangements giving each U value, for sample sizes
/// `n1`, `n2`.
fn u_distribution(n1: usize, n2: usize) -> Vec<u64> {
    let max_u = n1 * n2;
    // table[i][j][u]: arrangements of i x-values and j y-values with statistic u
    let mut table = vec![vec![Vec::<u64>::new(); n2 + 1]; n1 + 1];
    for i in 0..=n1 {
        for j in 0..=n2 {
            let mut row = vec![0u64; i * j + 1];
            if i == 0 || j == 0 {
                row[0] = 1;
            } else {
                // largest pooled value is an x (beats all j ys) or a y
                for (u, slot) in row.iter_mut().enumerate() {
                    let from_x = if u >= j {
                        table[i - 1][j].get(u - j).copied().unwrap_or(0)
                    } else {
                        0
                    };
                    let from_y = table[i][j - 1].get(u).copied().unwrap_or(0);
                    *slot = from_x + from_y;
                }
            }
            table[i][j] = row;
        }
    }
    let dist = std::mem::take(&mut table[n1][n2]);
    debug_assert_eq!(dist.len(), max_u + 1);
    dist
}

fn exact_p(n1: usize, n2: usize, u: usize) -> f64 {
    let dist = u_distribution(n1, n2);
    let total: u64 = dist.iter().sum();
    let le: u64 = dist[..=u].iter().sum();
    let ge: u64 = dist[u..].iter().sum();
    ((2 * le.min(ge)) as f64 / total as f64).min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn separated_samples_exact() {
        let r = mann_whitney_u(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0], MwuMode::Exact).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.p_value, 0.1);
        assert_eq!(r.method, TestMethod::Exact);
        let r = mann_whitney_u(&[4.0, 5.0, 6.0], &[1.0, 2.0, 3.0], MwuMode::Exact).unwrap();
        assert_eq!(r.statistic, 9.0);
        assert_eq!(r.p_value, 0.1);
    }

    #[test]
    fn same_multiset_is_centered() {
        let xs = [0.1, 0.5, 0.5, 0.9, 1.3];
        let r = mann_whitney_u(&xs, &xs, MwuMode::NormalApprox).unwrap();
        assert_eq!(r.statistic, 12.5);
        assert_eq!(r.p_value, 1.0);
        assert_eq!(mann_whitney_u(&xs, &xs, MwuMode::Auto).unwrap().method, TestMethod::NormalApprox);
    }

    #[test]
    fn input_errors() {
        assert!(mann_whitney_u(&[], &[1.0], MwuMode::Auto).is_err());
        assert!(mann_whitney_u(&[1.0], &[], MwuMode::Auto).is_err());
        assert!(mann_whitney_u(&[1.0, 2.0], &[2.0], MwuMode::Exact).is_err());
        let big: Vec<f64> = (0..21).map(f64::from).collect();
        assert!(mann_whitney_u(&big[..11], &big[11..], MwuMode::Exact).is_err());
        assert!(mann_whitney_u(&[f64::NAN], &[1.0], MwuMode::Auto).is_err());
    }

    #[test]
    fn all_tied_normal_gives_one() {
        let r = mann_whitney_u(&[2.0; 4], &[2.0; 6], MwuMode::NormalApprox).unwrap();
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn distribution_sums_to_binomial() {
        for n1 in 1..=8 {
            for n2 in 1..=8 {
                let d = u_distribution(n1, n2);
                let total: u64 = d.iter().sum();
                let mut c = 1u64;
                for k in 0..n1 as u64 {
                    c = c * (n1 + n2) as u64 - c * k;
                    c /= k + 1;
                }
                assert_eq!(total, c, "{n1} {n2}");
                assert!(d.iter().eq(d.iter().rev()), "symmetric");
            }
        }
    }

    #[test]
    fn planted_shift_is_detected() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let xs: Vec<f64> = (0..40).map(|_| rng.random::<f64>() + 0.8).collect();
        let ys: Vec<f64> = (0..40).map(|_| rng.random::<f64>()).collect();
        let r = mann_whitney_u(&xs, &ys, MwuMode::NormalApprox).unwrap();

        // Monte-Carlo permutation reference
        let observed = (r.statistic - 800.0).abs();
        let mut pooled: Vec<f64> = xs.iter().chain(&ys).copied().collect();
        let mut extreme = 0usize;
        let shuffles = 100_000;
        for _ in 0..shuffles {
            for i in (1..pooled.len()).rev() {
                let j = rng.random_range(0..=i);
                pooled.swap(i, j);
            }
            let u: f64 = pooled[..40]
                .iter()
                .map(|x| pooled[40..].iter().map(|y| f64::from(u8::from(x > y))).sum::<f64>())
                .sum();
            if (u - 800.0).abs() >= observed {
                extreme += 1;
            }
        }
        let mc_p = (extreme + 1) as f64 / (shuffles + 1) as f64;
        assert!(mc_p < 0.01, "{mc_p}");
        assert!(r.p_value < 0.01, "{}", r.p_value);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn distinct_samples(min_each: usize, max_total: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
            (min_each..=max_total - min_each)
                .prop_flat_map(move |n1| (Just(n1), min_each..=(max_total - n1)))
                .prop_flat_map(|(n1, n2)| {
                    (Just(n1), Just(Vec::from_iter(0..(n1 + n2))).prop_shuffle())
                })
                .prop_map(|(n1, perm)| {
                    let vals: Vec<f64> = perm.iter().map(|&v| v as f64 * 0.37 - 2.0).collect();
                    (vals[..n1].to_vec(), vals[n1..].to_vec())
                })
        }

        proptest! {
            #[test]
            fn normal_tracks_exact_for_balanced_samples((xs, ys) in distinct_samples(5, 20)) {
                let exact = mann_whitney_u(&xs, &ys, MwuMode::Exact).unwrap();
                let approx = mann_whitney_u(&xs, &ys, MwuMode::NormalApprox).unwrap();
                prop_assert_eq!(exact.statistic, approx.statistic);
                prop_assert!((exact.p_value - approx.p_value).abs() <= 0.02,
                    "n1={} n2={} exact={} approx={}", xs.len(), ys.len(), exact.p_value, approx.p_value);
            }

            #[test]
            fn statistic_counts_pairs(xs in proptest::collection::vec(0u8..6, 1..15), ys in proptest::collection::vec(0u8..6, 1..15)) {
                let xs: Vec<f64> = xs.into_iter().map(f64::from).collect();
                let ys: Vec<f64> = ys.into_iter().map(f64::from).collect();
                let r = mann_whitney_u(&xs, &ys, MwuMode::Auto).unwrap();
                let pairs: f64 = xs.iter().map(|x| ys.iter().map(|y| if x > y { 1.0 } else if x == y { 0.5 } else { 0.0 }).sum::<f64>()).sum();
                prop_assert_eq!(r.statistic, pairs);
                prop_assert!((0.0..=1.0).contains(&r.p_value));
            }
        }
    }
}
