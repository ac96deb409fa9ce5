use crate::{Error, Result};

/// Rank-based ROC AUC: the share of (positive, negative) pairs where the
/// positive scores higher, ties counting one half.
///
/// Computed with a single sweep over the sorted scores, accumulating the
/// negatives seen below each tie group.
pub fn auc(scores: &[f64], labels: &[bool]) -> Result<f64> {
    if scores.len() != labels.len() {
        return Err(Error::DimensionMismatch {
            expected: scores.len(),
            found: labels.len(),
        });
    }
    if scores.iter().any(|s| s.is_nan()) {
        return Err(Error::InvalidInput("AUC scores contain NaN".into()));
    }
    let n_pos = labels.iter().filter(|&&l| l).count();
    let n_neg = labels.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(Error::InvalidInput(
            "AUC needs at least one positive and one negative example".into(),
        ));
    }

    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));
    let mut neg_below = 0u64;
    let mut twice_wins = 0u64;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        let (mut pos, mut neg) = (0u64, 0u64);
        while j < order.len() && scores[order[j]] == scores[order[i]] {
            if labels[order[j]] {
                pos += 1;
            } else {
                neg += 1;
            }
            j += 1;
        }
        twice_wins += 2 * pos * neg_below + pos * neg;
        neg_below += neg;
        i = j;
    }
    Ok(twice_wins as f64 / (2.0 * n_pos as f64 * n_neg as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::{mann_whitney_u, MwuMode};

    #[test]
    fn fixtures() {
        let perfect = auc(&[0.9, 0.8, 0.1, 0.2], &[true, true, false, false]).unwrap();
        assert_eq!(perfect, 1.0);
        let mixed = auc(&[0.9, 0.8, 0.3, 0.2], &[true, false, true, false]).unwrap();
        assert_eq!(mixed, 0.75);
        assert_eq!(auc(&[0.4; 6], &[true, false, true, false, false, true]).unwrap(), 0.5);
        assert_eq!(auc(&[0.1, 0.9], &[true, false]).unwrap(), 0.0);
    }

    #[test]
    fn errors() {
        assert!(auc(&[0.1, 0.2], &[true, true]).is_err());
        assert!(auc(&[0.1, 0.2], &[false, false]).is_err());
        assert!(auc(&[0.1], &[true, false]).is_err());
        assert!(auc(&[f64::NAN, 0.2], &[true, false]).is_err());
    }

    fn brute_force(scores: &[f64], labels: &[bool]) -> f64 {
        let mut wins = 0.0;
        let mut pairs = 0.0;
        for (i, &li) in labels.iter().enumerate() {
            for (j, &lj) in labels.iter().enumerate() {
                if li && !lj {
                    pairs += 1.0;
                    if scores[i] > scores[j] {
                        wins += 1.0;
                    } else if scores[i] == scores[j] {
                        wins += 0.5;
                    }
                }
            }
        }
        wins / pairs
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn matches_pairwise_count_and_u(data in proptest::collection::vec((0u8..12, any::<bool>()), 2..60)) {
                let scores: Vec<f64> = data.iter().map(|d| f64::from(d.0) / 7.0).collect();
                let labels: Vec<bool> = data.iter().map(|d| d.1).collect();
                let Ok(a) = auc(&scores, &labels) else { return Ok(()); };
                prop_assert!((a - brute_force(&scores, &labels)).abs() < 1e-12);
                let pos: Vec<f64> = scores.iter().zip(&labels).filter(|p| *p.1).map(|p| *p.0).collect();
                let neg: Vec<f64> = scores.iter().zip(&labels).filter(|p| !*p.1).map(|p| *p.0).collect();
                let u = mann_whitney_u(&pos, &neg, MwuMode::NormalApprox).unwrap().statistic;
                prop_assert!((a - u / (pos.len() * neg.len()) as f64).abs() <= 1e-12);
            }
        }
    }
}
