use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{LogisticModel, TrainConfig};
use crate::features::FeatureFamily;
use crate::lexicon::Lexicon;
use crate::stats::auc;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub fold_aucs: Vec<f64>,
    /// Arithmetic mean of `fold_aucs`.
    pub mean_auc: f64,
    pub n_folds: usize,
}

#[derive(Debug, Clone)]
pub struct FoldResult {
    pub model: LogisticModel,
    pub test_indices: Vec<usize>,
    pub auc: f64,
}

#[derive(Debug, Clone)]
pub struct CvRun {
    pub report: EvalReport,
    pub folds: Vec<FoldResult>,
}

/// Fold index of every example. Each class is shuffled with `seed` and dealt
/// round-robin, so fold sizes per class differ by at most one.
pub fn stratified_folds(labels: &[bool], k: usize, seed: u64) -> Result<Vec<usize>> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 folds, got {k}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut assignment = vec![0usize; labels.len()];
    let mut offset = 0;
    for class in [true, false] {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        if members.len() < k {
            return Err(Error::InvalidInput(format!(
                "class {} has {} examples, too few to stratify into {k} folds",
                u8::from(class),
                members.len()
            )));
        }
        members.shuffle(&mut rng);
        for (pos, &i) in members.iter().enumerate() {
            assignment[i] = (offset + pos) % k;
        }
        offset += members.len();
    }
    Ok(assignment)
}

/// Stratified k-fold cross-validation. The vocabulary and classifier are
/// refitted inside every training fold; held-out labels are only read to
/// compute the fold's AUC.
pub fn cross_validate_detailed<S: AsRef<str> + Sync>(
    docs: &[S],
    labels: &[bool],
    family: FeatureFamily,
    k: usize,
    seed: u64,
    config: &TrainConfig,
    lexicon: Option<&Lexicon>,
) -> Result<CvRun> {
    if docs.len() != labels.len() {
        return Err(Error::DimensionMismatch {
            expected: docs.len(),
            found: labels.len(),
        });
    }
    let assignment = stratified_folds(labels, k, seed)?;
    cross_validate_with_folds(docs, labels, &assignment, family, config, lexicon)
}

/// Cross-validation over a caller-supplied fold assignment (`0..k` per
/// example, every fold nonempty).
pub fn cross_validate_with_folds<S: AsRef<str> + Sync>(
    docs: &[S],
    labels: &[bool],
    assignment: &[usize],
    family: FeatureFamily,
    config: &TrainConfig,
    lexicon: Option<&Lexicon>,
) -> Result<CvRun> {
    if docs.len() != labels.len() || docs.len() != assignment.len() {
        return Err(Error::DimensionMismatch {
            expected: docs.len(),
            found: labels.len().min(assignment.len()),
        });
    }
    let k = assignment.iter().max().map_or(0, |m| m + 1);
    if k < 2 || (0..k).any(|f| !assignment.contains(&f)) {
        return Err(Error::InvalidInput("fold assignment must cover folds 0..k with k >= 2".into()));
    }
    let folds: Vec<FoldResult> = (0..k)
        .into_par_iter()
        .map(|fold| -> Result<FoldResult> {
            let (test, train): (Vec<usize>, Vec<usize>) =
                (0..docs.len()).partition(|&i| assignment[i] == fold);
            let train_docs: Vec<&str> = train.iter().map(|&i| docs[i].as_ref()).collect();
            let train_labels: Vec<bool> = train.iter().map(|&i| labels[i]).collect();
            let model = LogisticModel::fit(&train_docs, &train_labels, family, config, lexicon)?;
            let featurizer = model.featurizer(lexicon)?;
            let scores = test
                .iter()
                .map(|&i| model.predict_proba(&featurizer.featurize(docs[i].as_ref())))
                .collect::<Result<Vec<f64>>>()?;
            let test_labels: Vec<bool> = test.iter().map(|&i| labels[i]).collect();
            let fold_auc = auc(&scores, &test_labels)?;
            Ok(FoldResult {
                model,
                test_indices: test,
                auc: fold_auc,
            })
        })
        .collect::<Result<_>>()?;
    let fold_aucs: Vec<f64> = folds.iter().map(|f| f.auc).collect();
    let mean_auc = fold_aucs.iter().sum::<f64>() / k as f64;
    Ok(CvRun {
        report: EvalReport {
            fold_aucs,
            mean_auc,
            n_folds: k,
        },
        folds,
    })
}

pub fn cross_validate<S: AsRef<str> + Sync>(
    docs: &[S],
    labels: &[bool],
    family: FeatureFamily,
    k: usize,
    seed: u64,
    config: &TrainConfig,
    lexicon: Option<&Lexicon>,
) -> Result<EvalReport> {
    cross_validate_detailed(docs, labels, family, k, seed, config, lexicon).map(|run| run.report)
}
