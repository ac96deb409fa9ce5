//! Analyses over classifier-scored corpora and the category odds table.

mod behavior;
mod community;
mod scoring;
mod triples;

use rayon::prelude::*;
use serde::Serialize;

use crate::lexicon::Lexicon;
use crate::stats::{holm_correct, mann_whitney_u, odds_ratio, MwuMode};
use crate::{Error, Result};

pub use behavior::{
    behavior_features, behavior_regression, thread_roots, user_mean_scores, BehaviorFeatures,
    BEHAVIOR_TERMS, MIN_REGRESSION_USERS,
};
pub use community::{
    build_profiles, cluster_by_association, dogmatic_pair_counts, enrichment_test,
    subreddit_rankings, EnrichmentBaseline, EnrichmentResult, SubredditRank, SubredditStat,
    UserSubredditProfile, DEFAULT_DOGMATIC_THRESHOLD, DEFAULT_MIN_POSTS,
    DEFAULT_MIN_POSTS_PER_SUB,
};
pub use scoring::{score_corpus, ScoredPost, Scorer, StreamOptions, StreamStats};
pub use triples::{
    extract_triples, remove_quoted_words, triple_regression, ConversationTriple, TripleScores,
    MIN_TRIPLES,
};

pub const SIGNIFICANCE_LEVEL: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OddsRow {
    pub category: String,
    pub odds_ratio: f64,
    pub p_raw: f64,
    pub p_holm: f64,
    pub significant: bool,
}

/// Per-category odds of a token falling in the category, dogmatic versus
/// non-dogmatic text, from aggregate counts. p-values come from a
/// Mann-Whitney test on per-document proportions, Holm-adjusted across all
/// categories.
pub fn odds_table<S: AsRef<str> + Sync>(
    dogmatic: &[S],
    nondogmatic: &[S],
    lexicon: &Lexicon,
) -> Result<Vec<OddsRow>> {
    if lexicon.is_empty() {
        return Err(Error::InvalidInput("lexicon has no categories".into()));
    }
    if dogmatic.is_empty() || nondogmatic.is_empty() {
        return Err(Error::InvalidInput(
            "odds table needs documents in both groups".into(),
        ));
    }
    let count = |docs: &[S]| -> Vec<crate::lexicon::CategoryCounts> {
        docs.par_iter().map(|d| lexicon.count_text(d.as_ref())).collect()
    };
    let dog = count(dogmatic);
    let non = count(nondogmatic);
    let dog_tokens: u64 = dog.iter().map(|c| c.token_count as u64).sum();
    let non_tokens: u64 = non.iter().map(|c| c.token_count as u64).sum();

    let mut rows = Vec::with_capacity(lexicon.len());
    let mut p_raw = Vec::with_capacity(lexicon.len());
    for (c, name) in lexicon.names().iter().enumerate() {
        let a: u64 = dog.iter().map(|d| d.counts[c] as u64).sum();
        let cc: u64 = non.iter().map(|d| d.counts[c] as u64).sum();
        let or = odds_ratio(a, dog_tokens - a, cc, non_tokens - cc);
        let xs: Vec<f64> = dog.iter().map(|d| d.proportion(c)).collect();
        let ys: Vec<f64> = non.iter().map(|d| d.proportion(c)).collect();
        let p = mann_whitney_u(&xs, &ys, MwuMode::Auto)?.p_value;
        p_raw.push(p);
        rows.push(OddsRow {
            category: name.clone(),
            odds_ratio: or,
            p_raw: p,
            p_holm: 0.0,
            significant: false,
        });
    }
    for (row, adj) in rows.iter_mut().zip(holm_correct(&p_raw)?) {
        row.p_holm = adj;
        row.significant = adj < SIGNIFICANCE_LEVEL;
    }
    Ok(rows)
}
