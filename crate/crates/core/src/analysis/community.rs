use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::ScoredPost;
use crate::stats::{binomial_test, pair_key, pmi, PairKey, Tail, TestResult};
use crate::{Error, Result};

pub const DEFAULT_MIN_POSTS: u64 = 100;
pub const DEFAULT_MIN_POSTS_PER_SUB: u64 = 10;
pub const DEFAULT_DOGMATIC_THRESHOLD: f64 = 0.50;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubredditRank {
    pub subreddit: String,
    pub mean_score: f64,
    pub n: u64,
}

/// Mean score per subreddit with at least `min_posts` posts, highest mean
/// first, ties broken by name.
pub fn subreddit_rankings<'a, I>(scored: I, min_posts: u64) -> Vec<SubredditRank>
where
    I: IntoIterator<Item = &'a ScoredPost>,
{
    let mut acc: BTreeMap<&str, (f64, u64)> = BTreeMap::new();
    for s in scored {
        let e = acc.entry(s.post.subreddit.as_str()).or_default();
        e.0 += s.p_dogmatic;
        e.1 += 1;
    }
    let mut out: Vec<SubredditRank> = acc
        .into_iter()
        .filter(|(_, (_, n))| *n >= min_posts)
        .map(|(sub, (sum, n))| SubredditRank {
            subreddit: sub.to_string(),
            mean_score: sum / n as f64,
            n,
        })
        .collect();
    out.sort_by(|a, b| {
        b.mean_score
            .total_cmp(&a.mean_score)
            .then_with(|| a.subreddit.cmp(&b.subreddit))
    });
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SubredditStat {
    pub post_count: u64,
    pub mean_score: f64,
}

/// One user's activity in the subreddits where they meet the post minimum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UserSubredditProfile {
    pub user: String,
    pub subreddits: BTreeMap<String, SubredditStat>,
    /// Subreddits whose mean score is strictly above the threshold.
    pub dogmatic: BTreeSet<String>,
}

impl UserSubredditProfile {
    pub fn qualifies(&self, subreddit: &str) -> bool {
        self.subreddits.contains_key(subreddit)
    }

    pub fn is_dogmatic_on(&self, subreddit: &str) -> bool {
        self.dogmatic.contains(subreddit)
    }
}

/// Per-user profiles, sorted by user. Users with no subreddit meeting
/// `min_posts_per_sub` are omitted.
pub fn build_profiles<'a, I>(
    scored: I,
    min_posts_per_sub: u64,
    dogmatic_threshold: f64,
) -> Vec<UserSubredditProfile>
where
    I: IntoIterator<Item = &'a ScoredPost>,
{
    let mut acc: BTreeMap<&str, BTreeMap<&str, (f64, u64)>> = BTreeMap::new();
    for s in scored {
        let e = acc
            .entry(s.post.author.as_str())
            .or_default()
            .entry(s.post.subreddit.as_str())
            .or_default();
        e.0 += s.p_dogmatic;
        e.1 += 1;
    }
    acc.into_iter()
        .filter_map(|(user, subs)| {
            let subreddits: BTreeMap<String, SubredditStat> = subs
                .into_iter()
                .filter(|(_, (_, n))| *n >= min_posts_per_sub)
                .map(|(sub, (sum, n))| {
                    (
                        sub.to_string(),
                        SubredditStat {
                            post_count: n,
                            mean_score: sum / n as f64,
                        },
                    )
                })
                .collect();
            if subreddits.is_empty() {
                return None;
            }
            let dogmatic = subreddits
                .iter()
                .filter(|(_, s)| s.mean_score > dogmatic_threshold)
                .map(|(k, _)| k.clone())
                .collect();
            Some(UserSubredditProfile {
                user: user.to_string(),
                subreddits,
                dogmatic,
            })
        })
        .collect()
}

/// For every user, each unordered pair of their dogmatic subreddits adds one.
pub fn dogmatic_pair_counts(profiles: &[UserSubredditProfile]) -> BTreeMap<PairKey, u64> {
    let mut counts = BTreeMap::new();
    for p in profiles {
        let subs: Vec<&String> = p.dogmatic.iter().collect();
        for i in 0..subs.len() {
            for j in i + 1..subs.len() {
                *counts.entry(pair_key(subs[i], subs[j])).or_insert(0) += 1;
            }
        }
    }
    counts
}

/// Up to `top_k` neighbours per subreddit, ranked by PMI (ties by name).
pub fn cluster_by_association(
    pair_counts: &BTreeMap<PairKey, u64>,
    top_k: usize,
) -> Result<BTreeMap<String, Vec<(String, f64)>>> {
    let scores = pmi(pair_counts)?;
    let mut neighbours: BTreeMap<String, Vec<(String, f64)>> = BTreeMap::new();
    for ((a, b), s) in scores {
        neighbours.entry(a.clone()).or_default().push((b.clone(), s));
        neighbours.entry(b).or_default().push((a, s));
    }
    for list in neighbours.values_mut() {
        list.sort_by(|x, y| y.1.total_cmp(&x.1).then_with(|| x.0.cmp(&y.0)));
        list.truncate(top_k);
    }
    Ok(neighbours)
}

/// Population used for the enrichment base rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EnrichmentBaseline {
    /// Users meeting the post minimum in both subreddits.
    #[default]
    QualifiedInBoth,
    /// Every profile.
    AllProfiles,
}

impl std::str::FromStr for EnrichmentBaseline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qualified" | "qualified_in_both" => Ok(EnrichmentBaseline::QualifiedInBoth),
            "all" | "all_profiles" => Ok(EnrichmentBaseline::AllProfiles),
            other => Err(Error::InvalidInput(format!(
                "unknown enrichment baseline `{other}` (expected qualified or all)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnrichmentResult {
    /// Anchor-dogmatic users in the population.
    pub n: u64,
    /// Of those, the number also dogmatic on the other subreddit.
    pub k: u64,
    pub base_rate: f64,
    pub p_value: f64,
}

/// Are users dogmatic on `anchor` more often dogmatic on `other` than the
/// population base rate? One-sided exact binomial test.
pub fn enrichment_test(
    profiles: &[UserSubredditProfile],
    anchor: &str,
    other: &str,
    baseline: EnrichmentBaseline,
) -> Result<EnrichmentResult> {
    if anchor == other {
        return Err(Error::InvalidInput("anchor and other subreddit are the same".into()));
    }
    for sub in [anchor, other] {
        if !profiles.iter().any(|p| p.qualifies(sub)) {
            return Err(Error::InvalidInput(format!("no profile includes subreddit `{sub}`")));
        }
    }
    let population: Vec<&UserSubredditProfile> = match baseline {
        EnrichmentBaseline::QualifiedInBoth => profiles
            .iter()
            .filter(|p| p.qualifies(anchor) && p.qualifies(other))
            .collect(),
        EnrichmentBaseline::AllProfiles => profiles.iter().collect(),
    };
    let anchored: Vec<&&UserSubredditProfile> =
        population.iter().filter(|p| p.is_dogmatic_on(anchor)).collect();
    if anchored.is_empty() {
        return Err(Error::InvalidInput(format!(
            "no user in the population is dogmatic on `{anchor}`"
        )));
    }
    let base_hits = population.iter().filter(|p| p.is_dogmatic_on(other)).count();
    let base_rate = base_hits as f64 / population.len() as f64;
    if base_hits == 0 || base_hits == population.len() {
        return Err(Error::Degenerate(format!(
            "base rate of dogmatism on `{other}` is {base_rate}; the test is undefined"
        )));
    }
    let n = anchored.len() as u64;
    let k = anchored.iter().filter(|p| p.is_dogmatic_on(other)).count() as u64;
    let TestResult { p_value, .. } = binomial_test(k, n, base_rate, Tail::Greater)?;
    Ok(EnrichmentResult {
        n,
        k,
        base_rate,
        p_value,
    })
}
