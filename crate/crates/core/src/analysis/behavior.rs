use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use super::ScoredPost;
use crate::corpus::Post;
use crate::stats::{mean_std, ols_fit, OlsFit};
use crate::{Error, Result};

pub const MIN_REGRESSION_USERS: usize = 20;

/// Regression term names, in design-column order.
pub const BEHAVIOR_TERMS: [&str; 4] = ["activity", "breadth", "focus", "engagement"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BehaviorFeatures {
    /// Total posts.
    pub activity: u64,
    /// Distinct subreddits.
    pub breadth: u64,
    /// Share of posts in the user's most-used subreddit.
    pub focus: f64,
    /// Mean posts per thread the user took part in.
    pub engagement: f64,
}

impl BehaviorFeatures {
    pub fn as_row(&self) -> [f64; 4] {
        [
            self.activity as f64,
            self.breadth as f64,
            self.focus,
            self.engagement,
        ]
    }
}

/// Thread root of every post: the first ancestor with no parent, or whose
/// parent is not in the corpus. A parent cycle resolves to the first repeated
/// post's id.
pub fn thread_roots(posts: &[Post]) -> HashMap<&str, &str> {
    let parent: HashMap<&str, Option<&str>> = posts
        .iter()
        .map(|p| (p.id.as_str(), p.parent_id.as_deref()))
        .collect();
    let mut roots: HashMap<&str, &str> = HashMap::with_capacity(posts.len());
    for p in posts {
        let start = p.id.as_str();
        if roots.contains_key(start) {
            continue;
        }
        let mut chain = vec![start];
        let mut seen: HashSet<&str> = HashSet::from([start]);
        let mut cur = start;
        let root = loop {
            if let Some(&r) = roots.get(cur) {
                break r;
            }
            match parent.get(cur).copied().flatten() {
                Some(next) if parent.contains_key(next) => {
                    if !seen.insert(next) {
                        break next;
                    }
                    chain.push(next);
                    cur = next;
                }
                _ => break cur,
            }
        };
        for id in chain {
            roots.insert(id, root);
        }
    }
    roots
}

/// Behavioural features for every author, keyed by author.
pub fn behavior_features(posts: &[Post]) -> BTreeMap<String, BehaviorFeatures> {
    let roots = thread_roots(posts);
    // posts, posts per subreddit, threads touched
    type Tally<'a> = (u64, HashMap<&'a str, u64>, HashSet<&'a str>);
    let mut per_user: BTreeMap<&str, Tally> = BTreeMap::new();
    for p in posts {
        let e = per_user.entry(p.author.as_str()).or_default();
        e.0 += 1;
        *e.1.entry(p.subreddit.as_str()).or_default() += 1;
        e.2.insert(roots[p.id.as_str()]);
    }
    per_user
        .into_iter()
        .map(|(user, (activity, subs, threads))| {
            let modal = subs.values().copied().max().unwrap_or(0);
            (
                user.to_string(),
                BehaviorFeatures {
                    activity,
                    breadth: subs.len() as u64,
                    focus: modal as f64 / activity as f64,
                    engagement: activity as f64 / threads.len() as f64,
                },
            )
        })
        .collect()
}

/// Mean classifier score per author.
pub fn user_mean_scores<'a, I>(scored: I) -> BTreeMap<String, f64>
where
    I: IntoIterator<Item = &'a ScoredPost>,
{
    let mut acc: BTreeMap<&str, (f64, u64)> = BTreeMap::new();
    for s in scored {
        let e = acc.entry(s.post.author.as_str()).or_default();
        e.0 += s.p_dogmatic;
        e.1 += 1;
    }
    acc.into_iter()
        .map(|(u, (sum, n))| (u.to_string(), sum / n as f64))
        .collect()
}

/// OLS of each user's mean score on the four z-scored behavioural features.
/// Users missing from either map are dropped.
pub fn behavior_regression(
    features: &BTreeMap<String, BehaviorFeatures>,
    user_scores: &BTreeMap<String, f64>,
) -> Result<OlsFit> {
    let joined: Vec<([f64; 4], f64)> = features
        .iter()
        .filter_map(|(u, f)| user_scores.get(u).map(|&y| (f.as_row(), y)))
        .collect();
    if joined.len() < MIN_REGRESSION_USERS {
        return Err(Error::InvalidInput(format!(
            "behaviour regression needs at least {MIN_REGRESSION_USERS} users, found {}",
            joined.len()
        )));
    }
    let mut design: Vec<Vec<f64>> = joined.iter().map(|(r, _)| r.to_vec()).collect();
    for (j, name) in BEHAVIOR_TERMS.iter().enumerate() {
        let column: Vec<f64> = design.iter().map(|r| r[j]).collect();
        let (mean, sd) = mean_std(&column);
        if sd == 0.0 {
            return Err(Error::RankDeficient {
                column: j + 1,
                name: name.to_string(),
            });
        }
        for row in &mut design {
            row[j] = (row[j] - mean) / sd;
        }
    }
    let response: Vec<f64> = joined.iter().map(|(_, y)| *y).collect();
    ols_fit(&design, &response, Some(&BEHAVIOR_TERMS))
}
