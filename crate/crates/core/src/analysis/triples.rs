use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::corpus::Post;
use crate::lexicon::for_each_token;
use crate::stats::{ols_fit, OlsFit};
use crate::{Error, Result};

pub const MIN_TRIPLES: usize = 100;

/// `a1 → b → a2`: `b` replies to `a1`, `a2` replies to `b`, and `a1`, `a2`
/// share an author different from `b`'s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConversationTriple<'a> {
    pub a1: &'a Post,
    pub b: &'a Post,
    pub a2: &'a Post,
}

/// Every conversation triple in `posts`, ordered by `(a1, b, a2)` ids. When
/// ids repeat, the first post with an id wins.
pub fn extract_triples(posts: &[Post]) -> Vec<ConversationTriple<'_>> {
    let mut by_id: HashMap<&str, &Post> = HashMap::with_capacity(posts.len());
    for p in posts {
        by_id.entry(p.id.as_str()).or_insert(p);
    }
    let mut out: Vec<ConversationTriple<'_>> = by_id
        .values()
        .filter_map(|&a2| {
            let b = by_id.get(a2.parent_id.as_deref()?)?;
            let a1 = by_id.get(b.parent_id.as_deref()?)?;
            (a1.author == a2.author && a1.author != b.author).then_some(ConversationTriple {
                a1,
                b,
                a2,
            })
        })
        .collect();
    out.sort_by(|x, y| {
        (x.a1.id.as_str(), x.b.id.as_str(), x.a2.id.as_str())
            .cmp(&(y.a1.id.as_str(), y.b.id.as_str(), y.a2.id.as_str()))
    });
    out
}

/// Drops every token of `a2` that also occurs in `b` and joins the rest with
/// single spaces. Tokens are compared in tokenizer (lowercased) form.
pub fn remove_quoted_words(a2: &str, b: &str) -> String {
    let mut quoted: HashSet<String> = HashSet::new();
    for_each_token(b, |t| {
        quoted.insert(t.to_string());
    });
    let mut kept: Vec<String> = Vec::new();
    for_each_token(a2, |t| {
        if !quoted.contains(t) {
            kept.push(t.to_string());
        }
    });
    kept.join(" ")
}

/// Scores of the three posts of each triple.
#[derive(Debug, Clone, PartialEq)]
pub struct TripleScores {
    pub a1: Vec<f64>,
    pub b: Vec<f64>,
    pub a2: Vec<f64>,
}

impl TripleScores {
    /// Scores every post with `scorer`. With `quote_control`, `a2` is scored
    /// after removing the words it shares with `b`.
    pub fn compute<F>(triples: &[ConversationTriple<'_>], scorer: F, quote_control: bool) -> Result<Self>
    where
        F: Fn(&str) -> Result<f64> + Sync,
    {
        let rows: Vec<(f64, f64, f64)> = triples
            .par_iter()
            .map(|t| {
                let a2 = if quote_control {
                    scorer(&remove_quoted_words(&t.a2.body, &t.b.body))?
                } else {
                    scorer(&t.a2.body)?
                };
                Ok((scorer(&t.a1.body)?, scorer(&t.b.body)?, a2))
            })
            .collect::<Result<_>>()?;
        let mut s = TripleScores {
            a1: Vec::with_capacity(rows.len()),
            b: Vec::with_capacity(rows.len()),
            a2: Vec::with_capacity(rows.len()),
        };
        for (a1, b, a2) in rows {
            s.a1.push(a1);
            s.b.push(b);
            s.a2.push(a2);
        }
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.a2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a2.is_empty()
    }

    /// OLS of `a2` on an intercept, `a1` and `b`, on the raw scores.
    pub fn fit(&self) -> Result<OlsFit> {
        if self.len() < MIN_TRIPLES {
            return Err(Error::InvalidInput(format!(
                "triple regression needs at least {MIN_TRIPLES} triples, found {}",
                self.len()
            )));
        }
        let design: Vec<Vec<f64>> = self.a1.iter().zip(&self.b).map(|(&x, &y)| vec![x, y]).collect();
        ols_fit(&design, &self.a2, Some(&["a1", "b"]))
    }

    /// The same scores with `b` permuted across triples: a null for the
    /// `b` coefficient.
    pub fn shuffled_b(&self, seed: u64) -> TripleScores {
        let mut b = self.b.clone();
        b.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        TripleScores { b, ..self.clone() }
    }
}

/// Regresses the score of `a2` on the scores of `a1` and `b`.
pub fn triple_regression<F>(
    triples: &[ConversationTriple<'_>],
    scorer: F,
    quote_control: bool,
) -> Result<OlsFit>
where
    F: Fn(&str) -> Result<f64> + Sync,
{
    if triples.len() < MIN_TRIPLES {
        return Err(Error::InvalidInput(format!(
            "triple regression needs at least {MIN_TRIPLES} triples, found {}",
            triples.len()
        )));
    }
    TripleScores::compute(triples, scorer, quote_control)?.fit()
}
