use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::Post;
use crate::features::Featurizer;
use crate::lexicon::Lexicon;
use crate::model::LogisticModel;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoredPost {
    pub post: Post,
    pub p_dogmatic: f64,
}

/// A model bound to the lexicon its feature space needs.
#[derive(Debug, Clone)]
pub struct Scorer<'a> {
    model: &'a LogisticModel,
    featurizer: Featurizer<'a>,
}

impl<'a> Scorer<'a> {
    pub fn new(model: &'a LogisticModel, lexicon: Option<&'a Lexicon>) -> Result<Self> {
        let featurizer = model.featurizer(lexicon)?;
        Ok(Scorer { model, featurizer })
    }

    /// Probability that `text` is dogmatic.
    pub fn score(&self, text: &str) -> Result<f64> {
        self.model.predict_proba(&self.featurizer.featurize(text))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamOptions {
    /// Posts read ahead and scored together.
    pub chunk_size: usize,
    pub workers: usize,
}

impl Default for StreamOptions {
    fn default() -> Self {
        StreamOptions {
            chunk_size: 8192,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StreamStats {
    pub posts: u64,
    /// Largest number of posts held in memory at once.
    pub max_in_flight: usize,
}

/// Scores a stream of posts in bounded memory and hands results to `sink` in
/// input order. At most `chunk_size` posts are buffered; each chunk is scored
/// on a pool of `workers` threads. The first read, scoring or sink error
/// stops the stream.
pub fn score_corpus<I, F>(
    scorer: &Scorer<'_>,
    posts: I,
    options: &StreamOptions,
    mut sink: F,
) -> Result<StreamStats>
where
    I: IntoIterator<Item = Result<Post>>,
    F: FnMut(ScoredPost) -> Result<()>,
{
    if options.workers == 0 || options.chunk_size == 0 {
        return Err(Error::InvalidInput(
            "worker count and chunk size must be positive".into(),
        ));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers)
        .build()
        .map_err(|e| Error::Internal(format!("cannot start worker pool: {e}")))?;
    let mut stats = StreamStats::default();
    let mut iter = posts.into_iter();
    let mut chunk: Vec<Post> = Vec::with_capacity(options.chunk_size);
    loop {
        chunk.clear();
        for post in iter.by_ref() {
            chunk.push(post?);
            if chunk.len() == options.chunk_size {
                break;
            }
        }
        if chunk.is_empty() {
            break;
        }
        stats.max_in_flight = stats.max_in_flight.max(chunk.len());
        let scores: Vec<Result<f64>> =
            pool.install(|| chunk.par_iter().map(|p| scorer.score(&p.body)).collect());
        let full = chunk.len() == options.chunk_size;
        for (post, score) in chunk.drain(..).zip(scores) {
            stats.posts += 1;
            sink(ScoredPost {
                post,
                p_dogmatic: score?,
            })?;
        }
        if !full {
            break;
        }
    }
    Ok(stats)
}
