//! Planted-signal generators.
//!
//! Each generator draws a corpus whose ground truth is known, so the
//! pipeline can be checked for recovering it. All output is a pure function
//! of the spec and its seed.

use std::collections::BTreeMap;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::Serialize;

use crate::analysis::{behavior_features, ScoredPost, BEHAVIOR_TERMS};
use crate::corpus::{AnnotatedComment, Post, RATERS};
use crate::lexicon::{for_each_token, Lexicon};
use crate::stats::mean_std;
use crate::{Error, Result};

/// Words that match exactly one category, per category in lexicon order.
/// Stems contribute their stem text.
pub fn category_words(lexicon: &Lexicon) -> Vec<Vec<String>> {
    let mut scratch = Vec::new();
    (0..lexicon.len())
        .map(|c| {
            lexicon
                .patterns(c)
                .iter()
                .map(|p| p.text().to_string())
                .filter(|w| {
                    scratch.clear();
                    lexicon.match_indices(w, &mut scratch);
                    scratch == [c]
                })
                .collect()
        })
        .collect()
}

/// `n` pronounceable pseudo-words that match no lexicon category.
pub fn filler_words(lexicon: &Lexicon, n: usize) -> Vec<String> {
    const ONSETS: [&str; 14] = ["b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z"];
    const VOWELS: [&str; 5] = ["a", "e", "i", "o", "u"];
    let syllables: Vec<String> = ONSETS
        .iter()
        .flat_map(|o| VOWELS.iter().map(move |v| format!("{o}{v}")))
        .collect();
    let s = syllables.len();
    let total = s * s * s;
    let mut out = Vec::with_capacity(n);
    let mut scratch = Vec::new();
    // stride coprime with the table size walks it in a scrambled order
    let mut i = 0usize;
    for _ in 0..total {
        i = (i + 7919) % total;
        let word = format!("{}{}{}", syllables[i / (s * s)], syllables[(i / s) % s], syllables[i % s]);
        scratch.clear();
        lexicon.match_indices(&word, &mut scratch);
        if scratch.is_empty() {
            out.push(word);
            if out.len() == n {
                break;
            }
        }
    }
    out
}

/// Which half of each category's word list documents draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum VocabularyHalf {
    #[default]
    All,
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusSpec {
    pub n_docs: usize,
    pub min_tokens: usize,
    pub max_tokens: usize,
    /// Per-token probability of each category at latent dogmatism 0.
    pub base_rate: f64,
    /// Category rate at latent dogmatism `d` is `base_rate · m^d`; unlisted
    /// categories have `m = 1`.
    pub multipliers: BTreeMap<String, f64>,
    /// Standard deviation of each rater's noise on the 1-5 scale.
    pub rating_noise: f64,
    pub filler_vocabulary: usize,
    pub vocabulary: VocabularyHalf,
    pub seed: u64,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        let mut multipliers = BTreeMap::new();
        for c in ["certainty", "you", "negation", "negative_emotion"] {
            multipliers.insert(c.to_string(), 3.0);
        }
        for c in ["tentativeness", "insight"] {
            multipliers.insert(c.to_string(), 1.0 / 3.0);
        }
        CorpusSpec {
            n_docs: 5000,
            min_tokens: 45,
            max_tokens: 65,
            base_rate: 0.015,
            multipliers,
            rating_noise: 0.5,
            filler_vocabulary: 400,
            vocabulary: VocabularyHalf::All,
            seed: 0,
        }
    }
}

/// Latent dogmatism levels and their shares of the corpus.
pub const STRATA: [(f64, f64); 3] = [(0.0, 0.25), (0.5, 0.5), (1.0, 0.25)];

#[derive(Debug, Clone)]
pub struct SynthCorpus {
    pub comments: Vec<AnnotatedComment>,
    /// Latent dogmatism of each comment.
    pub latent: Vec<f64>,
    pub spec: CorpusSpec,
}

impl SynthCorpus {
    pub fn posts(&self) -> impl Iterator<Item = &Post> {
        self.comments.iter().map(|c| &c.post)
    }
}

fn check_corpus_spec(spec: &CorpusSpec, lexicon: &Lexicon) -> Result<()> {
    if spec.n_docs < 4 {
        return Err(Error::InvalidInput("need at least 4 documents".into()));
    }
    if spec.min_tokens == 0 || spec.min_tokens > spec.max_tokens {
        return Err(Error::InvalidInput(format!(
            "token range {}..={} is empty",
            spec.min_tokens, spec.max_tokens
        )));
    }
    if !(spec.base_rate > 0.0 && spec.base_rate < 1.0) {
        return Err(Error::InvalidInput(format!("base rate {} outside (0, 1)", spec.base_rate)));
    }
    if !(spec.rating_noise >= 0.0 && spec.rating_noise.is_finite()) {
        return Err(Error::InvalidInput("rating noise must be nonnegative".into()));
    }
    for (name, &m) in &spec.multipliers {
        if lexicon.index_of(name).is_none() {
            return Err(Error::MissingCategory(name.clone()));
        }
        if !(m > 0.0 && m.is_finite()) {
            return Err(Error::InvalidInput(format!("multiplier for {name} must be positive")));
        }
    }
    for d in [0.0, 1.0] {
        let total: f64 = rates(spec, lexicon, d).iter().sum();
        if total >= 1.0 {
            return Err(Error::InvalidInput(format!(
                "category rates sum to {total:.3} at latent dogmatism {d}; they must stay below 1"
            )));
        }
    }
    Ok(())
}

fn rates(spec: &CorpusSpec, lexicon: &Lexicon, d: f64) -> Vec<f64> {
    lexicon
        .names()
        .iter()
        .map(|n| spec.base_rate * spec.multipliers.get(n).copied().unwrap_or(1.0).powf(d))
        .collect()
}

/// Draws an annotated corpus with planted category rates.
///
/// Every comment gets a latent dogmatism from [`STRATA`]; each of its tokens
/// is a category word with the category's rate at that level, otherwise a
/// filler word. Each of the three raters reports
/// `round(1 + 4d + noise)` clamped to 1-5.
pub fn generate_corpus(spec: &CorpusSpec, lexicon: &Lexicon) -> Result<SynthCorpus> {
    check_corpus_spec(spec, lexicon)?;
    let words = category_words(lexicon);
    let words: Vec<Vec<String>> = words
        .into_iter()
        .map(|list| {
            let half = list.len() / 2;
            match spec.vocabulary {
                VocabularyHalf::All => list,
                VocabularyHalf::First => list[..half.max(1)].to_vec(),
                VocabularyHalf::Second => list[half.min(list.len().saturating_sub(1))..].to_vec(),
            }
        })
        .collect();
    if let Some(c) = words.iter().position(Vec::is_empty) {
        return Err(Error::InvalidInput(format!(
            "category {} has no usable words",
            lexicon.names()[c]
        )));
    }
    let filler = filler_words(lexicon, spec.filler_vocabulary.max(1));

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut latent: Vec<f64> = Vec::with_capacity(spec.n_docs);
    let low = spec.n_docs / 4;
    let high = spec.n_docs / 4;
    latent.extend(std::iter::repeat_n(0.0, low));
    latent.extend(std::iter::repeat_n(0.5, spec.n_docs - low - high));
    latent.extend(std::iter::repeat_n(1.0, high));
    latent.shuffle(&mut rng);

    let noise = Normal::new(0.0, spec.rating_noise).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let rate_table: BTreeMap<u64, Vec<f64>> = STRATA
        .iter()
        .map(|&(d, _)| (d.to_bits(), rates(spec, lexicon, d)))
        .collect();

    let mut comments = Vec::with_capacity(spec.n_docs);
    for (i, &d) in latent.iter().enumerate() {
        let r = &rate_table[&d.to_bits()];
        let len = rng.random_range(spec.min_tokens..=spec.max_tokens);
        let mut tokens: Vec<&str> = Vec::with_capacity(len);
        for _ in 0..len {
            let mut u: f64 = rng.random();
            let mut chosen = None;
            for (c, &rc) in r.iter().enumerate() {
                if u < rc {
                    chosen = Some(c);
                    break;
                }
                u -= rc;
            }
            let w = match chosen {
                Some(c) => words[c].choose(&mut rng).expect("nonempty"),
                None => filler.choose(&mut rng).expect("nonempty"),
            };
            tokens.push(w);
        }
        let mut body = tokens.join(" ");
        body.push('.');
        let ratings: Vec<i64> = (0..RATERS)
            .map(|_| (1.0 + 4.0 * d + noise.sample(&mut rng)).round().clamp(1.0, 5.0) as i64)
            .collect();
        let post = Post {
            id: format!("c{i:06}"),
            author: format!("author{:04}", i % 997),
            subreddit: "synthetic".into(),
            created_at: i as i64,
            parent_id: None,
            body,
        };
        comments.push(AnnotatedComment::new(post, &ratings)?);
    }
    Ok(SynthCorpus {
        comments,
        latent,
        spec: spec.clone(),
    })
}

/// A training corpus drawn from the first half of every category's word list
/// and a held-out corpus from the second half, with a different seed.
pub fn generate_shifted(spec: &CorpusSpec, lexicon: &Lexicon) -> Result<(SynthCorpus, SynthCorpus)> {
    let train = CorpusSpec {
        vocabulary: VocabularyHalf::First,
        ..spec.clone()
    };
    let held_out = CorpusSpec {
        vocabulary: VocabularyHalf::Second,
        seed: spec.seed ^ 0x9e37_79b9_7f4a_7c15,
        ..spec.clone()
    };
    Ok((generate_corpus(&train, lexicon)?, generate_corpus(&held_out, lexicon)?))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BehaviorSpec {
    pub n_users: usize,
    pub n_subreddits: usize,
    pub min_activity: u64,
    pub max_activity: u64,
    pub max_breadth: u64,
    pub intercept: f64,
    /// Planted coefficients on the z-scored features, in
    /// [`BEHAVIOR_TERMS`] order.
    pub coefficients: [f64; 4],
    pub noise: f64,
    pub seed: u64,
}

impl Default for BehaviorSpec {
    fn default() -> Self {
        BehaviorSpec {
            n_users: 10_000,
            n_subreddits: 30,
            min_activity: 5,
            max_activity: 80,
            max_breadth: 10,
            intercept: 0.5,
            coefficients: [0.1, -0.1, 0.1, -0.1],
            noise: 0.05,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BehaviorPopulation {
    pub scored: Vec<ScoredPost>,
    /// Planted mean score per user (after clamping to the unit interval).
    pub user_means: BTreeMap<String, f64>,
    /// Users whose planted mean had to be clamped.
    pub clamped: usize,
    pub spec: BehaviorSpec,
}

/// Users with varied activity, breadth, focus and engagement whose mean
/// score is `intercept + Σ β·z(feature) + noise`, with z-scores taken over
/// the realised features. Per-post scores scatter around the user mean and
/// average to it exactly up to rounding.
pub fn generate_behavior(spec: &BehaviorSpec) -> Result<BehaviorPopulation> {
    if spec.n_users < 2 || spec.n_subreddits < 2 {
        return Err(Error::InvalidInput("need at least 2 users and 2 subreddits".into()));
    }
    if spec.min_activity < 1 || spec.min_activity > spec.max_activity || spec.max_breadth < 1 {
        return Err(Error::InvalidInput("activity and breadth ranges are empty".into()));
    }
    if spec.max_breadth as usize > spec.n_subreddits {
        return Err(Error::InvalidInput("max breadth exceeds the number of subreddits".into()));
    }
    if !(0.0..=1.0).contains(&spec.intercept) || spec.noise.is_nan() || spec.noise < 0.0 {
        return Err(Error::InvalidInput("intercept must lie in [0, 1] and noise be nonnegative".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let subs: Vec<String> = (0..spec.n_subreddits).map(|j| format!("sub{j:02}")).collect();
    let mut posts: Vec<Post> = Vec::new();
    for u in 0..spec.n_users {
        let user = format!("user{u:05}");
        let activity = rng.random_range(spec.min_activity..=spec.max_activity);
        let breadth = rng.random_range(1..=activity.min(spec.max_breadth));
        let lo = activity.div_ceil(breadth);
        let hi = activity - (breadth - 1);
        let modal = rng.random_range(lo..=hi);
        let mut counts = vec![1u64; breadth as usize];
        counts[0] = modal;
        let mut rest = activity - modal - (breadth - 1);
        while rest > 0 {
            let j = rng.random_range(1..breadth as usize);
            if counts[j] < modal {
                counts[j] += 1;
                rest -= 1;
            }
        }
        let chosen: Vec<&String> = subs.choose_multiple(&mut rng, breadth as usize).collect();
        let target_engagement: f64 = rng.random_range(1.0..6.0);
        let mut k = 0;
        for (sub, &n) in chosen.iter().zip(&counts) {
            let threads = ((n as f64 / target_engagement).round() as u64).clamp(1, n);
            let mut roots: Vec<String> = Vec::new();
            for i in 0..n {
                let id = format!("{user}p{k}");
                k += 1;
                let parent = if i < threads {
                    roots.push(id.clone());
                    None
                } else {
                    Some(roots.choose(&mut rng).expect("thread root").clone())
                };
                posts.push(Post {
                    id,
                    author: user.clone(),
                    subreddit: (*sub).clone(),
                    created_at: k as i64,
                    parent_id: parent,
                    body: "synthetic post".into(),
                });
            }
        }
    }

    let features = behavior_features(&posts);
    let rows: Vec<[f64; 4]> = features.values().map(|f| f.as_row()).collect();
    let moments: Vec<(f64, f64)> = (0..4)
        .map(|j| mean_std(&rows.iter().map(|r| r[j]).collect::<Vec<_>>()))
        .collect();
    if let Some(j) = moments.iter().position(|m| m.1 == 0.0) {
        return Err(Error::Degenerate(format!("feature {} has no variance", BEHAVIOR_TERMS[j])));
    }
    let noise = Normal::new(0.0, spec.noise).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let mut clamped = 0;
    let user_means: BTreeMap<String, f64> = features
        .keys()
        .zip(&rows)
        .map(|(u, r)| {
            let z: f64 = (0..4)
                .map(|j| spec.coefficients[j] * (r[j] - moments[j].0) / moments[j].1)
                .sum();
            let y = spec.intercept + z + noise.sample(&mut rng);
            let c = y.clamp(0.02, 0.98);
            if c != y {
                clamped += 1;
            }
            (u.clone(), c)
        })
        .collect();

    let mut scored = Vec::with_capacity(posts.len());
    let mut start = 0;
    while start < posts.len() {
        let author = posts[start].author.clone();
        let end = start + posts[start..].iter().take_while(|p| p.author == author).count();
        let mean = user_means[&author];
        let jitter: Vec<f64> = (start..end).map(|_| rng.random::<f64>()).collect();
        let (jm, _) = mean_std(&jitter);
        let spread = jitter.iter().map(|j| (j - jm).abs()).fold(0.0, f64::max);
        let scale = if spread > 0.0 {
            0.9 * mean.min(1.0 - mean) / spread
        } else {
            0.0
        };
        for (p, j) in posts[start..end].iter().zip(&jitter) {
            scored.push(ScoredPost {
                post: p.clone(),
                p_dogmatic: (mean + scale * (j - jm)).clamp(0.0, 1.0),
            });
        }
        start = end;
    }
    Ok(BehaviorPopulation {
        scored,
        user_means,
        clamped,
        spec: spec.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterSpec {
    pub n_users: usize,
    /// Split evenly into two blocks.
    pub n_subreddits: usize,
    /// Chance that a dogmatic subreddit is drawn from the other block.
    pub cross_block_rate: f64,
    pub min_posts_per_sub: u64,
    pub seed: u64,
}

impl Default for ClusterSpec {
    fn default() -> Self {
        ClusterSpec {
            n_users: 2000,
            n_subreddits: 20,
            cross_block_rate: 0.15,
            min_posts_per_sub: 10,
            seed: 0,
        }
    }
}

/// Scored posts in which each user is dogmatic (mean 0.7) on two to four
/// subreddits mostly from their home block, calm (mean 0.3) on up to two
/// others, and has a few posts below the per-subreddit minimum elsewhere.
/// Returns the posts and each subreddit's block.
pub fn generate_clusters(spec: &ClusterSpec) -> Result<(Vec<ScoredPost>, BTreeMap<String, usize>)> {
    if spec.n_subreddits < 10 || !spec.n_subreddits.is_multiple_of(2) {
        return Err(Error::InvalidInput("need an even number of at least 10 subreddits".into()));
    }
    if !(0.0..=1.0).contains(&spec.cross_block_rate) || spec.min_posts_per_sub == 0 {
        return Err(Error::InvalidInput("cross-block rate must lie in [0, 1] and the minimum be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let half = spec.n_subreddits / 2;
    let subs: Vec<String> = (0..spec.n_subreddits).map(|j| format!("sub{j:02}")).collect();
    let block_of: BTreeMap<String, usize> = subs.iter().enumerate().map(|(j, s)| (s.clone(), j / half)).collect();
    let mut out = Vec::new();
    let mut next_id = 0u64;
    let mut emit = |rng: &mut ChaCha8Rng, out: &mut Vec<ScoredPost>, user: &str, sub: &str, n: u64, mean: f64| {
        for _ in 0..n {
            next_id += 1;
            out.push(ScoredPost {
                post: Post {
                    id: format!("k{next_id:08}"),
                    author: user.to_string(),
                    subreddit: sub.to_string(),
                    created_at: next_id as i64,
                    parent_id: None,
                    body: "synthetic post".into(),
                },
                p_dogmatic: (mean + rng.random_range(-0.15..0.15)).clamp(0.0, 1.0),
            });
        }
    };
    for u in 0..spec.n_users {
        let user = format!("user{u:05}");
        let home = rng.random_range(0..2usize);
        let n_dog = rng.random_range(2..=4);
        let mut used: Vec<usize> = Vec::new();
        while used.len() < n_dog {
            let block = if rng.random_bool(spec.cross_block_rate) { 1 - home } else { home };
            let j = block * half + rng.random_range(0..half);
            if !used.contains(&j) {
                used.push(j);
            }
        }
        for &j in &used {
            let n = rng.random_range(spec.min_posts_per_sub..spec.min_posts_per_sub * 2);
            emit(&mut rng, &mut out, &user, &subs[j], n, 0.7);
        }
        for _ in 0..rng.random_range(0..=2) {
            let j = rng.random_range(0..spec.n_subreddits);
            if !used.contains(&j) {
                used.push(j);
                let n = rng.random_range(spec.min_posts_per_sub..spec.min_posts_per_sub * 2);
                emit(&mut rng, &mut out, &user, &subs[j], n, 0.3);
            }
        }
        let j = rng.random_range(0..spec.n_subreddits);
        if !used.contains(&j) {
            let n = rng.random_range(1..spec.min_posts_per_sub);
            emit(&mut rng, &mut out, &user, &subs[j], n, 0.9);
        }
    }
    Ok((out, block_of))
}

/// Token the triple scorer counts.
pub const MARKER: &str = "sure";

/// Share of tokens equal to [`MARKER`]; 0 for text without tokens.
pub fn marker_proportion(text: &str) -> f64 {
    let mut total = 0usize;
    let mut hits = 0usize;
    for_each_token(text, |t| {
        total += 1;
        if t == MARKER {
            hits += 1;
        }
    });
    if total == 0 {
        0.0
    } else {
        hits as f64 / total as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TripleSpec {
    pub n_triples: usize,
    pub intercept: f64,
    pub a1_coefficient: f64,
    pub b_coefficient: f64,
    pub noise: f64,
    /// Tokens per post; scores are realised as marker counts out of this.
    pub tokens: usize,
    /// Range of the A1 and B latent scores.
    pub score_range: (f64, f64),
    pub seed: u64,
}

impl Default for TripleSpec {
    fn default() -> Self {
        TripleSpec {
            n_triples: 100_000,
            intercept: 0.2,
            a1_coefficient: 0.5,
            b_coefficient: 0.3,
            noise: 0.05,
            tokens: 40,
            score_range: (0.1, 0.9),
            seed: 0,
        }
    }
}

/// Threads `a1 → b → a2` whose [`marker_proportion`] scores follow
/// `a2 = intercept + α·a1 + β·b + noise` (clamped to [0, 1]).
pub fn generate_triples(spec: &TripleSpec) -> Result<Vec<Post>> {
    let (lo, hi) = spec.score_range;
    if !(0.0 <= lo && lo < hi && hi <= 1.0) {
        return Err(Error::InvalidInput("score range must be an interval inside [0, 1]".into()));
    }
    if spec.tokens == 0 || spec.noise.is_nan() || spec.noise < 0.0 {
        return Err(Error::InvalidInput("tokens must be positive and noise nonnegative".into()));
    }
    let corners = [lo, hi]
        .iter()
        .flat_map(|&a| [lo, hi].map(|b| spec.intercept + spec.a1_coefficient * a + spec.b_coefficient * b))
        .collect::<Vec<_>>();
    if corners.iter().any(|v| !(0.0..=1.0).contains(v)) {
        return Err(Error::InvalidInput(format!(
            "planted coefficients give A2 scores outside [0, 1] (corners {corners:?})"
        )));
    }
    let lexicon = Lexicon::demo();
    let filler = filler_words(&lexicon, 300);
    let noise = Normal::new(0.0, spec.noise).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let tokens = spec.tokens;
    let body = |rng: &mut ChaCha8Rng, score: f64| -> String {
        let k = (score * tokens as f64).round() as usize;
        let mut w: Vec<&str> = (0..tokens)
            .map(|i| if i < k { MARKER } else { filler.choose(rng).expect("filler").as_str() })
            .collect();
        w.shuffle(rng);
        w.join(" ")
    };
    let mut posts = Vec::with_capacity(spec.n_triples * 3);
    for i in 0..spec.n_triples {
        let a1: f64 = rng.random_range(lo..=hi);
        let b: f64 = rng.random_range(lo..=hi);
        let a2 = (spec.intercept + spec.a1_coefficient * a1 + spec.b_coefficient * b + noise.sample(&mut rng))
            .clamp(0.0, 1.0);
        let (x, y, z) = (format!("t{i:07}a"), format!("t{i:07}b"), format!("t{i:07}c"));
        let (alice, bob) = (format!("a{i:07}"), format!("b{i:07}"));
        for (id, author, parent, score) in [
            (x.clone(), alice.clone(), None, a1),
            (y.clone(), bob, Some(x), b),
            (z, alice, Some(y), a2),
        ] {
            posts.push(Post {
                id,
                author,
                subreddit: "synthetic".into(),
                created_at: i as i64,
                parent_id: parent,
                body: body(&mut rng, score),
            });
        }
    }
    Ok(posts)
}

/// Lazily generated short posts mixing lexicon and filler words, for
/// throughput runs. The `i`-th post depends only on `seed` and `i`.
pub fn post_stream(lexicon: &Lexicon, n: u64, seed: u64) -> impl Iterator<Item = Post> + '_ {
    let words: Vec<String> = category_words(lexicon).into_iter().flatten().collect();
    let filler = filler_words(lexicon, 500);
    (0..n).map(move |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i);
        let len = rng.random_range(8..24);
        let body: Vec<&str> = (0..len)
            .map(|_| {
                if rng.random_bool(0.3) {
                    words.choose(&mut rng).expect("words").as_str()
                } else {
                    filler.choose(&mut rng).expect("filler").as_str()
                }
            })
            .collect();
        Post {
            id: format!("s{i:09}"),
            author: format!("user{:05}", i % 50_000),
            subreddit: format!("sub{:02}", i % 40),
            created_at: i as i64,
            parent_id: None,
            body: body.join(" "),
        }
    })
}
