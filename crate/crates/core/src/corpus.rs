//! Post corpora and crowd annotations.
//!
//! Posts and annotations are stored as JSON lines. Posts stream lazily so
//! corpora larger than memory can be filtered, sampled or scored in one pass.

use std::collections::{BinaryHeap, HashMap, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Number of annotators per comment.
pub const RATERS: usize = 3;
/// Likert scale bounds for a single rating.
pub const RATING_MIN: u8 = 1;
pub const RATING_MAX: u8 = 5;

/// One social-media comment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Post {
    pub id: String,
    pub author: String,
    pub subreddit: String,
    pub created_at: i64,
    pub parent_id: Option<String>,
    pub body: String,
}

impl Post {
    fn validate(&self, allow_empty_body: bool) -> std::result::Result<(), String> {
        if self.id.is_empty() {
            return Err("empty id".into());
        }
        if self.parent_id.as_deref() == Some(self.id.as_str()) {
            return Err(format!("post {} is its own parent", self.id));
        }
        if !allow_empty_body && self.body.is_empty() {
            return Err(format!("post {} has an empty body", self.id));
        }
        Ok(())
    }

    /// Body length in Unicode scalar values.
    pub fn char_len(&self) -> usize {
        self.body.chars().count()
    }
}

/// A post together with its three ratings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedComment {
    pub post: Post,
    ratings: [u8; RATERS],
    aggregate: u8,
}

impl AnnotatedComment {
    pub fn new(post: Post, ratings: &[i64]) -> Result<Self> {
        let ratings = validate_ratings(&post.id, ratings)?;
        Ok(AnnotatedComment {
            post,
            aggregate: ratings.iter().sum(),
            ratings,
        })
    }

    pub fn ratings(&self) -> [u8; RATERS] {
        self.ratings
    }

    /// Sum of the three ratings, in `3..=15`.
    pub fn aggregate(&self) -> u8 {
        self.aggregate
    }
}

fn validate_ratings(id: &str, ratings: &[i64]) -> Result<[u8; RATERS]> {
    if ratings.len() != RATERS {
        return Err(Error::Record {
            id: id.to_string(),
            message: format!("expected {RATERS} ratings, found {}", ratings.len()),
        });
    }
    let mut out = [0u8; RATERS];
    for (slot, &r) in out.iter_mut().zip(ratings) {
        if r < RATING_MIN as i64 || r > RATING_MAX as i64 {
            return Err(Error::Record {
                id: id.to_string(),
                message: format!("rating {r} outside [{RATING_MIN}, {RATING_MAX}]"),
            });
        }
        *slot = r as u8;
    }
    Ok(out)
}

/// What to do with a line that fails to parse or validate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OnError {
    /// Yield the error and stop reading.
    #[default]
    Abort,
    /// Record the error and continue with the next line.
    Skip,
}

#[derive(Debug, Clone)]
pub struct LoadOptions {
    pub on_error: OnError,
    pub allow_empty_body: bool,
    /// Reject repeated ids. Keeps a set of every id seen, so streaming callers
    /// that must run in bounded memory turn it off.
    pub unique_ids: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            on_error: OnError::Abort,
            allow_empty_body: false,
            unique_ids: true,
        }
    }
}

/// Streaming JSON-lines post reader.
pub struct PostReader<R> {
    lines: std::io::Lines<R>,
    line_no: usize,
    context: String,
    options: LoadOptions,
    seen: HashSet<String>,
    skipped: Vec<Error>,
    done: bool,
}

impl<R: BufRead> PostReader<R> {
    pub fn new(reader: R, context: impl Into<String>, options: LoadOptions) -> Self {
        PostReader {
            lines: reader.lines(),
            line_no: 0,
            context: context.into(),
            options,
            seen: HashSet::new(),
            skipped: Vec::new(),
            done: false,
        }
    }

    /// Errors for lines dropped under [`OnError::Skip`].
    pub fn skipped(&self) -> &[Error] {
        &self.skipped
    }

    fn parse_error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            context: self.context.clone(),
            line: self.line_no,
            message: message.into(),
        }
    }

    fn parse_line(&mut self, line: &str) -> Result<Post> {
        let post: Post =
            serde_json::from_str(line).map_err(|e| self.parse_error(e.to_string()))?;
        post.validate(self.options.allow_empty_body)
            .map_err(|m| self.parse_error(m))?;
        if self.options.unique_ids && !self.seen.insert(post.id.clone()) {
            return Err(self.parse_error(format!("duplicate id {}", post.id)));
        }
        Ok(post)
    }
}

impl<R: BufRead> Iterator for PostReader<R> {
    type Item = Result<Post>;

    fn next(&mut self) -> Option<Self::Item> {
        while !self.done {
            let line = match self.lines.next()? {
                Ok(line) => line,
                Err(e) => {
                    self.done = true;
                    return Some(Err(Error::io(self.context.clone(), e)));
                }
            };
            self.line_no += 1;
            if line.trim().is_empty() {
                continue;
            }
            match self.parse_line(&line) {
                Ok(post) => return Some(Ok(post)),
                Err(e) => match self.options.on_error {
                    OnError::Abort => {
                        self.done = true;
                        return Some(Err(e));
                    }
                    OnError::Skip => self.skipped.push(e),
                },
            }
        }
        None
    }
}

/// Opens a JSON-lines post file for streaming.
pub fn load_posts(
    path: impl AsRef<Path>,
    options: LoadOptions,
) -> Result<PostReader<BufReader<File>>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(PostReader::new(
        BufReader::new(file),
        path.display().to_string(),
        options,
    ))
}

/// Reads a whole post file, failing on the first bad line.
pub fn read_posts(path: impl AsRef<Path>, options: LoadOptions) -> Result<Vec<Post>> {
    load_posts(path, options)?.collect()
}

pub fn write_posts<'a, W: Write>(
    mut writer: W,
    posts: impl IntoIterator<Item = &'a Post>,
) -> std::io::Result<()> {
    for post in posts {
        serde_json::to_writer(&mut writer, post)?;
        writer.write_all(b"\n")?;
    }
    writer.flush()
}

/// One line of an annotation file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatingRecord {
    pub id: String,
    pub ratings: Vec<i64>,
}

/// Reads and validates an annotation file without joining it to posts.
pub fn load_ratings(path: impl AsRef<Path>) -> Result<Vec<RatingRecord>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let record: RatingRecord = serde_json::from_str(&line).map_err(|e| Error::Parse {
            context: path.display().to_string(),
            line: i + 1,
            message: e.to_string(),
        })?;
        validate_ratings(&record.id, &record.ratings)?;
        out.push(record);
    }
    Ok(out)
}

/// Reads an annotation file and joins every record to its post by id.
pub fn load_annotations(
    annotations: impl AsRef<Path>,
    posts: impl AsRef<Path>,
    options: LoadOptions,
) -> Result<Vec<AnnotatedComment>> {
    let records = load_ratings(annotations)?;
    let posts = read_posts(posts, options)?;
    join_annotations(posts, records)
}

/// Joins rating records to posts, keeping annotation-file order.
pub fn join_annotations(
    posts: Vec<Post>,
    records: Vec<RatingRecord>,
) -> Result<Vec<AnnotatedComment>> {
    let mut by_id: HashMap<String, Post> = posts.into_iter().map(|p| (p.id.clone(), p)).collect();
    records
        .into_iter()
        .map(|r| {
            let post = by_id.remove(&r.id).ok_or_else(|| Error::Record {
                id: r.id.clone(),
                message: "no post with this id (or annotated twice)".into(),
            })?;
            AnnotatedComment::new(post, &r.ratings)
        })
        .collect()
}

/// Character-length window for posts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LengthBounds {
    pub min_chars: usize,
    pub max_chars: usize,
    pub inclusive: bool,
}

impl LengthBounds {
    pub fn new(min_chars: usize, max_chars: usize) -> Result<Self> {
        if min_chars > max_chars {
            return Err(Error::InvalidInput(format!(
                "min_chars {min_chars} exceeds max_chars {max_chars}"
            )));
        }
        Ok(LengthBounds {
            min_chars,
            max_chars,
            inclusive: true,
        })
    }

    pub fn exclusive(self) -> Self {
        LengthBounds {
            inclusive: false,
            ..self
        }
    }

    pub fn contains(&self, chars: usize) -> bool {
        if self.inclusive {
            self.min_chars <= chars && chars <= self.max_chars
        } else {
            self.min_chars < chars && chars < self.max_chars
        }
    }
}

impl Default for LengthBounds {
    fn default() -> Self {
        LengthBounds {
            min_chars: 300,
            max_chars: 400,
            inclusive: true,
        }
    }
}

pub fn filter_length<I>(posts: I, bounds: LengthBounds) -> impl Iterator<Item = Post>
where
    I: IntoIterator<Item = Post>,
{
    posts
        .into_iter()
        .filter(move |p| bounds.contains(p.char_len()))
}

/// Uniform sample of `min(n, total)` posts, returned sorted by id.
///
/// Each post gets a key drawn from a seeded stream and the `n` smallest keys
/// win, so the result depends only on the seed and the input order.
pub fn sample_posts<I>(posts: I, n: usize, seed: u64) -> Vec<Post>
where
    I: IntoIterator<Item = Post>,
{
    if n == 0 {
        return Vec::new();
    }
    struct Keyed(u64, usize, Post);
    impl PartialEq for Keyed {
        fn eq(&self, other: &Self) -> bool {
            (self.0, self.1) == (other.0, other.1)
        }
    }
    impl Eq for Keyed {}
    impl PartialOrd for Keyed {
        fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
            Some(self.cmp(other))
        }
    }
    impl Ord for Keyed {
        fn cmp(&self, other: &Self) -> std::cmp::Ordering {
            (self.0, self.1).cmp(&(other.0, other.1))
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut heap: BinaryHeap<Keyed> = BinaryHeap::with_capacity(n + 1);
    for (i, post) in posts.into_iter().enumerate() {
        let key: u64 = rng.random();
        if heap.len() < n {
            heap.push(Keyed(key, i, post));
        } else if let Some(top) = heap.peek() {
            if (key, i) < (top.0, top.1) {
                heap.pop();
                heap.push(Keyed(key, i, post));
            }
        }
    }
    let mut out: Vec<Post> = heap.into_iter().map(|k| k.2).collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

/// Posts from the top and bottom of the aggregate-score distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSplit {
    pub dogmatic: Vec<Post>,
    pub nondogmatic: Vec<Post>,
    pub lower_cut: u8,
    pub upper_cut: u8,
}

impl LabeledSplit {
    /// Texts and labels (`true` = dogmatic), dogmatic first.
    pub fn documents(&self) -> (Vec<&str>, Vec<bool>) {
        let docs = self
            .dogmatic
            .iter()
            .chain(&self.nondogmatic)
            .map(|p| p.body.as_str())
            .collect();
        let labels = std::iter::repeat_n(true, self.dogmatic.len())
            .chain(std::iter::repeat_n(false, self.nondogmatic.len()))
            .collect();
        (docs, labels)
    }

    pub fn is_extreme(&self, aggregate: u8) -> bool {
        aggregate <= self.lower_cut || aggregate >= self.upper_cut
    }
}

/// Quartile cut points over aggregate scores.
///
/// `lower` is the largest value whose cumulative count from the bottom stays
/// within `ceil(N/4)`; `upper` mirrors it from the top. A value group that
/// would push a class past the quarter is excluded whole.
pub fn quartile_cuts(aggregates: &[u8]) -> Result<(u8, u8)> {
    let n = aggregates.len();
    if n < 4 {
        return Err(Error::InvalidInput(format!(
            "quartile split needs at least 4 annotated comments, found {n}"
        )));
    }
    let quarter = n.div_ceil(4);
    let mut counts = [0usize; 256];
    for &a in aggregates {
        counts[a as usize] += 1;
    }

    let mut lower = None;
    let mut cum = 0;
    for v in 0..=255u8 {
        cum += counts[v as usize];
        if cum > quarter {
            break;
        }
        if counts[v as usize] > 0 {
            lower = Some(v);
        }
    }
    let mut upper = None;
    cum = 0;
    for v in (0..=255u8).rev() {
        cum += counts[v as usize];
        if cum > quarter {
            break;
        }
        if counts[v as usize] > 0 {
            upper = Some(v);
        }
    }

    match (lower, upper) {
        (Some(lo), Some(hi)) if lo < hi => Ok((lo, hi)),
        _ => {
            let (v, c) = counts
                .iter()
                .enumerate()
                .max_by_key(|&(_, c)| c)
                .map(|(v, &c)| (v, c))
                .unwrap_or_default();
            Err(Error::Degenerate(format!(
                "no quartile cut possible: aggregate {v} holds {c} of {n} comments; \
                 choose cut points manually"
            )))
        }
    }
}

/// Keeps only the top and bottom quartiles of the aggregate distribution.
pub fn quartile_split(annotated: &[AnnotatedComment]) -> Result<LabeledSplit> {
    let aggregates: Vec<u8> = annotated.iter().map(|a| a.aggregate()).collect();
    let (lower, upper) = quartile_cuts(&aggregates)?;
    split_with_cuts(annotated, lower, upper)
}

/// Split with caller-chosen cuts: `aggregate <= lower` is non-dogmatic,
/// `aggregate >= upper` dogmatic.
pub fn split_with_cuts(
    annotated: &[AnnotatedComment],
    lower: u8,
    upper: u8,
) -> Result<LabeledSplit> {
    if lower >= upper {
        return Err(Error::InvalidInput(format!(
            "lower cut {lower} must be below upper cut {upper}"
        )));
    }
    let mut split = LabeledSplit {
        dogmatic: Vec::new(),
        nondogmatic: Vec::new(),
        lower_cut: lower,
        upper_cut: upper,
    };
    for a in annotated {
        if a.aggregate() >= upper {
            split.dogmatic.push(a.post.clone());
        } else if a.aggregate() <= lower {
            split.nondogmatic.push(a.post.clone());
        }
    }
    Ok(split)
}
