//! Feature families: TF-IDF unigrams (BOW), emotion proportions (SENT) and
//! the 18 lexicon-category proportions (LING), plus their concatenations.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::lexicon::{for_each_token, Lexicon};
use crate::{Error, Result};

/// Identifier of the TF-IDF weighting written into model files.
pub const TFIDF_VARIANT: &str = "smooth_idf_l2_v1";

pub const DEFAULT_MIN_DF: u64 = 2;

pub const SENT_CATEGORIES: [&str; 2] = ["positive_emotion", "negative_emotion"];

pub const LING_CATEGORIES: [&str; 18] = [
    "certainty",
    "tentativeness",
    "insight",
    "perception",
    "relativity",
    "comparison",
    "i",
    "you",
    "we",
    "they",
    "past",
    "present",
    "future",
    "interrogatory",
    "negation",
    "negative_emotion",
    "positive_emotion",
    "swear",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureFamily {
    Bow,
    Sent,
    Ling,
    BowSent,
    BowLing,
}

impl FeatureFamily {
    pub const ALL: [FeatureFamily; 5] = [
        FeatureFamily::Bow,
        FeatureFamily::Sent,
        FeatureFamily::Ling,
        FeatureFamily::BowSent,
        FeatureFamily::BowLing,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FeatureFamily::Bow => "bow",
            FeatureFamily::Sent => "sent",
            FeatureFamily::Ling => "ling",
            FeatureFamily::BowSent => "bow_sent",
            FeatureFamily::BowLing => "bow_ling",
        }
    }

    pub fn uses_bow(self) -> bool {
        matches!(
            self,
            FeatureFamily::Bow | FeatureFamily::BowSent | FeatureFamily::BowLing
        )
    }

    /// Lexicon categories the family reads, in feature order.
    pub fn lexicon_categories(self) -> &'static [&'static str] {
        match self {
            FeatureFamily::Bow => &[],
            FeatureFamily::Sent | FeatureFamily::BowSent => &SENT_CATEGORIES,
            FeatureFamily::Ling | FeatureFamily::BowLing => &LING_CATEGORIES,
        }
    }

    pub fn needs_lexicon(self) -> bool {
        !self.lexicon_categories().is_empty()
    }

    fn combine(self, other: FeatureFamily) -> FeatureFamily {
        match (self, other) {
            (FeatureFamily::Bow, FeatureFamily::Sent) => FeatureFamily::BowSent,
            (FeatureFamily::Bow, FeatureFamily::Ling) => FeatureFamily::BowLing,
            (left, _) => left,
        }
    }
}

impl fmt::Display for FeatureFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FeatureFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace(['+', '-'], "_");
        FeatureFamily::ALL
            .into_iter()
            .find(|f| f.as_str() == norm)
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "unknown feature family `{s}` (expected bow, sent, ling, bow_sent or bow_ling)"
                ))
            })
    }
}

/// Frozen term index with document frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct Vocabulary {
    terms: Vec<String>,
    index: HashMap<String, u32>,
    df: Vec<u64>,
    doc_total: u64,
}

impl Vocabulary {
    /// Rebuilds a vocabulary from stored parts. Terms must be unique and
    /// every df in `1..=doc_total`.
    pub fn from_parts(terms: Vec<String>, df: Vec<u64>, doc_total: u64) -> Result<Self> {
        if terms.len() != df.len() {
            return Err(Error::DimensionMismatch {
                expected: terms.len(),
                found: df.len(),
            });
        }
        if let Some((t, d)) = terms.iter().zip(&df).find(|(_, &d)| d == 0 || d > doc_total) {
            return Err(Error::InvalidInput(format!(
                "term `{t}` has document frequency {d} outside 1..={doc_total}"
            )));
        }
        let mut index = HashMap::with_capacity(terms.len());
        for (i, t) in terms.iter().enumerate() {
            if index.insert(t.clone(), i as u32).is_some() {
                return Err(Error::InvalidInput(format!("duplicate vocabulary term `{t}`")));
            }
        }
        Ok(Vocabulary {
            terms,
            index,
            df,
            doc_total,
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn document_frequencies(&self) -> &[u64] {
        &self.df
    }

    pub fn document_total(&self) -> u64 {
        self.doc_total
    }

    pub fn get(&self, term: &str) -> Option<usize> {
        self.index.get(term).map(|&i| i as usize)
    }

    pub fn idf(&self, i: usize) -> f64 {
        ((1.0 + self.doc_total as f64) / (1.0 + self.df[i] as f64)).ln() + 1.0
    }
}

/// Builds a vocabulary over tokenizer output, keeping terms that occur in at
/// least `min_df` documents. Terms are in lexicographic order.
pub fn build_vocabulary<S: AsRef<str>>(docs: &[S], min_df: u64) -> Result<Vocabulary> {
    if docs.is_empty() {
        return Err(Error::InvalidInput("cannot build a vocabulary from zero documents".into()));
    }
    let mut df: HashMap<String, u64> = HashMap::new();
    let mut seen: HashSet<String> = HashSet::new();
    for doc in docs {
        seen.clear();
        for_each_token(doc.as_ref(), |t| {
            if !seen.contains(t) {
                seen.insert(t.to_string());
            }
        });
        for t in seen.drain() {
            *df.entry(t).or_default() += 1;
        }
    }
    let kept: BTreeMap<String, u64> = df.into_iter().filter(|(_, d)| *d >= min_df).collect();
    if kept.is_empty() {
        return Err(Error::Degenerate(format!(
            "vocabulary is empty: no term occurs in at least {min_df} documents"
        )));
    }
    let (terms, df): (Vec<String>, Vec<u64>) = kept.into_iter().unzip();
    Vocabulary::from_parts(terms, df, docs.len() as u64)
}

/// Sparse feature vector with strictly increasing indices.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    indices: Vec<u32>,
    values: Vec<f64>,
    dimension: usize,
    family: FeatureFamily,
}

impl FeatureVector {
    pub fn new(
        indices: Vec<u32>,
        values: Vec<f64>,
        dimension: usize,
        family: FeatureFamily,
    ) -> Result<Self> {
        if indices.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: indices.len(),
                found: values.len(),
            });
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("feature indices must be strictly increasing".into()));
        }
        if let Some(&i) = indices.last() {
            if i as usize >= dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    found: i as usize + 1,
                });
            }
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("feature values must be finite".into()));
        }
        Ok(FeatureVector {
            indices,
            values,
            dimension,
            family,
        })
    }

    /// Sparse vector from dense values; zeros are not stored.
    pub fn from_dense(values: &[f64], family: FeatureFamily) -> Result<Self> {
        let (indices, kept): (Vec<u32>, Vec<f64>) = values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, &v)| (i as u32, v))
            .unzip();
        FeatureVector::new(indices, kept, values.len(), family)
    }

    pub fn zero(dimension: usize, family: FeatureFamily) -> Self {
        FeatureVector {
            indices: Vec::new(),
            values: Vec::new(),
            dimension,
            family,
        }
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn family(&self) -> FeatureFamily {
        self.family
    }

    pub fn nnz(&self) -> usize {
        self.indices.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.indices
            .iter()
            .zip(&self.values)
            .map(|(&i, &v)| (i as usize, v))
    }

    pub fn get(&self, index: usize) -> f64 {
        match self.indices.binary_search(&(index as u32)) {
            Ok(pos) => self.values[pos],
            Err(_) => 0.0,
        }
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.dimension];
        for (i, v) in self.iter() {
            out[i] = v;
        }
        out
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Dot product with a dense vector of at least `dimension` entries.
    pub fn dot(&self, dense: &[f64]) -> f64 {
        self.iter().map(|(i, v)| v * dense[i]).sum()
    }
}

/// TF-IDF vector of `doc`: `tf · (ln((1 + D) / (1 + df)) + 1)`, scaled to
/// unit Euclidean norm. Out-of-vocabulary tokens are ignored.
pub fn tfidf(doc: &str, vocab: &Vocabulary) -> FeatureVector {
    let mut hits = Vec::new();
    for_each_token(doc, |t| {
        if let Some(i) = vocab.get(t) {
            hits.push(i as u32);
        }
    });
    tfidf_from_hits(hits, vocab)
}

fn tfidf_from_hits(mut hits: Vec<u32>, vocab: &Vocabulary) -> FeatureVector {
    hits.sort_unstable();
    let mut indices = Vec::new();
    let mut values = Vec::new();
    let mut i = 0;
    while i < hits.len() {
        let mut j = i;
        while j < hits.len() && hits[j] == hits[i] {
            j += 1;
        }
        indices.push(hits[i]);
        values.push((j - i) as f64 * vocab.idf(hits[i] as usize));
        i = j;
    }
    let norm = values.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        values.iter_mut().for_each(|v| *v /= norm);
    }
    FeatureVector {
        indices,
        values,
        dimension: vocab.len(),
        family: FeatureFamily::Bow,
    }
}

fn resolve_categories(lexicon: &Lexicon, names: &[&str]) -> Result<Vec<usize>> {
    names
        .iter()
        .map(|n| lexicon.index_of(n).ok_or_else(|| Error::MissingCategory(n.to_string())))
        .collect()
}

fn proportions_vector(
    counts: &crate::lexicon::CategoryCounts,
    categories: &[usize],
    family: FeatureFamily,
) -> FeatureVector {
    let dense: Vec<f64> = categories.iter().map(|&c| counts.proportion(c)).collect();
    FeatureVector::from_dense(&dense, family).expect("proportions are finite")
}

/// Proportions of positive and negative emotion tokens, in that order.
pub fn sent_features(doc: &str, lexicon: &Lexicon) -> Result<FeatureVector> {
    let cats = resolve_categories(lexicon, &SENT_CATEGORIES)?;
    Ok(proportions_vector(&lexicon.count_text(doc), &cats, FeatureFamily::Sent))
}

/// Proportions of the 18 LING categories, in [`LING_CATEGORIES`] order.
pub fn ling_features(doc: &str, lexicon: &Lexicon) -> Result<FeatureVector> {
    let cats = resolve_categories(lexicon, &LING_CATEGORIES)?;
    Ok(proportions_vector(&lexicon.count_text(doc), &cats, FeatureFamily::Ling))
}

/// Places `b` after `a`: its indices are shifted by `a.dimension()`.
pub fn concat_features(a: &FeatureVector, b: &FeatureVector) -> FeatureVector {
    let shift = a.dimension as u32;
    let mut indices = a.indices.clone();
    indices.extend(b.indices.iter().map(|&i| i + shift));
    let mut values = a.values.clone();
    values.extend_from_slice(&b.values);
    FeatureVector {
        indices,
        values,
        dimension: a.dimension + b.dimension,
        family: a.family.combine(b.family),
    }
}

/// Everything needed to featurize a document the same way at training and
/// scoring time.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSpace {
    pub family: FeatureFamily,
    pub vocabulary: Option<Vocabulary>,
    pub min_df: u64,
}

impl FeatureSpace {
    /// Fits the data-dependent part (the vocabulary) on `docs`.
    pub fn fit<S: AsRef<str>>(family: FeatureFamily, docs: &[S], min_df: u64) -> Result<Self> {
        let vocabulary = if family.uses_bow() {
            Some(build_vocabulary(docs, min_df)?)
        } else {
            None
        };
        Ok(FeatureSpace {
            family,
            vocabulary,
            min_df,
        })
    }

    pub fn categories(&self) -> &'static [&'static str] {
        self.family.lexicon_categories()
    }

    pub fn dimension(&self) -> usize {
        self.vocabulary.as_ref().map_or(0, Vocabulary::len) + self.categories().len()
    }

    /// Binds the space to a lexicon. Families without lexicon features accept
    /// `None`.
    pub fn featurizer<'a>(&'a self, lexicon: Option<&'a Lexicon>) -> Result<Featurizer<'a>> {
        let categories = match (self.family.needs_lexicon(), lexicon) {
            (false, _) => Vec::new(),
            (true, Some(lex)) => resolve_categories(lex, self.categories())?,
            (true, None) => {
                return Err(Error::InvalidInput(format!(
                    "feature family {} needs a lexicon",
                    self.family
                )))
            }
        };
        Ok(Featurizer {
            space: self,
            lexicon,
            categories,
        })
    }
}

/// A [`FeatureSpace`] bound to a lexicon. Tokenizes each document once.
#[derive(Debug, Clone)]
pub struct Featurizer<'a> {
    space: &'a FeatureSpace,
    lexicon: Option<&'a Lexicon>,
    categories: Vec<usize>,
}

impl Featurizer<'_> {
    pub fn dimension(&self) -> usize {
        self.space.dimension()
    }

    pub fn featurize(&self, doc: &str) -> FeatureVector {
        let mut tokens: Vec<String> = Vec::new();
        for_each_token(doc, |t| tokens.push(t.to_string()));

        let bow = self.space.vocabulary.as_ref().map(|vocab| {
            let hits = tokens
                .iter()
                .filter_map(|t| vocab.get(t).map(|i| i as u32))
                .collect();
            tfidf_from_hits(hits, vocab)
        });
        let lex = self.lexicon.filter(|_| !self.categories.is_empty()).map(|lex| {
            let counts = lex.count_tokens(tokens.iter().map(String::as_str));
            let family = match self.space.family {
                FeatureFamily::Sent | FeatureFamily::BowSent => FeatureFamily::Sent,
                _ => FeatureFamily::Ling,
            };
            proportions_vector(&counts, &self.categories, family)
        });
        match (bow, lex) {
            (Some(b), Some(l)) => concat_features(&b, &l),
            (Some(b), None) => b,
            (None, Some(l)) => l,
            (None, None) => FeatureVector::zero(0, self.space.family),
        }
    }
}
