//! Line-oriented text format for trained models.
//!
//! ```text
//! dogma-model v1
//! l2_convention mean_loss_plus_half_l2_sq
//! l2_strength 1.5
//! family bow_ling
//! tfidf smooth_idf_l2_v1
//! min_df 2
//! iterations 57
//! converged true
//! vocabulary 3 2500            (term count, training document count)
//! 0\t12\talways                (index, df, term)
//! ...
//! categories 18
//! certainty
//! ...
//! weights 21
//! 0.0123
//! ...
//! bias -0.04
//! end
//! ```
//!
//! Floats are written in Rust's shortest round-trip form.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use super::{LogisticModel, LogisticRegression};
use crate::features::{FeatureFamily, FeatureSpace, Vocabulary, TFIDF_VARIANT};
use crate::{Error, Result};

pub const FORMAT_VERSION: &str = "v1";
pub const L2_CONVENTION: &str = "mean_loss_plus_half_l2_sq";
const MAGIC: &str = "dogma-model";

pub fn write_model<W: Write>(model: &LogisticModel, mut w: W) -> std::io::Result<()> {
    let reg = &model.regression;
    let space = &model.space;
    writeln!(w, "{MAGIC} {FORMAT_VERSION}")?;
    writeln!(w, "l2_convention {L2_CONVENTION}")?;
    writeln!(w, "l2_strength {:?}", reg.l2_strength)?;
    writeln!(w, "family {}", space.family)?;
    writeln!(w, "tfidf {TFIDF_VARIANT}")?;
    writeln!(w, "min_df {}", space.min_df)?;
    writeln!(w, "iterations {}", reg.iterations)?;
    writeln!(w, "converged {}", reg.converged)?;
    match &space.vocabulary {
        Some(v) => {
            writeln!(w, "vocabulary {} {}", v.len(), v.document_total())?;
            for (i, (t, df)) in v.terms().iter().zip(v.document_frequencies()).enumerate() {
                writeln!(w, "{i}\t{df}\t{t}")?;
            }
        }
        None => writeln!(w, "vocabulary none")?,
    }
    let cats = space.categories();
    writeln!(w, "categories {}", cats.len())?;
    for c in cats {
        writeln!(w, "{c}")?;
    }
    writeln!(w, "weights {}", reg.weights.len())?;
    for x in &reg.weights {
        writeln!(w, "{x:?}")?;
    }
    writeln!(w, "bias {:?}", reg.bias)?;
    writeln!(w, "end")?;
    w.flush()
}

pub fn save_model(model: &LogisticModel, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_model(model, BufWriter::new(file)).map_err(|e| Error::io(path, e))
}

pub fn load_model(path: impl AsRef<Path>) -> Result<LogisticModel> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_model(BufReader::new(file), &path.display().to_string())
}

struct Lines<R> {
    inner: std::io::Lines<R>,
    line: usize,
    context: String,
}

impl<R: BufRead> Lines<R> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            context: self.context.clone(),
            line: self.line,
            message: message.into(),
        }
    }

    fn next(&mut self) -> Result<String> {
        self.line += 1;
        match self.inner.next() {
            Some(Ok(l)) => Ok(l),
            Some(Err(e)) => Err(self.error(e.to_string())),
            None => Err(self.error("unexpected end of file (truncated model?)")),
        }
    }

    /// Reads `key value` and returns the value.
    fn field(&mut self, key: &str) -> Result<String> {
        let line = self.next()?;
        match line.split_once(' ') {
            Some((k, v)) if k == key => Ok(v.to_string()),
            _ => Err(self.error(format!("expected `{key} ...`, found `{line}`"))),
        }
    }

    fn parse<T: std::str::FromStr>(&self, text: &str, what: &str) -> Result<T> {
        text.trim()
            .parse()
            .map_err(|_| self.error(format!("invalid {what} `{text}`")))
    }
}

pub fn read_model<R: BufRead>(reader: R, context: &str) -> Result<LogisticModel> {
    let mut lines = Lines {
        inner: reader.lines(),
        line: 0,
        context: context.to_string(),
    };
    let header = lines.next()?;
    let version = match header.split_once(' ') {
        Some((MAGIC, v)) => v.trim().to_string(),
        _ => return Err(lines.error("not a model file (missing `dogma-model` header)")),
    };
    if version != FORMAT_VERSION {
        return Err(Error::VersionMismatch {
            expected: FORMAT_VERSION.into(),
            found: version,
        });
    }
    let convention = lines.field("l2_convention")?;
    if convention != L2_CONVENTION {
        return Err(lines.error(format!(
            "unsupported l2 convention `{convention}` (expected {L2_CONVENTION})"
        )));
    }
    let l2 = lines.field("l2_strength")?;
    let l2_strength: f64 = lines.parse(&l2, "l2 strength")?;
    let family: FeatureFamily = lines
        .field("family")?
        .parse()
        .map_err(|e: Error| lines.error(e.to_string()))?;
    let tfidf = lines.field("tfidf")?;
    if tfidf != TFIDF_VARIANT {
        return Err(lines.error(format!(
            "unsupported tf-idf variant `{tfidf}` (expected {TFIDF_VARIANT})"
        )));
    }
    let min_df = lines.field("min_df")?;
    let min_df: u64 = lines.parse(&min_df, "min_df")?;
    let iterations = lines.field("iterations")?;
    let iterations: usize = lines.parse(&iterations, "iteration count")?;
    let converged = lines.field("converged")?;
    let converged: bool = lines.parse(&converged, "converged flag")?;

    let vocab_header = lines.field("vocabulary")?;
    let vocabulary = if vocab_header == "none" {
        None
    } else {
        let (n, total) = vocab_header
            .split_once(' ')
            .ok_or_else(|| lines.error("expected `vocabulary <terms> <documents>`"))?;
        let n: usize = lines.parse(n, "vocabulary size")?;
        let total: u64 = lines.parse(total, "document count")?;
        let mut terms = Vec::with_capacity(n);
        let mut df = Vec::with_capacity(n);
        for i in 0..n {
            let line = lines.next()?;
            let mut parts = line.splitn(3, '\t');
            let (Some(idx), Some(d), Some(term)) = (parts.next(), parts.next(), parts.next()) else {
                return Err(lines.error("expected `index<TAB>df<TAB>term`"));
            };
            if lines.parse::<usize>(idx, "term index")? != i {
                return Err(lines.error(format!("term index out of order, expected {i}")));
            }
            df.push(lines.parse(d, "document frequency")?);
            terms.push(term.to_string());
        }
        Some(Vocabulary::from_parts(terms, df, total).map_err(|e| lines.error(e.to_string()))?)
    };
    if family.uses_bow() != vocabulary.is_some() {
        return Err(lines.error(format!("family {family} does not match the vocabulary section")));
    }

    let n_cats = lines.field("categories")?;
    let n_cats: usize = lines.parse(&n_cats, "category count")?;
    let mut cats = Vec::with_capacity(n_cats);
    for _ in 0..n_cats {
        cats.push(lines.next()?);
    }
    if cats.iter().map(String::as_str).ne(family.lexicon_categories().iter().copied()) {
        return Err(lines.error(format!("category list does not match family {family}")));
    }

    let space = FeatureSpace {
        family,
        vocabulary,
        min_df,
    };
    let n_weights = lines.field("weights")?;
    let n_weights: usize = lines.parse(&n_weights, "weight count")?;
    if n_weights != space.dimension() {
        return Err(lines.error(format!(
            "{n_weights} weights for a feature space of dimension {}",
            space.dimension()
        )));
    }
    let mut weights = Vec::with_capacity(n_weights);
    for _ in 0..n_weights {
        let line = lines.next()?;
        let w: f64 = lines.parse(&line, "weight")?;
        if !w.is_finite() {
            return Err(lines.error("non-finite weight"));
        }
        weights.push(w);
    }
    let bias = lines.field("bias")?;
    let bias: f64 = lines.parse(&bias, "bias")?;
    if lines.next()? != "end" {
        return Err(lines.error("expected `end`"));
    }
    Ok(LogisticModel {
        regression: LogisticRegression {
            weights,
            bias,
            l2_strength,
            iterations,
            converged,
        },
        space,
    })
}
