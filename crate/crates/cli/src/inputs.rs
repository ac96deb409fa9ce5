//! Loading lexicons, corpora and score files.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use dogma::analysis::{score_corpus, ScoredPost, Scorer, StreamOptions};
use dogma::corpus::{load_posts, LoadOptions, Post};
use dogma::lexicon::{parse_lexicon, Lexicon};
use dogma::model::{load_model, LogisticModel};
use dogma::Error;

use crate::Failure;

pub const BUILTIN_DEMO: &str = "builtin:demo";

pub fn load_lexicon(spec: &str) -> Result<Lexicon, Failure> {
    if spec == BUILTIN_DEMO {
        return Ok(Lexicon::demo());
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Error::Io {
        path: spec.into(),
        source: e,
    })?;
    Ok(parse_lexicon(&text)?)
}

/// Loads the lexicon if one was named; fails naming `--lexicon` when the
/// feature family needs one and none was given.
pub fn lexicon_for(spec: Option<&str>, needs: bool, what: &str) -> Result<Option<Lexicon>, Failure> {
    match spec {
        Some(s) => load_lexicon(s).map(Some),
        None if needs => Err(Failure::usage(format!(
            "{what} uses lexicon categories; pass --lexicon PATH (or --lexicon {BUILTIN_DEMO})"
        ))),
        None => Ok(None),
    }
}

pub fn read_all_posts(path: &Path) -> Result<Vec<Post>, Failure> {
    Ok(load_posts(path, LoadOptions::default())?.collect::<Result<Vec<_>, _>>()?)
}

/// Reads `id` and `p_dogmatic` from a score file written by `predict`, in
/// either output format.
pub fn read_scores(path: &Path) -> Result<HashMap<String, f64>, Failure> {
    let file = File::open(path).map_err(|e| Error::Io {
        path: path.into(),
        source: e,
    })?;
    let context = path.display().to_string();
    let parse_err = |line: usize, message: String| Error::Parse {
        context: context.clone(),
        line,
        message,
    };
    let lines = BufReader::new(file).lines().enumerate();
    let mut scores = HashMap::new();
    let mut columns: Option<(usize, usize)> = None;
    let mut jsonl = None;
    for (i, line) in lines {
        let line = line.map_err(|e| Error::Io {
            path: path.into(),
            source: e,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let is_json = *jsonl.get_or_insert_with(|| line.trim_start().starts_with('{'));
        let (id, p) = if is_json {
            let v: serde_json::Value = serde_json::from_str(&line).map_err(|e| parse_err(i + 1, e.to_string()))?;
            let id = v.get("id").and_then(|x| x.as_str()).map(str::to_string);
            let p = v.get("p_dogmatic").and_then(|x| x.as_f64());
            match (id, p) {
                (Some(id), Some(p)) => (id, p),
                _ => return Err(parse_err(i + 1, "expected string `id` and number `p_dogmatic`".into()).into()),
            }
        } else if let Some((ci, cp)) = columns {
            let fields: Vec<&str> = line.split('\t').collect();
            let (Some(id), Some(p)) = (fields.get(ci), fields.get(cp)) else {
                return Err(parse_err(i + 1, "missing columns".into()).into());
            };
            let p: f64 = p.parse().map_err(|e| parse_err(i + 1, format!("p_dogmatic: {e}")))?;
            (id.to_string(), p)
        } else {
            let header: Vec<&str> = line.split('\t').collect();
            let find = |name: &str| header.iter().position(|h| *h == name);
            match (find("id"), find("p_dogmatic")) {
                (Some(a), Some(b)) => columns = Some((a, b)),
                _ => return Err(parse_err(i + 1, "header must name `id` and `p_dogmatic`".into()).into()),
            }
            continue;
        };
        if !(0.0..=1.0).contains(&p) {
            return Err(parse_err(i + 1, format!("score {p} outside [0, 1]")).into());
        }
        if scores.insert(id.clone(), p).is_some() {
            return Err(parse_err(i + 1, format!("duplicate id {id}")).into());
        }
    }
    Ok(scores)
}

/// Where post scores come from in the analysis commands.
pub enum ScoreSource {
    File(PathBuf),
    Model { model: PathBuf, lexicon: Option<String> },
}

/// The corpus with a score attached to every post, in corpus order.
pub fn scored_posts(corpus: &Path, source: &ScoreSource, workers: usize) -> Result<Vec<ScoredPost>, Failure> {
    match source {
        ScoreSource::File(path) => {
            let scores = read_scores(path)?;
            read_all_posts(corpus)?
                .into_iter()
                .map(|post| match scores.get(&post.id) {
                    Some(&p) => Ok(ScoredPost { post, p_dogmatic: p }),
                    None => Err(Error::Record {
                        id: post.id.clone(),
                        message: format!("no score in {}", path.display()),
                    }
                    .into()),
                })
                .collect()
        }
        ScoreSource::Model { model, lexicon } => {
            let model = load_model(model)?;
            let lexicon = lexicon_for(lexicon.as_deref(), model.space.family.needs_lexicon(), &format!("the {} model", model.space.family))?;
            let scorer = Scorer::new(&model, lexicon.as_ref())?;
            let posts = load_posts(corpus, LoadOptions::default())?;
            let options = StreamOptions {
                workers,
                ..StreamOptions::default()
            };
            let mut out = Vec::new();
            score_corpus(&scorer, posts, &options, |s| {
                out.push(s);
                Ok(())
            })?;
            Ok(out)
        }
    }
}

pub fn model_and_lexicon(path: &Path, lexicon: Option<&str>) -> Result<(LogisticModel, Option<Lexicon>), Failure> {
    let model = load_model(path)?;
    let family = model.space.family;
    let lexicon = lexicon_for(lexicon, family.needs_lexicon(), &format!("the {family} model"))?;
    Ok((model, lexicon))
}
