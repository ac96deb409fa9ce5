use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::Args;
use dogma::analysis::{
    behavior_features, build_profiles, cluster_by_association, dogmatic_pair_counts,
    enrichment_test, extract_triples, odds_table, score_corpus, subreddit_rankings,
    user_mean_scores, Scorer, StreamOptions, TripleScores, DEFAULT_DOGMATIC_THRESHOLD,
    DEFAULT_MIN_POSTS, DEFAULT_MIN_POSTS_PER_SUB,
};
use dogma::corpus::{
    load_annotations, load_posts, quartile_cuts, quartile_split, write_posts, AnnotatedComment,
    LengthBounds, LoadOptions, Post, RatingRecord,
};
use dogma::features::DEFAULT_MIN_DF;
use dogma::model::{
    cross_validate, save_model, LogisticModel, TrainConfig, DEFAULT_FOLDS, DEFAULT_L2,
};
use dogma::stats::{auc, krippendorff_alpha, DistanceMetric, OlsFit, RatingsMatrix};
use dogma::synth::{self, BehaviorSpec, ClusterSpec, CorpusSpec, TripleSpec, VocabularyHalf};
use dogma::Error;

use crate::config::{nonnegative, Settings, DEFAULT_MAX_CHARS, DEFAULT_MIN_CHARS};
use crate::inputs::{lexicon_for, model_and_lexicon, scored_posts, ScoreSource, BUILTIN_DEMO};
use crate::output::{Cell, Format, Table};
use crate::{AnnotatedArgs, Cli, Command, Failure, ScoredArgs};

/// Settings shared by every command after merging flags, config and defaults.
struct Run {
    settings: Settings,
    seed: u64,
    workers: usize,
    format: Format,
    output: Option<PathBuf>,
}

impl Run {
    fn table(&self, columns: &'static [&'static str]) -> Result<Table<Box<dyn Write>>, Failure> {
        let out: Box<dyn Write> = match &self.output {
            Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| io_error(path, e))?)),
            None => Box::new(BufWriter::new(std::io::stdout().lock())),
        };
        Table::new(out, self.format, columns).map_err(|e| self.write_error(e))
    }

    fn write_error(&self, e: std::io::Error) -> Failure {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure::Closed;
        }
        let path = self.output.clone().unwrap_or_else(|| PathBuf::from("<stdout>"));
        Failure::Core(Error::Internal(format!("writing {}: {e}", path.display())))
    }

    fn emit(&self, columns: &'static [&'static str], rows: Vec<Vec<Cell>>) -> Result<(), Failure> {
        let mut table = self.table(columns)?;
        for row in rows {
            table.row(&row).map_err(|e| self.write_error(e))?;
        }
        table.finish().map_err(|e| self.write_error(e))
    }

    fn lexicon(&self, flag: &crate::LexiconArg) -> Result<Option<String>, Failure> {
        self.settings.pick(flag.lexicon.clone(), "lexicon")
    }

    fn annotated(&self, args: &AnnotatedArgs) -> Result<Vec<AnnotatedComment>, Failure> {
        let annotations = self.settings.require_path(&args.annotations, "annotations")?;
        let corpus = self.settings.require_path(&args.corpus, "corpus")?;
        let mut annotated = load_annotations(&annotations, &corpus, LoadOptions::default())?;
        if args.filter_length {
            let min = self.settings.pick(args.min_chars, "min_chars")?.unwrap_or(DEFAULT_MIN_CHARS);
            let max = self.settings.pick(args.max_chars, "max_chars")?.unwrap_or(DEFAULT_MAX_CHARS);
            let bounds = LengthBounds::new(min, max)?;
            annotated.retain(|a| bounds.contains(a.post.char_len()));
        }
        Ok(annotated)
    }

    fn scored(&self, args: &ScoredArgs) -> Result<(PathBuf, ScoreSource), Failure> {
        let corpus = self.settings.require_path(&args.corpus, "corpus")?;
        let scores = self.settings.path(&args.scores, "scores")?;
        let model = self.settings.path(&args.model, "model")?;
        let source = match (args.scores.is_some(), args.model.is_some(), scores, model) {
            // a flag on the command line beats a config entry for the other source
            (true, _, Some(s), _) | (false, false, Some(s), None) => ScoreSource::File(s),
            (_, true, _, Some(m)) | (false, false, None, Some(m)) => ScoreSource::Model {
                model: m,
                lexicon: self.lexicon(&args.lexicon)?,
            },
            (false, false, Some(_), Some(_)) => {
                return Err(Failure::usage("the config file sets both scores and model; pass --scores or --model"))
            }
            _ => return Err(Failure::usage("pass --scores PATH or --model PATH to score the corpus")),
        };
        Ok((corpus, source))
    }

    fn train_config(&self, l2: Option<f64>, min_df: Option<u64>) -> Result<TrainConfig, Failure> {
        let l2 = nonnegative("l2_strength", self.settings.pick(l2, "l2_strength")?.unwrap_or(DEFAULT_L2))?;
        let min_df = self.settings.pick(min_df, "min_df")?.unwrap_or(DEFAULT_MIN_DF);
        Ok(TrainConfig {
            l2_strength: l2,
            min_df,
            ..TrainConfig::default()
        })
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Failure {
    Failure::Core(Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

pub fn run(cli: Cli) -> Result<(), Failure> {
    let settings = match &cli.global.config {
        Some(path) => Settings::load(path)?,
        None => Settings::default(),
    };
    let seed = settings.pick(cli.global.seed, "seed")?.unwrap_or(0);
    let workers = settings
        .pick(cli.global.workers, "workers")?
        .unwrap_or_else(|| StreamOptions::default().workers);
    if workers == 0 {
        return Err(Failure::usage("--workers must be at least 1"));
    }
    let format = settings.pick(cli.global.format, "format")?.unwrap_or_default();
    let output = settings.path(&cli.global.output, "output")?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global()
        .map_err(|e| Failure::Core(Error::Internal(format!("cannot start worker pool: {e}"))))?;
    let run = Run {
        settings,
        seed,
        workers,
        format,
        output,
    };

    match cli.command {
        Command::Agreement { annotations, metric } => agreement(&run, &annotations, metric),
        Command::Odds { data, lexicon } => {
            let lexicon = lexicon_for(run.lexicon(&lexicon)?.as_deref(), true, "the odds table")?.expect("lexicon");
            let split = quartile_split(&run.annotated(&data)?)?;
            let dog: Vec<&str> = split.dogmatic.iter().map(|p| p.body.as_str()).collect();
            let non: Vec<&str> = split.nondogmatic.iter().map(|p| p.body.as_str()).collect();
            let rows = odds_table(&dog, &non, &lexicon)?
                .into_iter()
                .map(|r| vec![r.category.into(), r.odds_ratio.into(), r.p_raw.into(), r.p_holm.into(), r.significant.into()])
                .collect();
            run.emit(&["category", "odds_ratio", "p_raw", "p_holm", "significant"], rows)
        }
        Command::Train {
            data,
            lexicon,
            training,
            model,
        } => {
            let family = training.family;
            let lexicon = lexicon_for(run.lexicon(&lexicon)?.as_deref(), family.needs_lexicon(), &format!("the {family} feature family"))?;
            let out = run.settings.require_path(&model, "model")?;
            let config = run.train_config(training.l2_strength, training.min_df)?;
            let split = quartile_split(&run.annotated(&data)?)?;
            let (docs, labels) = split.documents();
            let fitted = LogisticModel::fit(&docs, &labels, family, &config, lexicon.as_ref())?;
            save_model(&fitted, &out)?;
            eprintln!(
                "trained {family} on {} comments ({} dogmatic); {} features, {} iterations{}",
                docs.len(),
                split.dogmatic.len(),
                fitted.regression.dimension(),
                fitted.regression.iterations,
                if fitted.regression.converged { "" } else { " (not converged)" }
            );
            Ok(())
        }
        Command::Eval {
            data,
            lexicon,
            families,
            l2_strength,
            min_df,
            folds,
            model,
        } => {
            let lexicon = run.lexicon(&lexicon)?;
            let annotated = run.annotated(&data)?;
            let split = quartile_split(&annotated)?;
            let (docs, labels) = split.documents();
            let columns = &["family", "fold", "auc"];
            if let Some(path) = model {
                let (model, lexicon) = model_and_lexicon(&path, lexicon.as_deref())?;
                let featurizer = model.featurizer(lexicon.as_ref())?;
                let scores = docs
                    .iter()
                    .map(|d| model.predict_proba(&featurizer.featurize(d)))
                    .collect::<Result<Vec<f64>, _>>()?;
                let a = auc(&scores, &labels)?;
                eprintln!("held-out AUC {a:.4}");
                return run.emit(columns, vec![vec![model.space.family.to_string().into(), "held_out".into(), a.into()]]);
            }
            let config = run.train_config(l2_strength, min_df)?;
            let k = run.settings.pick(folds, "folds")?.unwrap_or(DEFAULT_FOLDS);
            let needs = families.iter().any(|f| f.needs_lexicon());
            let lexicon = lexicon_for(lexicon.as_deref(), needs, "a lexicon feature family")?;
            let mut rows = Vec::new();
            for family in families {
                let report = cross_validate(&docs, &labels, family, k, run.seed, &config, lexicon.as_ref())?;
                for (i, a) in report.fold_aucs.iter().enumerate() {
                    rows.push(vec![family.to_string().into(), (i + 1).to_string().into(), (*a).into()]);
                }
                rows.push(vec![family.to_string().into(), "mean".into(), report.mean_auc.into()]);
                eprintln!("{family}: mean AUC {:.4} over {k} folds", report.mean_auc);
            }
            run.emit(columns, rows)
        }
        Command::Predict {
            corpus,
            model,
            lexicon,
            chunk_size,
        } => {
            let corpus = run.settings.require_path(&corpus, "corpus")?;
            let model_path = run.settings.require_path(&model, "model")?;
            let (model, lexicon) = model_and_lexicon(&model_path, run.lexicon(&lexicon)?.as_deref())?;
            let scorer = Scorer::new(&model, lexicon.as_ref())?;
            let posts = load_posts(
                &corpus,
                LoadOptions {
                    unique_ids: false,
                    ..LoadOptions::default()
                },
            )?;
            let mut table = run.table(&["id", "p_dogmatic"])?;
            let options = StreamOptions {
                chunk_size,
                workers: run.workers,
            };
            let mut write_failure = None;
            let streamed = score_corpus(&scorer, posts, &options, |s| {
                table.row(&[s.post.id.into(), s.p_dogmatic.into()]).map_err(|e| {
                    write_failure = Some(e);
                    Error::Internal("output failed".into())
                })
            });
            if let Some(e) = write_failure {
                return Err(run.write_error(e));
            }
            streamed?;
            table.finish().map_err(|e| run.write_error(e))
        }
        Command::Subreddits { scored, min_posts } => {
            let (corpus, source) = run.scored(&scored)?;
            let min_posts = run.settings.pick(min_posts, "min_posts")?.unwrap_or(DEFAULT_MIN_POSTS);
            let posts = scored_posts(&corpus, &source, run.workers)?;
            let rows = subreddit_rankings(&posts, min_posts)
                .into_iter()
                .enumerate()
                .map(|(i, r)| vec![(i + 1).into(), r.subreddit.into(), r.mean_score.into(), r.n.into()])
                .collect();
            run.emit(&["rank", "subreddit", "mean_score", "posts"], rows)
        }
        Command::Clusters {
            scored,
            min_posts_per_sub,
            dogmatic_threshold,
            top_k,
            anchor,
            other,
            baseline,
        } => {
            let (corpus, source) = run.scored(&scored)?;
            let min_posts = run
                .settings
                .pick(min_posts_per_sub, "min_posts_per_sub")?
                .unwrap_or(DEFAULT_MIN_POSTS_PER_SUB);
            let threshold = run
                .settings
                .pick(dogmatic_threshold, "dogmatic_threshold")?
                .unwrap_or(DEFAULT_DOGMATIC_THRESHOLD);
            if !(0.0..=1.0).contains(&threshold) {
                return Err(Failure::usage(format!("dogmatic threshold {threshold} outside [0, 1]")));
            }
            let posts = scored_posts(&corpus, &source, run.workers)?;
            let profiles = build_profiles(&posts, min_posts, threshold);
            if let (Some(anchor), Some(other)) = (anchor, other) {
                let r = enrichment_test(&profiles, &anchor, &other, baseline)?;
                let label = match baseline {
                    dogma::analysis::EnrichmentBaseline::QualifiedInBoth => "qualified",
                    dogma::analysis::EnrichmentBaseline::AllProfiles => "all",
                };
                return run.emit(
                    &["anchor", "other", "baseline", "anchored_users", "also_dogmatic", "base_rate", "p_value"],
                    vec![vec![anchor.into(), other.into(), label.into(), r.n.into(), r.k.into(), r.base_rate.into(), r.p_value.into()]],
                );
            }
            let counts = dogmatic_pair_counts(&profiles);
            if counts.is_empty() {
                eprintln!("no user is dogmatic on two qualifying subreddits");
                return run.emit(&["subreddit", "rank", "neighbour", "pmi"], Vec::new());
            }
            let mut rows = Vec::new();
            for (sub, list) in cluster_by_association(&counts, top_k)? {
                for (i, (n, s)) in list.into_iter().enumerate() {
                    rows.push(vec![sub.clone().into(), (i + 1).into(), n.into(), s.into()]);
                }
            }
            run.emit(&["subreddit", "rank", "neighbour", "pmi"], rows)
        }
        Command::Behavior { scored } => {
            let (corpus, source) = run.scored(&scored)?;
            let scored = scored_posts(&corpus, &source, run.workers)?;
            let posts: Vec<Post> = scored.iter().map(|s| s.post.clone()).collect();
            let features = behavior_features(&posts);
            let fit = dogma::analysis::behavior_regression(&features, &user_mean_scores(&scored))?;
            emit_fit(&run, &fit)
        }
        Command::Triples { scored, quote_control } => {
            let (corpus, source) = run.scored(&scored)?;
            let posts = crate::inputs::read_all_posts(&corpus)?;
            let triples = extract_triples(&posts);
            let scores = match &source {
                ScoreSource::Model { model, lexicon } => {
                    let (model, lexicon) = model_and_lexicon(model, lexicon.as_deref())?;
                    let scorer = Scorer::new(&model, lexicon.as_ref())?;
                    TripleScores::compute(&triples, |t| scorer.score(t), quote_control)?
                }
                ScoreSource::File(path) => {
                    if quote_control {
                        return Err(Failure::usage("--quote-control rescores text and needs --model"));
                    }
                    let by_id = crate::inputs::read_scores(path)?;
                    let get = |p: &Post| {
                        by_id.get(&p.id).copied().ok_or_else(|| Error::Record {
                            id: p.id.clone(),
                            message: format!("no score in {}", path.display()),
                        })
                    };
                    let mut s = TripleScores {
                        a1: Vec::new(),
                        b: Vec::new(),
                        a2: Vec::new(),
                    };
                    for t in &triples {
                        s.a1.push(get(t.a1)?);
                        s.b.push(get(t.b)?);
                        s.a2.push(get(t.a2)?);
                    }
                    s
                }
            };
            emit_fit(&run, &scores.fit()?)
        }
        Command::Synth(args) => synthesize(&run, &args),
    }
}

fn agreement(run: &Run, annotations: &Option<PathBuf>, metric: DistanceMetric) -> Result<(), Failure> {
    let path = run.settings.require_path(annotations, "annotations")?;
    let records = dogma::corpus::load_ratings(&path)?;
    let aggregates: Vec<u8> = records.iter().map(|r| r.ratings.iter().sum::<i64>() as u8).collect();
    let (lower, upper) = quartile_cuts(&aggregates)?;
    let rows = |keep: &dyn Fn(u8) -> bool| -> Vec<Vec<i64>> {
        records
            .iter()
            .zip(&aggregates)
            .filter(|(_, &a)| keep(a))
            .map(|(r, _)| r.ratings.clone())
            .collect()
    };
    let all = rows(&|_| true);
    let extremes = rows(&|a| a <= lower || a >= upper);
    let alpha = |rows: &[Vec<i64>]| -> Result<f64, Failure> {
        Ok(krippendorff_alpha(&RatingsMatrix::complete(rows, 1, 5)?, metric)?)
    };
    let table = vec![
        vec!["all".into(), all.len().into(), alpha(&all)?.into()],
        vec!["extremes".into(), extremes.len().into(), alpha(&extremes)?.into()],
    ];
    run.emit(&["subset", "units", "alpha"], table)
}

fn emit_fit(run: &Run, fit: &OlsFit) -> Result<(), Failure> {
    eprintln!(
        "n = {}, R^2 = {:.4}, F = {:.3} (p = {:.3e})",
        fit.n_obs, fit.r_squared, fit.f_statistic, fit.f_p_value
    );
    let rows = (0..fit.terms.len())
        .map(|i| {
            vec![
                fit.terms[i].clone().into(),
                fit.coefficients[i].into(),
                fit.std_errors[i].into(),
                fit.t_values[i].into(),
                fit.p_values[i].into(),
                fit.n_obs.into(),
                fit.r_squared.into(),
            ]
        })
        .collect();
    run.emit(&["term", "coefficient", "std_error", "t_value", "p_value", "n", "r_squared"], rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SynthKind {
    /// Annotated comments with planted category rates
    Corpus,
    /// Training and held-out corpora drawing on disjoint halves of each category's words
    Shifted,
    /// Users with planted behavioural effects, with per-post scores
    Behavior,
    /// Two blocks of subreddits sharing dogmatic users, with per-post scores
    Clusters,
    /// A1 -> B -> A2 reply chains with planted contagion
    Triples,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// What to generate
    #[arg(long, value_enum)]
    kind: SynthKind,
    /// Directory to write into (created if missing)
    #[arg(long, value_name = "DIR")]
    out_dir: PathBuf,
    /// Lexicon whose words the corpus uses [default: builtin:demo]
    #[arg(long, value_name = "PATH")]
    lexicon: Option<String>,
    /// Annotated comments to generate
    #[arg(long, default_value_t = 5000)]
    n_docs: usize,
    /// Per-token rate of each category in the least dogmatic comments
    #[arg(long, default_value_t = 0.015)]
    base_rate: f64,
    /// Planted rate multiplier in the most dogmatic comments, as CATEGORY=M;
    /// repeatable, replaces the built-in set
    #[arg(long = "multiplier", value_name = "CATEGORY=M", value_parser = parse_multiplier)]
    multipliers: Vec<(String, f64)>,
    /// Plant nothing: every category has multiplier 1
    #[arg(long, conflicts_with = "multipliers")]
    no_planted: bool,
    /// Standard deviation of each rater's noise on the 1-5 scale
    #[arg(long, default_value_t = 0.5)]
    rating_noise: f64,
    /// Users in the behaviour or cluster population
    #[arg(long)]
    n_users: Option<usize>,
    /// Subreddits in the behaviour or cluster population
    #[arg(long)]
    n_subreddits: Option<usize>,
    /// Planted coefficients on z-scored activity, breadth, focus, engagement
    #[arg(long, value_delimiter = ',', num_args = 4, default_values_t = [0.1, -0.1, 0.1, -0.1])]
    coefficients: Vec<f64>,
    /// Noise on users' mean scores, or on A2's score
    #[arg(long)]
    noise: Option<f64>,
    /// Reply chains to generate
    #[arg(long, default_value_t = 100_000)]
    n_triples: usize,
    /// Planted effect of B's score on A2's
    #[arg(long, default_value_t = 0.3)]
    b_coefficient: f64,
    /// Planted effect of A1's score on A2's
    #[arg(long, default_value_t = 0.5)]
    a1_coefficient: f64,
    /// Intercept of A2's score
    #[arg(long, default_value_t = 0.2)]
    intercept: f64,
    /// Chance a user's dogmatic subreddit comes from the other block
    #[arg(long, default_value_t = 0.15)]
    cross_block_rate: f64,
}

fn parse_multiplier(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or("expected CATEGORY=M")?;
    let m: f64 = value.parse().map_err(|e| format!("{value}: {e}"))?;
    Ok((name.trim().to_string(), m))
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    Ok(BufWriter::new(File::create(path).map_err(|e| io_error(path, e))?))
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), Failure> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| io_error(path, e.into()))?;
    w.write_all(b"\n").and_then(|_| w.flush()).map_err(|e| io_error(path, e))
}

fn write_corpus(dir: &Path, corpus: &synth::SynthCorpus, lexicon_name: &str) -> Result<(), Failure> {
    std::fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    let posts = dir.join("posts.jsonl");
    write_posts(create(&posts)?, corpus.posts()).map_err(|e| io_error(&posts, e))?;
    let ratings = dir.join("ratings.jsonl");
    let mut w = create(&ratings)?;
    for c in &corpus.comments {
        let record = RatingRecord {
            id: c.post.id.clone(),
            ratings: c.ratings().iter().map(|&r| i64::from(r)).collect(),
        };
        serde_json::to_writer(&mut w, &record).map_err(|e| io_error(&ratings, e.into()))?;
        w.write_all(b"\n").map_err(|e| io_error(&ratings, e))?;
    }
    w.flush().map_err(|e| io_error(&ratings, e))?;
    let latent: BTreeMap<&str, f64> = corpus.posts().map(|p| p.id.as_str()).zip(corpus.latent.iter().copied()).collect();
    write_json(
        &dir.join("truth.json"),
        &serde_json::json!({
            "kind": "corpus",
            "lexicon": lexicon_name,
            "strata": synth::STRATA,
            "spec": corpus.spec,
            "latent_dogmatism": latent,
        }),
    )
}

fn write_scored(dir: &Path, scored: &[dogma::analysis::ScoredPost]) -> Result<(), Failure> {
    std::fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    let posts = dir.join("posts.jsonl");
    write_posts(create(&posts)?, scored.iter().map(|s| &s.post)).map_err(|e| io_error(&posts, e))?;
    let path = dir.join("scores.tsv");
    let mut table = Table::new(create(&path)?, Format::Tsv, &["id", "p_dogmatic"]).map_err(|e| io_error(&path, e))?;
    for s in scored {
        table
            .row(&[s.post.id.clone().into(), s.p_dogmatic.into()])
            .map_err(|e| io_error(&path, e))?;
    }
    table.finish().map_err(|e| io_error(&path, e))
}

fn synthesize(run: &Run, args: &SynthArgs) -> Result<(), Failure> {
    let dir = &args.out_dir;
    match args.kind {
        SynthKind::Corpus | SynthKind::Shifted => {
            let lexicon_name = args.lexicon.clone().unwrap_or_else(|| BUILTIN_DEMO.to_string());
            let lexicon = crate::inputs::load_lexicon(&lexicon_name)?;
            let mut spec = CorpusSpec {
                n_docs: args.n_docs,
                base_rate: args.base_rate,
                rating_noise: args.rating_noise,
                seed: run.seed,
                ..CorpusSpec::default()
            };
            if args.no_planted {
                spec.multipliers.clear();
            } else if !args.multipliers.is_empty() {
                spec.multipliers = args.multipliers.iter().cloned().collect();
            }
            if args.kind == SynthKind::Corpus {
                let corpus = synth::generate_corpus(&spec, &lexicon)?;
                write_corpus(dir, &corpus, &lexicon_name)?;
            } else {
                let (train, held_out) = synth::generate_shifted(&spec, &lexicon)?;
                debug_assert_eq!(train.spec.vocabulary, VocabularyHalf::First);
                write_corpus(&dir.join("train"), &train, &lexicon_name)?;
                write_corpus(&dir.join("held_out"), &held_out, &lexicon_name)?;
            }
        }
        SynthKind::Behavior => {
            let defaults = BehaviorSpec::default();
            let spec = BehaviorSpec {
                n_users: args.n_users.unwrap_or(defaults.n_users),
                n_subreddits: args.n_subreddits.unwrap_or(defaults.n_subreddits),
                coefficients: args.coefficients.clone().try_into().map_err(|_| Failure::usage("--coefficients takes four values"))?,
                noise: args.noise.unwrap_or(defaults.noise),
                seed: run.seed,
                ..defaults
            };
            let pop = synth::generate_behavior(&spec)?;
            write_scored(dir, &pop.scored)?;
            write_json(
                &dir.join("truth.json"),
                &serde_json::json!({
                    "kind": "behavior",
                    "terms": dogma::analysis::BEHAVIOR_TERMS,
                    "spec": pop.spec,
                    "clamped_users": pop.clamped,
                    "user_means": pop.user_means,
                }),
            )?;
        }
        SynthKind::Clusters => {
            let defaults = ClusterSpec::default();
            let spec = ClusterSpec {
                n_users: args.n_users.unwrap_or(defaults.n_users),
                n_subreddits: args.n_subreddits.unwrap_or(defaults.n_subreddits),
                cross_block_rate: args.cross_block_rate,
                seed: run.seed,
                ..defaults
            };
            let (scored, blocks) = synth::generate_clusters(&spec)?;
            write_scored(dir, &scored)?;
            write_json(
                &dir.join("truth.json"),
                &serde_json::json!({ "kind": "clusters", "spec": spec, "blocks": blocks }),
            )?;
        }
        SynthKind::Triples => {
            let defaults = TripleSpec::default();
            let spec = TripleSpec {
                n_triples: args.n_triples,
                intercept: args.intercept,
                a1_coefficient: args.a1_coefficient,
                b_coefficient: args.b_coefficient,
                noise: args.noise.unwrap_or(defaults.noise),
                seed: run.seed,
                ..defaults
            };
            let posts = synth::generate_triples(&spec)?;
            let scored: Vec<dogma::analysis::ScoredPost> = posts
                .into_iter()
                .map(|p| dogma::analysis::ScoredPost {
                    p_dogmatic: synth::marker_proportion(&p.body),
                    post: p,
                })
                .collect();
            write_scored(dir, &scored)?;
            write_json(
                &dir.join("truth.json"),
                &serde_json::json!({ "kind": "triples", "marker": synth::MARKER, "spec": spec }),
            )?;
        }
    }
    eprintln!("wrote {}", dir.display());
    Ok(())
}
