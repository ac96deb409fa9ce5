use dogma::analysis::{odds_table, score_corpus, Scorer, StreamOptions, SIGNIFICANCE_LEVEL};
use dogma::corpus::{load_annotations, quartile_split, write_posts, LoadOptions, Post, RatingRecord};
use dogma::features::FeatureFamily;
use dogma::lexicon::Lexicon;
use dogma::model::{load_model, save_model, LogisticModel, TrainConfig};
use dogma::synth::{generate_corpus, CorpusSpec};

fn small_spec(seed: u64) -> CorpusSpec {
    CorpusSpec {
        n_docs: 1200,
        seed,
        ..CorpusSpec::default()
    }
}

#[test]
fn same_seed_gives_identical_files() {
    let lex = Lexicon::demo();
    let render = |seed| {
        let c = generate_corpus(&small_spec(seed), &lex).unwrap();
        let mut out = Vec::new();
        write_posts(&mut out, c.posts()).unwrap();
        out
    };
    assert_eq!(render(4), render(4));
    assert_ne!(render(4), render(5));
}

#[test]
fn flat_multipliers_leave_the_odds_table_quiet() {
    let lex = Lexicon::demo();
    let mut quiet = 0;
    for seed in 0..10 {
        let spec = CorpusSpec {
            multipliers: Default::default(),
            ..small_spec(seed)
        };
        let c = generate_corpus(&spec, &lex).unwrap();
        let split = quartile_split(&c.comments).unwrap();
        let dog: Vec<&str> = split.dogmatic.iter().map(|p| p.body.as_str()).collect();
        let non: Vec<&str> = split.nondogmatic.iter().map(|p| p.body.as_str()).collect();
        let rows = odds_table(&dog, &non, &lex).unwrap();
        if rows.iter().all(|r| r.p_holm >= SIGNIFICANCE_LEVEL) {
            quiet += 1;
        }
    }
    assert!(quiet >= 9, "{quiet}/10");
}

#[test]
fn tripled_certainty_is_significant() {
    let lex = Lexicon::demo();
    let spec = CorpusSpec {
        multipliers: [("certainty".to_string(), 3.0)].into(),
        ..small_spec(1)
    };
    let c = generate_corpus(&spec, &lex).unwrap();
    let split = quartile_split(&c.comments).unwrap();
    let dog: Vec<&str> = split.dogmatic.iter().map(|p| p.body.as_str()).collect();
    let non: Vec<&str> = split.nondogmatic.iter().map(|p| p.body.as_str()).collect();
    let rows = odds_table(&dog, &non, &lex).unwrap();
    let certainty = rows.iter().find(|r| r.category == "certainty").unwrap();
    assert!(certainty.odds_ratio > 1.0 && certainty.significant, "{certainty:?}");
}

#[test]
fn files_to_scores() {
    let lex = Lexicon::demo();
    let dir = tempfile::tempdir().unwrap();
    let c = generate_corpus(&small_spec(2), &lex).unwrap();
    let posts_path = dir.path().join("posts.jsonl");
    let ratings_path = dir.path().join("ratings.jsonl");
    write_posts(std::fs::File::create(&posts_path).unwrap(), c.posts()).unwrap();
    let ratings: String = c
        .comments
        .iter()
        .map(|a| {
            let r = RatingRecord {
                id: a.post.id.clone(),
                ratings: a.ratings().iter().map(|&x| i64::from(x)).collect(),
            };
            serde_json::to_string(&r).unwrap() + "\n"
        })
        .collect();
    std::fs::write(&ratings_path, ratings).unwrap();

    let annotated = load_annotations(&ratings_path, &posts_path, LoadOptions::default()).unwrap();
    assert_eq!(annotated, c.comments);
    let split = quartile_split(&annotated).unwrap();
    let (docs, labels) = split.documents();
    let model = LogisticModel::fit(&docs, &labels, FeatureFamily::BowLing, &TrainConfig::default(), Some(&lex)).unwrap();
    let model_path = dir.path().join("model.txt");
    save_model(&model, &model_path).unwrap();
    let loaded = load_model(&model_path).unwrap();
    assert_eq!(loaded, model);

    let scorer = Scorer::new(&loaded, Some(&lex)).unwrap();
    let mut scored: Vec<(String, f64)> = Vec::new();
    let posts: Vec<Post> = c.posts().cloned().collect();
    let options = StreamOptions { chunk_size: 100, workers: 3 };
    score_corpus(&scorer, posts.into_iter().map(Ok), &options, |s| {
        scored.push((s.post.id, s.p_dogmatic));
        Ok(())
    })
    .unwrap();
    assert_eq!(scored.len(), c.comments.len());
    let mean = |d: f64| {
        let v: Vec<f64> = scored.iter().zip(&c.latent).filter(|(_, &l)| l == d).map(|(s, _)| s.1).collect();
        v.iter().sum::<f64>() / v.len() as f64
    };
    assert!(mean(0.0) < mean(0.5) && mean(0.5) < mean(1.0));
}
