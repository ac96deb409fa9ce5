//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//!
//! The last criterion needs the released annotated corpus and a full
//! lexicon; point `DOGMA_ACCEPT_CORPUS`, `DOGMA_ACCEPT_RATINGS` and
//! `DOGMA_ACCEPT_LEXICON` at them to run it.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use dogma::analysis::{
    behavior_features, behavior_regression, build_profiles, cluster_by_association,
    dogmatic_pair_counts, extract_triples, odds_table, score_corpus, user_mean_scores, Scorer,
    StreamOptions, TripleScores, BEHAVIOR_TERMS, DEFAULT_DOGMATIC_THRESHOLD,
    DEFAULT_MIN_POSTS_PER_SUB, SIGNIFICANCE_LEVEL,
};
use dogma::corpus::{load_annotations, quartile_split, AnnotatedComment, LoadOptions, Post};
use dogma::features::{FeatureFamily, FeatureVector};
use dogma::lexicon::{parse_lexicon, Lexicon};
use dogma::model::{cross_validate, LogisticModel, LogisticObjective, TrainConfig, DEFAULT_FOLDS};
use dogma::stats::{auc, holm_correct, krippendorff_alpha, mann_whitney_u, DistanceMetric, MwuMode, RatingsMatrix};
use dogma::synth::{
    generate_behavior, generate_clusters, generate_corpus, generate_shifted, generate_triples,
    marker_proportion, post_stream, BehaviorSpec, ClusterSpec, CorpusSpec, SynthCorpus, TripleSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

enum Outcome {
    Pass(String),
    Fail(String),
    Skipped(String),
}

type Check = fn() -> Outcome;

fn main() {
    let criteria: [(&str, Duration, Check); 10] = [
        ("statistical oracles", Duration::from_secs(10), statistical_oracles),
        ("auc equals normalised U", Duration::from_secs(5), auc_identity),
        ("logistic gradient check", Duration::from_secs(10), gradient_check),
        ("classifier recovery", Duration::from_secs(120), classifier_recovery),
        ("odds table recovery", Duration::from_secs(60), odds_recovery),
        ("behavioural regression", Duration::from_secs(30), behavior_recovery),
        ("triple contagion", Duration::from_secs(60), triple_recovery),
        ("cluster recovery", Duration::from_secs(30), cluster_recovery),
        ("streaming determinism and memory", Duration::from_secs(300), streaming_smoke),
        ("released corpus", Duration::from_secs(600), released_corpus),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let outcome = match outcome {
            Outcome::Pass(d) if took > *budget => {
                Outcome::Fail(format!("{d}; took {took:.1?}, budget {budget:?}"))
            }
            o => o,
        };
        let (tag, detail) = match outcome {
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Outcome::Skipped(d) => ("SKIPPED", d),
        };
        println!("criterion {:>2} {tag:<7} {name} [{took:.1?}]: {detail}", i + 1);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

macro_rules! attempt {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return Outcome::Fail(format!("{}: {e}", stringify!($e))),
        }
    };
}

// ---- 1 ----

/// Two-sided p-value from the full permutation distribution of U, found by
/// enumerating every way to choose which pooled ranks belong to `xs`.
fn brute_force_p(n1: usize, n2: usize, u_observed: u64) -> f64 {
    let n = n1 + n2;
    let (mut le, mut ge, mut total) = (0u64, 0u64, 0u64);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != n1 {
            continue;
        }
        let mut u = 0u64;
        for x in (0..n).filter(|i| mask & (1 << i) != 0) {
            u += (0..n).filter(|j| mask & (1 << j) == 0 && *j < x).count() as u64;
        }
        total += 1;
        le += u64::from(u <= u_observed);
        ge += u64::from(u >= u_observed);
    }
    ((2 * le.min(ge)) as f64 / total as f64).min(1.0)
}

/// Alpha from pairwise disagreements: observed disagreement averages
/// `(a-b)^2` over ordered within-unit pairs weighted by `1/(m-1)`, expected
/// disagreement averages it over all ordered pairs of pairable values.
fn pairwise_alpha(units: &[Vec<Option<i64>>]) -> f64 {
    let pairable: Vec<Vec<f64>> = units
        .iter()
        .map(|u| u.iter().flatten().map(|&v| v as f64).collect::<Vec<_>>())
        .filter(|u| u.len() >= 2)
        .collect();
    let n: f64 = pairable.iter().map(|u| u.len() as f64).sum();
    let mut observed = 0.0;
    for u in &pairable {
        let m = u.len() as f64;
        let mut s = 0.0;
        for (i, a) in u.iter().enumerate() {
            for (j, b) in u.iter().enumerate() {
                if i != j {
                    s += (a - b).powi(2);
                }
            }
        }
        observed += s / (m - 1.0);
    }
    observed /= n;
    let all: Vec<f64> = pairable.concat();
    let mut expected = 0.0;
    for (i, a) in all.iter().enumerate() {
        for (j, b) in all.iter().enumerate() {
            if i != j {
                expected += (a - b).powi(2);
            }
        }
    }
    expected /= n * (n - 1.0);
    1.0 - observed / expected
}

fn alpha_fixtures() -> Vec<Vec<Vec<Option<i64>>>> {
    let full = |rows: &[[i64; 3]]| -> Vec<Vec<Option<i64>>> {
        rows.iter().map(|r| r.iter().map(|&v| Some(v)).collect()).collect()
    };
    // Four coders, twelve units, with gaps.
    let gaps: [[Option<i64>; 4]; 12] = [
        [Some(1), Some(1), None, Some(1)],
        [Some(2), Some(2), Some(3), Some(2)],
        [Some(3), Some(3), Some(3), Some(3)],
        [Some(3), Some(3), Some(3), Some(3)],
        [Some(2), Some(2), Some(2), Some(2)],
        [Some(1), Some(2), Some(3), Some(4)],
        [Some(4), Some(4), Some(4), Some(4)],
        [Some(1), Some(1), Some(2), Some(1)],
        [Some(2), Some(2), Some(2), Some(2)],
        [None, Some(5), Some(5), Some(5)],
        [None, None, Some(1), Some(1)],
        [None, Some(3), None, None],
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut noisy = Vec::new();
    for _ in 0..40 {
        let base = rng.random_range(1..=5i64);
        noisy.push(
            (0..3)
                .map(|_| Some((base + rng.random_range(-1..=1i64)).clamp(1, 5)))
                .collect::<Vec<_>>(),
        );
    }
    let random: Vec<Vec<Option<i64>>> = (0..60)
        .map(|_| (0..3).map(|_| Some(rng.random_range(1..=5i64))).collect())
        .collect();
    vec![
        full(&[[1, 2, 1], [4, 4, 5], [3, 3, 3], [5, 4, 5], [2, 1, 2], [1, 1, 1], [3, 4, 4], [2, 2, 3], [5, 5, 5], [4, 3, 4]]),
        full(&[[1, 5, 3], [5, 1, 3], [2, 4, 3], [4, 2, 3], [3, 3, 1]]),
        gaps.iter().map(|r| r.to_vec()).collect(),
        noisy,
        random,
    ]
}

fn statistical_oracles() -> Outcome {
    // exhaustive tie-free instances: only the rank pattern matters
    let mut instances = 0;
    for n in 2..=10usize {
        for n1 in 1..n {
            let n2 = n - n1;
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize != n1 {
                    continue;
                }
                let xs: Vec<f64> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| i as f64).collect();
                let ys: Vec<f64> = (0..n).filter(|i| mask & (1 << i) == 0).map(|i| i as f64).collect();
                let r = attempt!(mann_whitney_u(&xs, &ys, MwuMode::Exact));
                let u: u64 = xs.iter().map(|x| ys.iter().filter(|y| *y < x).count() as u64).sum();
                let p = brute_force_p(n1, n2, u);
                if r.statistic != u as f64 || r.p_value != p {
                    return Outcome::Fail(format!(
                        "n1={n1} n2={n2} mask={mask:b}: U {} vs {u}, p {} vs {p}",
                        r.statistic, r.p_value
                    ));
                }
                instances += 1;
            }
        }
    }

    let holm_cases: [(&[f64], &[f64]); 4] = [
        (&[0.01, 0.04, 0.03], &[0.03, 0.06, 0.06]),
        (&[0.5, 0.125, 0.0625, 0.25], &[0.5, 0.375, 0.25, 0.5]),
        (&[0.001, 0.002, 0.003, 0.2, 0.9], &[0.005, 0.008, 0.009, 0.4, 0.9]),
        (&[0.3, 0.6], &[0.6, 0.6]),
    ];
    for (input, expected) in holm_cases {
        let got = attempt!(holm_correct(input));
        let close = got.iter().zip(expected).all(|(g, e)| (g - e).abs() <= 4.0 * f64::EPSILON * e.max(1e-300));
        if !close {
            return Outcome::Fail(format!("holm {input:?}: {got:?} vs {expected:?}"));
        }
    }

    let fixtures = alpha_fixtures();
    let mut worst: f64 = 0.0;
    for (i, units) in fixtures.iter().enumerate() {
        let matrix = attempt!(RatingsMatrix::new(units.clone(), 1, 5));
        let got = attempt!(krippendorff_alpha(&matrix, DistanceMetric::Interval));
        let want = pairwise_alpha(units);
        worst = worst.max((got - want).abs());
        if (got - want).abs() > 1e-10 {
            return Outcome::Fail(format!("alpha fixture {i}: {got} vs oracle {want}"));
        }
    }
    // published interval value for the gapped four-coder data
    let published = pairwise_alpha(&fixtures[2]);
    if (published - 0.849).abs() > 5e-4 {
        return Outcome::Fail(format!("alpha oracle gives {published:.4} on the reference data, expected 0.849"));
    }
    verdict(
        true,
        format!("{instances} exact MWU instances match enumeration; 4 Holm fixtures; 5 alpha fixtures, max |Δ| {worst:.1e}"),
    )
}

// ---- 2 ----

fn auc_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let n1 = rng.random_range(1..60);
        let n2 = rng.random_range(1..60);
        // coarse grid so ties are common
        let levels = rng.random_range(2..40);
        let pos: Vec<f64> = (0..n1).map(|_| f64::from(rng.random_range(0..levels))).collect();
        let neg: Vec<f64> = (0..n2).map(|_| f64::from(rng.random_range(0..levels))).collect();
        let scores: Vec<f64> = pos.iter().chain(&neg).copied().collect();
        let labels: Vec<bool> = (0..n1 + n2).map(|i| i < n1).collect();
        let a = attempt!(auc(&scores, &labels));
        let u = attempt!(mann_whitney_u(&pos, &neg, MwuMode::NormalApprox)).statistic;
        worst = worst.max((a - u / (n1 * n2) as f64).abs());
    }
    verdict(worst <= 1e-12, format!("1000 instances, max |auc - U/(n1 n2)| = {worst:.1e}"))
}

// ---- 3 ----

fn gradient_check() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let n = rng.random_range(5..60);
        let dim = rng.random_range(1..25);
        let features: Vec<FeatureVector> = (0..n)
            .map(|_| {
                let dense: Vec<f64> = (0..dim)
                    .map(|_| if rng.random_bool(0.4) { rng.random_range(-2.0..2.0) } else { 0.0 })
                    .collect();
                FeatureVector::from_dense(&dense, FeatureFamily::Bow).expect("finite")
            })
            .collect();
        let mut labels: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
        labels[0] = true;
        labels[1] = false;
        let l2 = rng.random_range(0.0..3.0);
        let objective = attempt!(LogisticObjective::new(&features, &labels, l2));
        let params: Vec<f64> = (0..objective.n_params()).map(|_| rng.random_range(-1.5..1.5)).collect();
        let analytic = objective.gradient(&params);
        let h = 1e-5;
        let mut numeric = vec![0.0; params.len()];
        let mut probe = params.clone();
        for j in 0..params.len() {
            probe[j] = params[j] + h;
            let up = objective.loss(&probe);
            probe[j] = params[j] - h;
            let down = objective.loss(&probe);
            probe[j] = params[j];
            numeric[j] = (up - down) / (2.0 * h);
        }
        let diff: f64 = analytic.iter().zip(&numeric).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        let scale = analytic.iter().map(|a| a * a).sum::<f64>().sqrt().max(numeric.iter().map(|a| a * a).sum::<f64>().sqrt()).max(1e-8);
        worst = worst.max(diff / scale);
    }
    verdict(worst <= 1e-5, format!("100 instances, max relative error {worst:.2e}"))
}

// ---- 4 ----

fn labelled(corpus: &SynthCorpus) -> Result<(Vec<String>, Vec<bool>), dogma::Error> {
    let split = quartile_split(&corpus.comments)?;
    let (docs, labels) = split.documents();
    Ok((docs.into_iter().map(str::to_string).collect(), labels))
}

fn held_out_auc(
    train: &(Vec<String>, Vec<bool>),
    test: &(Vec<String>, Vec<bool>),
    family: FeatureFamily,
    lexicon: &Lexicon,
) -> Result<f64, dogma::Error> {
    let model = LogisticModel::fit(&train.0, &train.1, family, &TrainConfig::default(), Some(lexicon))?;
    let featurizer = model.featurizer(Some(lexicon))?;
    let scores = test
        .0
        .iter()
        .map(|d| model.predict_proba(&featurizer.featurize(d)))
        .collect::<Result<Vec<f64>, _>>()?;
    auc(&scores, &test.1)
}

fn classifier_recovery() -> Outcome {
    let lex = Lexicon::demo();
    let config = TrainConfig::default();
    let corpus = attempt!(generate_corpus(&CorpusSpec::default(), &lex));
    let (docs, labels) = attempt!(labelled(&corpus));
    let mut means = BTreeMap::new();
    for family in [FeatureFamily::Bow, FeatureFamily::Ling, FeatureFamily::BowLing] {
        let report = attempt!(cross_validate(&docs, &labels, family, DEFAULT_FOLDS, 0, &config, Some(&lex)));
        means.insert(family, report.mean_auc);
    }
    let cv_ok = means[&FeatureFamily::Ling] >= 0.90 && means[&FeatureFamily::BowLing] >= 0.90;

    let mut wins = 0;
    let mut gaps = Vec::new();
    for seed in 0..10 {
        let spec = CorpusSpec {
            seed: 100 + seed,
            ..CorpusSpec::default()
        };
        let (train, held) = attempt!(generate_shifted(&spec, &lex));
        let (train, held) = (attempt!(labelled(&train)), attempt!(labelled(&held)));
        let bow = attempt!(held_out_auc(&train, &held, FeatureFamily::Bow, &lex));
        let both = attempt!(held_out_auc(&train, &held, FeatureFamily::BowLing, &lex));
        if both >= bow {
            wins += 1;
        }
        gaps.push(format!("{:+.3}", both - bow));
    }
    verdict(
        cv_ok && wins >= 8,
        format!(
            "{} docs labelled; 15-fold mean AUC bow {:.3}, ling {:.3}, bow+ling {:.3}; shifted held-out bow+ling >= bow in {wins}/10 seeds (gaps {})",
            docs.len(),
            means[&FeatureFamily::Bow],
            means[&FeatureFamily::Ling],
            means[&FeatureFamily::BowLing],
            gaps.join(" ")
        ),
    )
}

// ---- 5 ----

fn odds_recovery() -> Outcome {
    let lex = Lexicon::demo();
    let spec = CorpusSpec::default();
    let planted: Vec<&String> = spec.multipliers.iter().filter(|(_, &m)| m == 3.0).map(|(c, _)| c).collect();
    let null: Vec<&String> = lex.names().iter().filter(|c| !spec.multipliers.contains_key(*c)).collect();
    let mut recovered = 0;
    let mut null_hits = 0;
    for seed in 0..10 {
        let corpus = attempt!(generate_corpus(&CorpusSpec { seed: 200 + seed, ..spec.clone() }, &lex));
        let split = attempt!(quartile_split(&corpus.comments));
        let dog: Vec<&str> = split.dogmatic.iter().map(|p| p.body.as_str()).collect();
        let non: Vec<&str> = split.nondogmatic.iter().map(|p| p.body.as_str()).collect();
        let rows = attempt!(odds_table(&dog, &non, &lex));
        let row = |c: &str| rows.iter().find(|r| r.category == c).expect("category row");
        if planted.iter().all(|c| row(c).odds_ratio > 1.0 && row(c).p_holm < SIGNIFICANCE_LEVEL) {
            recovered += 1;
        }
        if null.iter().any(|c| row(c).p_holm < SIGNIFICANCE_LEVEL) {
            null_hits += 1;
        }
    }
    verdict(
        recovered >= 9 && null_hits <= 1,
        format!(
            "{} planted categories all recovered in {recovered}/10 seeds; some of {} null categories significant in {null_hits}/10 seeds",
            planted.len(),
            null.len()
        ),
    )
}

// ---- 6 ----

fn behavior_recovery() -> Outcome {
    let pop = attempt!(generate_behavior(&BehaviorSpec::default()));
    let posts: Vec<Post> = pop.scored.iter().map(|s| s.post.clone()).collect();
    let features = behavior_features(&posts);
    let means = user_mean_scores(&pop.scored);
    let fit = attempt!(behavior_regression(&features, &means));
    let mut ok = true;
    let mut parts = Vec::new();
    for (term, planted) in BEHAVIOR_TERMS.iter().zip(pop.spec.coefficients) {
        let (coef, p) = fit.coefficient(term).expect("term in fit");
        ok &= coef.signum() == planted.signum() && p < 0.01;
        parts.push(format!("{term} {coef:+.4} (p {p:.1e})"));
    }
    verdict(ok, format!("{} users; {}", features.len(), parts.join(", ")))
}

// ---- 7 ----

fn triple_recovery() -> Outcome {
    let spec = TripleSpec::default();
    let posts = attempt!(generate_triples(&spec));
    let triples = extract_triples(&posts);
    let scores = attempt!(TripleScores::compute(&triples, |t| Ok(marker_proportion(t)), false));
    let fit = attempt!(scores.fit());
    let (b, p) = fit.coefficient("b").expect("b term");
    let within = (b - spec.b_coefficient).abs() <= 0.2 * spec.b_coefficient;
    let seeds = 20;
    let mut quiet = 0;
    for seed in 0..seeds {
        let null = attempt!(scores.shuffled_b(seed).fit());
        if null.coefficient("b").expect("b term").1 >= SIGNIFICANCE_LEVEL {
            quiet += 1;
        }
    }
    verdict(
        within && p < 1e-3 && quiet * 10 >= seeds * 9,
        format!(
            "{} triples; b = {b:.4} (planted {}), p {p:.1e}; permuted b non-significant in {quiet}/{seeds} seeds",
            triples.len(),
            spec.b_coefficient
        ),
    )
}

// ---- 8 ----

fn cluster_recovery() -> Outcome {
    let (scored, blocks) = attempt!(generate_clusters(&ClusterSpec::default()));
    let profiles = build_profiles(&scored, DEFAULT_MIN_POSTS_PER_SUB, DEFAULT_DOGMATIC_THRESHOLD);
    let counts = dogmatic_pair_counts(&profiles);
    let neighbours = attempt!(cluster_by_association(&counts, 1));
    let within = blocks
        .iter()
        .filter(|(sub, block)| {
            neighbours
                .get(*sub)
                .and_then(|n| n.first())
                .is_some_and(|(top, _)| blocks[top] == **block)
        })
        .count();
    verdict(
        within * 10 >= blocks.len() * 9,
        format!("top-1 PMI neighbour within block for {within}/{} subreddits", blocks.len()),
    )
}

// ---- 9 ----

fn resident_kib() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmRSS:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

fn streaming_smoke() -> Outcome {
    const POSTS: u64 = 1_000_000;
    const CHUNK: usize = 8192;
    let lex = Lexicon::demo();
    let corpus = attempt!(generate_corpus(&CorpusSpec { n_docs: 1000, ..CorpusSpec::default() }, &lex));
    let (docs, labels) = attempt!(labelled(&corpus));
    let model = attempt!(LogisticModel::fit(&docs, &labels, FeatureFamily::BowLing, &TrainConfig::default(), Some(&lex)));
    let scorer = attempt!(Scorer::new(&model, Some(&lex)));

    let mut digests = Vec::new();
    let mut growth_kib = 0u64;
    let mut bytes = 0u64;
    let mut in_flight = 0;
    for workers in [1, 8] {
        let baseline = resident_kib();
        let mut peak = baseline;
        let mut hasher = Sha256::new();
        let mut seen = 0u64;
        bytes = 0;
        let options = StreamOptions { chunk_size: CHUNK, workers };
        let stats = attempt!(score_corpus(&scorer, post_stream(&lex, POSTS, 9).map(Ok), &options, |s| {
            hasher.update(s.post.id.as_bytes());
            hasher.update(b"\t");
            hasher.update(s.p_dogmatic.to_bits().to_le_bytes());
            bytes += s.post.body.len() as u64;
            seen += 1;
            if seen.is_multiple_of(50_000) {
                peak = peak.max(resident_kib());
            }
            Ok(())
        }));
        if stats.posts != POSTS {
            return Outcome::Fail(format!("scored {} of {POSTS} posts", stats.posts));
        }
        in_flight = in_flight.max(stats.max_in_flight);
        if let (Some(b), Some(p)) = (baseline, peak) {
            growth_kib = growth_kib.max(p.saturating_sub(b));
        }
        digests.push(hasher.finalize());
    }
    let same = digests[0] == digests[1];
    // the posts' text alone, if held, would be `bytes`; allow a small fraction
    let bounded = growth_kib * 1024 <= bytes / 8 && in_flight <= CHUNK;
    let memory = if resident_kib().is_some() {
        format!("resident growth {} KiB vs {} MiB of text streamed", growth_kib, bytes >> 20)
    } else {
        "resident size unavailable".to_string()
    };
    verdict(
        same && bounded,
        format!(
            "{POSTS} posts; digests {} for 1 and 8 workers; at most {in_flight} posts in flight; {memory}",
            if same { "identical" } else { "differ" }
        ),
    )
}

// ---- 10 ----

fn released_corpus() -> Outcome {
    let vars = ["DOGMA_ACCEPT_CORPUS", "DOGMA_ACCEPT_RATINGS", "DOGMA_ACCEPT_LEXICON"];
    let paths: Vec<String> = vars.iter().filter_map(|v| std::env::var(v).ok()).collect();
    if paths.len() != vars.len() {
        return Outcome::Skipped(format!("set {} to run", vars.join(", ")));
    }
    let (corpus, ratings, lexicon) = (&paths[0], &paths[1], &paths[2]);
    let lex_text = attempt!(std::fs::read_to_string(lexicon));
    let lex = attempt!(parse_lexicon(&lex_text));
    let annotated: Vec<AnnotatedComment> = attempt!(load_annotations(ratings, corpus, LoadOptions::default()));
    let rows = |keep: &dyn Fn(&AnnotatedComment) -> bool| -> Vec<Vec<i64>> {
        annotated
            .iter()
            .filter(|a| keep(a))
            .map(|a| a.ratings().iter().map(|&r| i64::from(r)).collect())
            .collect()
    };
    let split = attempt!(quartile_split(&annotated));
    let overall = attempt!(krippendorff_alpha(&attempt!(RatingsMatrix::complete(&rows(&|_| true), 1, 5)), DistanceMetric::Interval));
    let extremes = attempt!(krippendorff_alpha(
        &attempt!(RatingsMatrix::complete(&rows(&|a| split.is_extreme(a.aggregate())), 1, 5)),
        DistanceMetric::Interval
    ));
    let (docs, labels) = split.documents();
    let mut ok = (overall - 0.44).abs() <= 0.03 && (extremes - 0.69).abs() <= 0.03;
    let mut parts = vec![format!("alpha {overall:.3} overall, {extremes:.3} extremes")];
    for (family, reference) in [
        (FeatureFamily::Bow, 0.853),
        (FeatureFamily::Ling, 0.801),
        (FeatureFamily::BowLing, 0.881),
    ] {
        let r = attempt!(cross_validate(&docs, &labels, family, DEFAULT_FOLDS, 0, &TrainConfig::default(), Some(&lex)));
        ok &= (r.mean_auc - reference).abs() <= 0.05;
        parts.push(format!("{family} AUC {:.3} (reference {reference})", r.mean_auc));
    }
    verdict(ok, parts.join("; "))
}
