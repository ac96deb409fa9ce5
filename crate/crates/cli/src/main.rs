//! `dogma`: dogmatism analysis from the command line.

mod commands;
mod config;
mod inputs;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dogma::features::FeatureFamily;

use crate::output::Format;

const AFTER_HELP: &str = "\
Exit status: 0 on success, 2 for bad arguments or input data, 1 for internal errors.

Settings come from command-line flags first, then DOGMA_SEED (seed only), then the
--config file (flat `key = value` lines), then built-in defaults.";

#[derive(Debug, Parser)]
#[command(name = "dogma", version, about = "Measure dogmatism in online discussion", after_help = AFTER_HELP)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Flat `key = value` config file; flags override its values
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Random seed for fold assignment and synthetic data [default: 0]
    #[arg(long, global = true, env = "DOGMA_SEED")]
    pub seed: Option<u64>,
    /// Worker threads [default: available cores]
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Output format [default: tsv]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write results here instead of standard output
    #[arg(long, short, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

/// Annotated comments: a post file joined to a ratings file.
#[derive(Debug, Args)]
pub struct AnnotatedArgs {
    /// Ratings file, one `{"id", "ratings": [r1, r2, r3]}` object per line
    #[arg(long, value_name = "PATH")]
    pub annotations: Option<PathBuf>,
    /// Post file, one JSON object per line
    #[arg(long, value_name = "PATH")]
    pub corpus: Option<PathBuf>,
    /// Keep only comments whose length lies within --min-chars..=--max-chars
    #[arg(long)]
    pub filter_length: bool,
    /// Shortest comment kept by --filter-length [default: 300]
    #[arg(long)]
    pub min_chars: Option<usize>,
    /// Longest comment kept by --filter-length [default: 400]
    #[arg(long)]
    pub max_chars: Option<usize>,
}

#[derive(Debug, Args)]
pub struct LexiconArg {
    /// Lexicon file, or `builtin:demo` for the bundled sample lexicon
    #[arg(long, value_name = "PATH")]
    pub lexicon: Option<String>,
}

#[derive(Debug, Args)]
pub struct TrainingArgs {
    /// Feature family: bow, sent, ling, bow_sent or bow_ling
    #[arg(long, default_value = "bow_ling")]
    pub family: FeatureFamily,
    /// L2 penalty on the mean log-loss [default: 1.5]
    #[arg(long = "l2", value_name = "STRENGTH")]
    pub l2_strength: Option<f64>,
    /// Minimum document frequency for vocabulary terms [default: 2]
    #[arg(long)]
    pub min_df: Option<u64>,
}

/// Posts plus a source of scores for them.
#[derive(Debug, Args)]
pub struct ScoredArgs {
    /// Post file, one JSON object per line
    #[arg(long, value_name = "PATH")]
    pub corpus: Option<PathBuf>,
    /// Scores written by `predict` (TSV or JSON lines)
    #[arg(long, value_name = "PATH", conflicts_with = "model")]
    pub scores: Option<PathBuf>,
    /// Score the corpus with this model instead of reading --scores
    #[arg(long, value_name = "PATH")]
    pub model: Option<PathBuf>,
    #[command(flatten)]
    pub lexicon: LexiconArg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Krippendorff's alpha over all annotated comments and over the top and bottom quartiles
    Agreement {
        /// Ratings file
        #[arg(long, value_name = "PATH")]
        annotations: Option<PathBuf>,
        /// Distance between ratings: interval or ordinal
        #[arg(long, default_value = "interval")]
        metric: dogma::stats::DistanceMetric,
    },
    /// Per-category odds ratios between dogmatic and non-dogmatic comments
    Odds {
        #[command(flatten)]
        data: AnnotatedArgs,
        #[command(flatten)]
        lexicon: LexiconArg,
    },
    /// Fit a classifier on the quartile split and save it
    Train {
        #[command(flatten)]
        data: AnnotatedArgs,
        #[command(flatten)]
        lexicon: LexiconArg,
        #[command(flatten)]
        training: TrainingArgs,
        /// Where to write the model
        #[arg(long, value_name = "PATH")]
        model: Option<PathBuf>,
    },
    /// Cross-validated AUC per feature family, or held-out AUC of a saved model
    Eval {
        #[command(flatten)]
        data: AnnotatedArgs,
        #[command(flatten)]
        lexicon: LexiconArg,
        /// Feature families to evaluate (comma separated)
        #[arg(long = "family", value_delimiter = ',', default_value = "bow,ling,bow_ling")]
        families: Vec<FeatureFamily>,
        /// L2 penalty on the mean log-loss [default: 1.5]
        #[arg(long = "l2", value_name = "STRENGTH")]
        l2_strength: Option<f64>,
        /// Minimum document frequency for vocabulary terms [default: 2]
        #[arg(long)]
        min_df: Option<u64>,
        /// Number of stratified folds [default: 15]
        #[arg(long)]
        folds: Option<usize>,
        /// Score the annotated corpus with this model instead of cross-validating
        #[arg(long, value_name = "PATH")]
        model: Option<PathBuf>,
    },
    /// Score every post in a corpus, streaming
    Predict {
        /// Post file, one JSON object per line
        #[arg(long, value_name = "PATH")]
        corpus: Option<PathBuf>,
        /// Model written by `train`
        #[arg(long, value_name = "PATH")]
        model: Option<PathBuf>,
        #[command(flatten)]
        lexicon: LexiconArg,
        /// Posts buffered and scored together
        #[arg(long, default_value_t = 8192)]
        chunk_size: usize,
    },
    /// Subreddits ranked by mean post score
    Subreddits {
        #[command(flatten)]
        scored: ScoredArgs,
        /// Minimum posts for a subreddit to be ranked [default: 100]
        #[arg(long)]
        min_posts: Option<u64>,
    },
    /// Subreddits related through users who are dogmatic on both, ranked by PMI
    Clusters {
        #[command(flatten)]
        scored: ScoredArgs,
        /// Posts a user needs in a subreddit for it to count [default: 10]
        #[arg(long)]
        min_posts_per_sub: Option<u64>,
        /// Mean score above which a user is dogmatic on a subreddit [default: 0.5]
        #[arg(long)]
        dogmatic_threshold: Option<f64>,
        /// Neighbours listed per subreddit
        #[arg(long, default_value_t = 5)]
        top_k: usize,
        /// Test whether users dogmatic on ANCHOR are also dogmatic on --other
        #[arg(long, requires = "other")]
        anchor: Option<String>,
        /// Second subreddit of the enrichment test
        #[arg(long, requires = "anchor")]
        other: Option<String>,
        /// Base-rate population: `qualified` (active in both) or `all`
        #[arg(long, default_value = "qualified")]
        baseline: dogma::analysis::EnrichmentBaseline,
    },
    /// Regress users' mean scores on activity, breadth, focus and engagement
    Behavior {
        #[command(flatten)]
        scored: ScoredArgs,
    },
    /// Regress A2's score on A1's and B's over A1 -> B -> A2 reply chains
    Triples {
        #[command(flatten)]
        scored: ScoredArgs,
        /// Score A2 without the words it shares with B (needs --model)
        #[arg(long)]
        quote_control: bool,
    },
    /// Write a synthetic corpus with planted signal and its ground truth
    Synth(commands::SynthArgs),
}

/// How a command failed.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or input: exit 2.
    Usage(String),
    Core(dogma::Error),
    /// The reader of our output went away; stop quietly.
    Closed,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure::Usage(message.into())
    }

    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Core(e) if e.is_input_error() => 2,
            Failure::Core(_) => 1,
            Failure::Closed => 0,
        }
    }
}

impl From<dogma::Error> for Failure {
    fn from(e: dogma::Error) -> Self {
        Failure::Core(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => f.write_str(m),
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Closed => f.write_str("output closed"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::panic::catch_unwind(|| commands::run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failure::Closed)) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("dogma: {e}");
            ExitCode::from(e.exit_code())
        }
        Err(_) => ExitCode::from(1),
    }
}
