//! Dogmatism detection for social-media posts.
//!
//! The crate is organised bottom-up:
//!
//! - [`corpus`]: post and annotation ingestion, length filtering, sampling and
//!   the quartile split that turns summed Likert ratings into training labels.
//! - [`lexicon`]: an open category-lexicon format, the tokenizer and per-document
//!   category proportions.
//! - [`stats`]: agreement, hypothesis tests, multiple-comparison correction,
//!   association measures, least squares and AUC.
//! - [`features`]: TF-IDF unigrams plus the SENT and LING lexicon families.
//! - [`model`]: L2-regularised logistic regression, cross-validation and the
//!   model file format.
//! - [`analysis`]: corpus-scale analyses over classifier-scored posts.
//! - [`synth`]: planted-signal corpus generators used for verification.

pub mod analysis;
pub mod corpus;
mod error;
pub mod features;
pub mod lexicon;
pub mod model;
pub mod stats;
pub mod synth;

pub use error::{Error, Result};
