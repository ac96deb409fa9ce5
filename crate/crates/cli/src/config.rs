//! Flat `key = value` config files and the resolved run configuration.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::Failure;

/// Keys a config file may set.
pub const KEYS: &[&str] = &[
    "corpus",
    "annotations",
    "lexicon",
    "model",
    "scores",
    "output",
    "format",
    "seed",
    "workers",
    "l2_strength",
    "min_df",
    "folds",
    "min_posts",
    "min_posts_per_sub",
    "dogmatic_threshold",
    "min_chars",
    "max_chars",
];

pub const DEFAULT_MIN_CHARS: usize = 300;
pub const DEFAULT_MAX_CHARS: usize = 400;

/// Values read from a config file. Command-line flags win over these.
#[derive(Debug, Default, Clone)]
pub struct Settings {
    source: String,
    values: BTreeMap<String, String>,
}

impl Settings {
    pub fn load(path: &Path) -> Result<Settings, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("--config {}: {e}", path.display())))?;
        Settings::parse(&text, &path.display().to_string())
    }

    pub fn parse(text: &str, source: &str) -> Result<Settings, Failure> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Failure::usage(format!("{source} line {}: expected key = value", i + 1)));
            };
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(Failure::usage(format!(
                    "{source} line {}: unknown key `{key}` (known: {})",
                    i + 1,
                    KEYS.join(", ")
                )));
            }
            if values.insert(key.to_string(), value.trim().to_string()).is_some() {
                return Err(Failure::usage(format!("{source} line {}: `{key}` set twice", i + 1)));
            }
        }
        Ok(Settings {
            source: source.to_string(),
            values,
        })
    }

    /// The flag if given, else the config value, parsed.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, Failure>
    where
        T::Err: std::fmt::Display,
    {
        debug_assert!(KEYS.contains(&key), "{key}");
        if flag.is_some() {
            return Ok(flag);
        }
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|e| Failure::usage(format!("{}: bad value for {key}: {e}", self.source))),
        }
    }

    pub fn path(&self, flag: &Option<PathBuf>, key: &str) -> Result<Option<PathBuf>, Failure> {
        self.pick(flag.clone(), key)
    }

    /// Like [`Settings::path`], failing with a message naming the flag when
    /// neither source provides it.
    pub fn require_path(&self, flag: &Option<PathBuf>, key: &str) -> Result<PathBuf, Failure> {
        self.path(flag, key)?
            .ok_or_else(|| Failure::usage(format!("missing --{} (or `{key}` in the config file)", key.replace('_', "-"))))
    }
}

pub fn nonnegative(name: &str, v: f64) -> Result<f64, Failure> {
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Failure::usage(format!("{name} must be a nonnegative number, got {v}")))
    }
}
