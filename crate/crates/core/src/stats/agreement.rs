use crate::{Error, Result};

/// Units × raters grid of ratings on an integer scale; `None` marks a missing
/// rating.
#[derive(Debug, Clone, PartialEq)]
pub struct RatingsMatrix {
    units: Vec<Vec<Option<i64>>>,
    lo: i64,
    hi: i64,
}

impl RatingsMatrix {
    pub fn new(units: Vec<Vec<Option<i64>>>, lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInput(format!("scale [{lo}, {hi}] is empty")));
        }
        for (u, row) in units.iter().enumerate() {
            if let Some(v) = row.iter().flatten().find(|v| !(lo..=hi).contains(*v)) {
                return Err(Error::InvalidInput(format!(
                    "unit {u}: rating {v} outside [{lo}, {hi}]"
                )));
            }
        }
        if !units.iter().any(|row| row.iter().flatten().count() >= 2) {
            return Err(Error::InvalidInput(
                "no unit has two or more ratings; agreement is undefined".into(),
            ));
        }
        Ok(RatingsMatrix { units, lo, hi })
    }

    /// Matrix without missing values.
    pub fn complete<R: AsRef<[i64]>>(rows: &[R], lo: i64, hi: i64) -> Result<Self> {
        let units = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| Some(v)).collect())
            .collect();
        Self::new(units, lo, hi)
    }

    pub fn units(&self) -> &[Vec<Option<i64>>] {
        &self.units
    }

    pub fn scale(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }
}

/// Disagreement function between two scale values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DistanceMetric {
    /// Squared difference; Likert points treated as equally spaced.
    #[default]
    Interval,
    /// Squared rank distance computed from the pooled value frequencies.
    Ordinal,
}

impl std::str::FromStr for DistanceMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "interval" => Ok(DistanceMetric::Interval),
            "ordinal" => Ok(DistanceMetric::Ordinal),
            other => Err(Error::InvalidInput(format!(
                "unknown agreement metric `{other}` (expected interval or ordinal)"
            ))),
        }
    }
}

/// Krippendorff's alpha via the coincidence matrix.
///
/// Units with fewer than two ratings are not pairable and are ignored.
pub fn krippendorff_alpha(matrix: &RatingsMatrix, metric: DistanceMetric) -> Result<f64> {
    let (lo, hi) = matrix.scale();
    let k = (hi - lo + 1) as usize;
    let mut coincidence = vec![0.0f64; k * k];
    let mut unit_counts = vec![0usize; k];

    for row in matrix.units() {
        unit_counts.iter_mut().for_each(|c| *c = 0);
        let mut m = 0usize;
        for v in row.iter().flatten() {
            unit_counts[(v - lo) as usize] += 1;
            m += 1;
        }
        if m < 2 {
            continue;
        }
        let w = 1.0 / (m - 1) as f64;
        for c in 0..k {
            let nc = unit_counts[c];
            if nc == 0 {
                continue;
            }
            for d in 0..k {
                let nd = unit_counts[d];
                let pairs = if c == d { nc * (nc - 1) } else { nc * nd };
                coincidence[c * k + d] += pairs as f64 * w;
            }
        }
    }

    let marginals: Vec<f64> = (0..k)
        .map(|c| coincidence[c * k..(c + 1) * k].iter().sum())
        .collect();
    let n: f64 = marginals.iter().sum();

    let delta = |c: usize, d: usize| -> f64 {
        match metric {
            DistanceMetric::Interval => ((c as f64) - (d as f64)).powi(2),
            DistanceMetric::Ordinal => {
                let (a, b) = if c <= d { (c, d) } else { (d, c) };
                let span: f64 = marginals[a..=b].iter().sum();
                (span - (marginals[a] + marginals[b]) / 2.0).powi(2)
            }
        }
    };

    let mut observed = 0.0;
    let mut expected = 0.0;
    for c in 0..k {
        for d in 0..k {
            if c == d {
                continue;
            }
            let dl = delta(c, d);
            observed += coincidence[c * k + d] * dl;
            expected += marginals[c] * marginals[d] * dl;
        }
    }
    observed /= n;
    expected /= n * (n - 1.0);
    if expected <= 0.0 {
        return Err(Error::Degenerate(
            "agreement undefined: every rating has the same value".into(),
        ));
    }
    Ok(1.0 - observed / expected)
}
