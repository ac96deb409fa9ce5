use statrs::distribution::{ContinuousCDF, FisherSnedecor, StudentsT};

use crate::{Error, Result};

/// Ordinary least squares fit with an intercept.
///
/// Vectors are aligned with the terms: index 0 is the intercept, index `j + 1`
/// the `j`-th design column.
#[derive(Debug, Clone, PartialEq)]
pub struct OlsFit {
    pub terms: Vec<String>,
    pub coefficients: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub t_values: Vec<f64>,
    pub p_values: Vec<f64>,
    pub r_squared: f64,
    /// Overall F statistic against the intercept-only model.
    pub f_statistic: f64,
    pub f_p_value: f64,
    pub n_obs: usize,
    pub residuals: Vec<f64>,
}

impl OlsFit {
    pub fn coefficient(&self, term: &str) -> Option<(f64, f64)> {
        let i = self.terms.iter().position(|t| t == term)?;
        Some((self.coefficients[i], self.p_values[i]))
    }
}

/// Least squares of `response` on an intercept plus the columns of `design`
/// (rows are observations). Column names default to `x1, x2, ...`.
pub fn ols_fit(design: &[Vec<f64>], response: &[f64], names: Option<&[&str]>) -> Result<OlsFit> {
    let n = design.len();
    if n != response.len() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: response.len(),
        });
    }
    let k = design.first().map_or(0, Vec::len);
    if k == 0 {
        return Err(Error::InvalidInput("design matrix has no columns".into()));
    }
    if let Some(row) = design.iter().find(|r| r.len() != k) {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: row.len(),
        });
    }
    if n <= k + 1 {
        return Err(Error::InvalidInput(format!(
            "need more than {} observations for {k} predictors, found {n}",
            k + 1
        )));
    }
    if design.iter().flatten().chain(response).any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("non-finite value in regression data".into()));
    }
    let mut terms = vec!["intercept".to_string()];
    match names {
        Some(names) if names.len() == k => terms.extend(names.iter().map(|s| s.to_string())),
        Some(names) => {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: names.len(),
            })
        }
        None => terms.extend((1..=k).map(|j| format!("x{j}"))),
    }

    let p = k + 1;
    let columns: Vec<Vec<f64>> = (0..p)
        .map(|j| {
            if j == 0 {
                vec![1.0; n]
            } else {
                design.iter().map(|r| r[j - 1]).collect()
            }
        })
        .collect();

    // Thin QR by modified Gram-Schmidt with one re-orthogonalisation pass.
    let mut q: Vec<Vec<f64>> = Vec::with_capacity(p);
    let mut r = vec![vec![0.0; p]; p];
    for j in 0..p {
        let mut v = columns[j].clone();
        let original = norm(&v);
        for _ in 0..2 {
            for (i, qi) in q.iter().enumerate() {
                let d = dot(qi, &v);
                r[i][j] += d;
                axpy(-d, qi, &mut v);
            }
        }
        let rest = norm(&v);
        if original == 0.0 || rest <= 1e-10 * original {
            return Err(Error::RankDeficient {
                column: j,
                name: terms[j].clone(),
            });
        }
        r[j][j] = rest;
        v.iter_mut().for_each(|x| *x /= rest);
        q.push(v);
    }

    let qty: Vec<f64> = q.iter().map(|qi| dot(qi, response)).collect();
    let coefficients = back_substitute(&r, &qty);

    let residuals: Vec<f64> = (0..n)
        .map(|i| {
            let fitted: f64 = (0..p).map(|j| columns[j][i] * coefficients[j]).sum();
            response[i] - fitted
        })
        .collect();
    let rss: f64 = residuals.iter().map(|e| e * e).sum();
    let mean_y = response.iter().sum::<f64>() / n as f64;
    let tss: f64 = response.iter().map(|y| (y - mean_y).powi(2)).sum();
    let df = (n - p) as f64;
    let sigma2 = rss / df;

    // diag((X'X)^-1) = row sums of squares of R^-1
    let r_inv = upper_inverse(&r);
    let std_errors: Vec<f64> = (0..p)
        .map(|j| (sigma2 * r_inv[j].iter().map(|v| v * v).sum::<f64>()).sqrt())
        .collect();
    let t_dist = StudentsT::new(0.0, 1.0, df).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let t_values: Vec<f64> = coefficients
        .iter()
        .zip(&std_errors)
        .map(|(&b, &se)| {
            if se > 0.0 {
                b / se
            } else if b == 0.0 {
                0.0
            } else {
                b.signum() * f64::INFINITY
            }
        })
        .collect();
    let p_values: Vec<f64> = t_values
        .iter()
        .map(|t| (2.0 * t_dist.sf(t.abs())).min(1.0))
        .collect();

    let r_squared = if tss > 0.0 {
        (1.0 - rss / tss).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let df_model = k as f64;
    let (f_statistic, f_p_value) = if rss > 0.0 {
        let f = ((tss - rss).max(0.0) / df_model) / (rss / df);
        let dist = FisherSnedecor::new(df_model, df).map_err(|e| Error::InvalidInput(e.to_string()))?;
        (f, dist.sf(f))
    } else if tss > 0.0 {
        (f64::INFINITY, 0.0)
    } else {
        (0.0, 1.0)
    };

    Ok(OlsFit {
        terms,
        coefficients,
        std_errors,
        t_values,
        p_values,
        r_squared,
        f_statistic,
        f_p_value,
        n_obs: n,
        residuals,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn back_substitute(r: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let p = b.len();
    let mut x = vec![0.0; p];
    for i in (0..p).rev() {
        let s: f64 = (i + 1..p).map(|j| r[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / r[i][i];
    }
    x
}

fn upper_inverse(r: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let p = r.len();
    let mut inv = vec![vec![0.0; p]; p];
    for col in 0..p {
        let mut e = vec![0.0; p];
        e[col] = 1.0;
        let x = back_substitute(r, &e);
        for row in 0..p {
            inv[row][col] = x[row];
        }
    }
    inv
}
