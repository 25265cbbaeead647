use serde::{Deserialize, Serialize};

use super::correlation::mean;
use super::special::t_two_sided_p;
use crate::{Error, Result};

/// Standardizer used for Cohen's d.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EffectSize {
    /// sqrt((s²x + s²y) / 2), matching the unequal-variance test.
    #[default]
    RootMeanVariance,
    /// Pooled standard deviation weighted by degrees of freedom.
    PooledByDf,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TTestResult {
    #[serde(with = "crate::serde_ext")]
    pub t_stat: f64,
    /// Welch–Satterthwaite degrees of freedom.
    pub df: f64,
    pub p_value: f64,
    #[serde(with = "crate::serde_ext")]
    pub cohens_d: f64,
    pub mean_x: f64,
    pub mean_y: f64,
}

/// Sample summary used when only moments are known.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleSummary {
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    pub n: usize,
}

impl SampleSummary {
    pub fn of(xs: &[f64]) -> Self {
        let m = mean(xs);
        let ss: f64 = xs.iter().map(|v| (v - m) * (v - m)).sum();
        SampleSummary {
            mean: m,
            variance: ss / (xs.len() as f64 - 1.0),
            n: xs.len(),
        }
    }
}

pub fn welch_t(x: &[f64], y: &[f64]) -> Result<TTestResult> {
    welch_t_with(x, y, EffectSize::default())
}

pub fn welch_t_with(x: &[f64], y: &[f64], effect: EffectSize) -> Result<TTestResult> {
    for (name, s) in [("first", x), ("second", y)] {
        if s.len() < 2 {
            return Err(Error::Argument(format!(
                "{name} sample needs at least 2 observations, got {}",
                s.len()
            )));
        }
        if s.iter().any(|v| !v.is_finite()) {
            return Err(Error::Argument(format!("{name} sample has a non-finite value")));
        }
    }
    welch_from_summaries(SampleSummary::of(x), SampleSummary::of(y), effect)
}

/// Welch's unequal-variance t-test from sample moments.
pub fn welch_from_summaries(
    x: SampleSummary,
    y: SampleSummary,
    effect: EffectSize,
) -> Result<TTestResult> {
    if x.n < 2 || y.n < 2 {
        return Err(Error::Argument("each sample needs at least 2 observations".into()));
    }
    let (nx, ny) = (x.n as f64, y.n as f64);
    let (vx, vy) = (x.variance / nx, y.variance / ny);
    let se2 = vx + vy;
    let diff = x.mean - y.mean;
    if se2 == 0.0 {
        if diff == 0.0 {
            return Err(Error::Degenerate("both samples have zero variance".into()));
        }
        // Distinct constants: the difference is certain.
        return Ok(TTestResult {
            t_stat: diff.signum() * f64::INFINITY,
            df: nx + ny - 2.0,
            p_value: 0.0,
            cohens_d: diff.signum() * f64::INFINITY,
            mean_x: x.mean,
            mean_y: y.mean,
        });
    }
    let t = diff / se2.sqrt();
    let df = se2 * se2 / (vx * vx / (nx - 1.0) + vy * vy / (ny - 1.0));
    let sd = match effect {
        EffectSize::RootMeanVariance => ((x.variance + y.variance) / 2.0).sqrt(),
        EffectSize::PooledByDf => {
            (((nx - 1.0) * x.variance + (ny - 1.0) * y.variance) / (nx + ny - 2.0)).sqrt()
        }
    };
    Ok(TTestResult {
        t_stat: t,
        df,
        p_value: t_two_sided_p(t, df)?,
        cohens_d: diff / sd,
        mean_x: x.mean,
        mean_y: y.mean,
    })
}
