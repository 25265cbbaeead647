use serde::{Deserialize, Serialize};

use super::SynonymPair;
use crate::stats::{welch_from_summaries, EffectSize, SampleSummary, ALPHA};
use crate::{Error, Result};

/// Two-sided 5% critical value of t at large df, used as the alternative
/// significance rule.
pub const T_CRITICAL: f64 = 1.961;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairSignificance {
    pub pair_id: String,
    pub word_a: String,
    pub word_b: String,
    pub rate_a: f64,
    pub rate_b: f64,
    #[serde(with = "crate::serde_ext")]
    pub t_stat: f64,
    pub df: f64,
    pub p_value: f64,
    /// `p_value < ALPHA`.
    pub significant_p: bool,
    /// `|t_stat| ≥ T_CRITICAL`.
    pub significant_t: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignificanceTable {
    pub rows: Vec<PairSignificance>,
    pub count_p: usize,
    pub count_t: usize,
}

/// Welch test of `rate_a` against `rate_b` for every pair, treating each
/// rate as the mean of `n_responses` Bernoulli outcomes (sample variance
/// `p(1−p)·n/(n−1)`).
pub fn per_pair_significance(pairs: &[SynonymPair]) -> Result<SignificanceTable> {
    let mut rows = Vec::with_capacity(pairs.len());
    for pair in pairs {
        pair.validate()?;
        let n = pair.n_responses.ok_or_else(|| {
            Error::Argument(format!("pair {} has no response count", pair.pair_id))
        })?;
        if n < 2 {
            return Err(Error::Argument(format!(
                "pair {} needs at least 2 responses per word",
                pair.pair_id
            )));
        }
        let summary = |p: f64| SampleSummary {
            mean: p,
            variance: p * (1.0 - p) * n as f64 / (n as f64 - 1.0),
            n: n as usize,
        };
        let (t_stat, df, p_value) =
            match welch_from_summaries(summary(pair.rate_a), summary(pair.rate_b), EffectSize::default()) {
                Ok(t) => (t.t_stat, t.df, t.p_value),
                // Equal rates at 0 or 1: no variance and no difference.
                Err(Error::Degenerate(_)) => (0.0, 2.0 * n as f64 - 2.0, 1.0),
                Err(e) => return Err(e),
            };
        rows.push(PairSignificance {
            pair_id: pair.pair_id.clone(),
            word_a: pair.word_a.clone(),
            word_b: pair.word_b.clone(),
            rate_a: pair.rate_a,
            rate_b: pair.rate_b,
            t_stat,
            df,
            p_value,
            significant_p: p_value < ALPHA,
            significant_t: t_stat.abs() >= T_CRITICAL,
        });
    }
    Ok(SignificanceTable {
        count_p: rows.iter().filter(|r| r.significant_p).count(),
        count_t: rows.iter().filter(|r| r.significant_t).count(),
        rows,
    })
}
