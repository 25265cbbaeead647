//! Statistical kernel: Pearson correlation, Welch's t-test with Cohen's d,
//! the exact binomial upper tail, and ordinary least squares.
//!
//! Every p-value goes through the regularized incomplete beta function in
//! [`special`]; there is no dependency on an external statistics library.

mod binomial;
mod correlation;
mod ols;
pub mod special;
mod ttest;

pub use binomial::binomial_test;
pub use correlation::{pearson, CorrelationResult};
pub use ols::{ols_fit, RegressionModel, SINGULAR_CONDITION, WARN_CONDITION};
pub use special::{f_sf, t_cdf, t_two_sided_p};
pub use ttest::{
    welch_from_summaries, welch_t, welch_t_with, EffectSize, SampleSummary, TTestResult,
};

/// Significance level used throughout.
pub const ALPHA: f64 = 0.05;
