use super::special::ln_factorial;
use crate::{Error, Result};

/// Exact one-sided upper tail P(X >= k) for X ~ Binomial(n, p0).
///
/// Terms are formed in log space and summed from `n` down to `k`, so the
/// tail for `k` is the tail for `k + 1` plus one non-negative term and the
/// result is non-increasing in `k`.
pub fn binomial_test(k: u64, n: u64, p0: f64) -> Result<f64> {
    if k > n {
        return Err(Error::Argument(format!("successes {k} exceed trials {n}")));
    }
    if !(p0 > 0.0 && p0 < 1.0) {
        return Err(Error::Argument(format!("null probability {p0} not in (0, 1)")));
    }
    if k == 0 {
        return Ok(1.0);
    }
    let (lp, lq) = (p0.ln(), (1.0 - p0).ln());
    let ln_n = ln_factorial(n);
    let mut tail = 0.0;
    for i in (k..=n).rev() {
        let ln_term = ln_n - ln_factorial(i) - ln_factorial(n - i) + i as f64 * lp + (n - i) as f64 * lq;
        tail += ln_term.exp();
    }
    Ok(tail.min(1.0))
}
