#![allow(clippy::needless_range_loop)]

use serde::{Deserialize, Serialize};

use super::special::{f_sf, t_two_sided_p};
use crate::{Error, Result};

/// Condition number of the column-scaled normal matrix above which the design
/// is treated as rank deficient.
pub const SINGULAR_CONDITION: f64 = 1e13;
/// Condition number above which a fit is flagged as ill-conditioned.
pub const WARN_CONDITION: f64 = 1e10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegressionModel {
    /// One coefficient per design column, in column order.
    pub coefficients: Vec<f64>,
    /// Zero for fits through the origin.
    pub intercept: f64,
    pub fit_intercept: bool,
    /// Coefficient times the column's spread over the response's spread
    /// (standard deviations, or root mean squares for origin fits).
    #[serde(with = "crate::serde_ext::vec")]
    pub standardized: Vec<f64>,
    #[serde(with = "crate::serde_ext::vec")]
    pub std_errors: Vec<f64>,
    pub p_values: Vec<f64>,
    /// Centered for intercept fits, uncentered for origin fits.
    pub r_squared: f64,
    #[serde(with = "crate::serde_ext")]
    pub f_stat: f64,
    /// (numerator, denominator) degrees of freedom.
    pub f_df: (f64, f64),
    pub f_p_value: f64,
    pub n: usize,
    pub residuals: Vec<f64>,
    pub fitted: Vec<f64>,
    /// Condition number of XᵀX after scaling every column to unit length.
    pub condition_number: f64,
    pub ill_conditioned: bool,
}

impl RegressionModel {
    pub fn predict(&self, row: &[f64]) -> f64 {
        self.intercept + self.coefficients.iter().zip(row).map(|(b, x)| b * x).sum::<f64>()
    }
}

/// Ordinary least squares on a row-major design. `intercept` adds a constant
/// column; without it the fit goes through the origin.
pub fn ols_fit(x: &[Vec<f64>], y: &[f64], intercept: bool) -> Result<RegressionModel> {
    let n = y.len();
    if x.len() != n {
        return Err(Error::Argument(format!("{} design rows for {n} responses", x.len())));
    }
    let k = x.first().map_or(0, Vec::len);
    if k == 0 {
        return Err(Error::Argument("design has no predictor columns".into()));
    }
    if x.iter().any(|r| r.len() != k) {
        return Err(Error::Argument("design rows differ in length".into()));
    }
    if n < k + 2 {
        return Err(Error::Argument(format!(
            "need at least {} rows for {k} predictors, got {n}",
            k + 2
        )));
    }
    if x.iter().flatten().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::Argument("non-finite value in design or response".into()));
    }

    // Working design: optional leading constant column.
    let p = k + usize::from(intercept);
    let column = |i: usize, j: usize| -> f64 {
        if intercept {
            if j == 0 {
                1.0
            } else {
                x[i][j - 1]
            }
        } else {
            x[i][j]
        }
    };
    let mut scale = vec![0.0; p];
    for (j, s) in scale.iter_mut().enumerate() {
        *s = (0..n).map(|i| column(i, j).powi(2)).sum::<f64>().sqrt();
        if *s == 0.0 {
            return Err(Error::SingularDesign {
                condition: f64::INFINITY,
            });
        }
    }
    let xs: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..p).map(|j| column(i, j) / scale[j]).collect())
        .collect();

    let mut xtx = vec![vec![0.0; p]; p];
    let mut xty = vec![0.0; p];
    for (row, &yi) in xs.iter().zip(y) {
        for a in 0..p {
            xty[a] += row[a] * yi;
            for b in a..p {
                xtx[a][b] += row[a] * row[b];
            }
        }
    }
    for a in 0..p {
        for b in 0..a {
            xtx[a][b] = xtx[b][a];
        }
    }

    let eig = jacobi_eigenvalues(&xtx);
    let (lo, hi) = eig
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let condition = if lo > 0.0 { hi / lo } else { f64::INFINITY };
    if condition > SINGULAR_CONDITION {
        return Err(Error::SingularDesign { condition });
    }
    let chol = cholesky(&xtx).ok_or(Error::SingularDesign { condition })?;

    let mut beta = chol_solve(&chol, &xty);
    // One step of iterative refinement against the unfactored system.
    let resid: Vec<f64> = (0..p)
        .map(|a| xty[a] - (0..p).map(|b| xtx[a][b] * beta[b]).sum::<f64>())
        .collect();
    for (b, d) in beta.iter_mut().zip(chol_solve(&chol, &resid)) {
        *b += d;
    }
    let beta: Vec<f64> = beta.iter().zip(&scale).map(|(b, s)| b / s).collect();

    let (b0, coefficients) = if intercept {
        (beta[0], beta[1..].to_vec())
    } else {
        (0.0, beta.clone())
    };
    let fitted: Vec<f64> = x
        .iter()
        .map(|row| b0 + coefficients.iter().zip(row).map(|(b, v)| b * v).sum::<f64>())
        .collect();
    let residuals: Vec<f64> = y.iter().zip(&fitted).map(|(a, f)| a - f).collect();

    let y_center = if intercept { y.iter().sum::<f64>() / n as f64 } else { 0.0 };
    let ss_tot: f64 = y.iter().map(|v| (v - y_center).powi(2)).sum();
    if ss_tot == 0.0 {
        return Err(Error::Degenerate(if intercept {
            "response is constant".into()
        } else {
            "response is identically zero".into()
        }));
    }
    let ss_res: f64 = residuals.iter().map(|e| e * e).sum();
    let r_squared = (1.0 - ss_res / ss_tot).clamp(0.0, 1.0);
    let df1 = k as f64;
    let df2 = (n - p) as f64;
    let f_stat = if r_squared < 1.0 {
        (r_squared / df1) / ((1.0 - r_squared) / df2)
    } else {
        f64::INFINITY
    };
    let f_p_value = f_sf(f_stat, df1, df2)?;

    // Coefficient standard errors from σ²(XᵀX)⁻¹ on the scaled system.
    let sigma2 = ss_res / df2;
    let mut std_errors = Vec::with_capacity(k);
    let mut p_values = Vec::with_capacity(k);
    for j in (p - k)..p {
        let mut e = vec![0.0; p];
        e[j] = 1.0;
        let var = chol_solve(&chol, &e)[j] * sigma2 / (scale[j] * scale[j]);
        let se = var.max(0.0).sqrt();
        let b = beta[j];
        let p_value = if se > 0.0 {
            t_two_sided_p(b / se, df2)?
        } else if b == 0.0 {
            1.0
        } else {
            0.0
        };
        std_errors.push(se);
        p_values.push(p_value);
    }

    let spread = |v: &mut dyn Iterator<Item = f64>| -> f64 {
        let vals: Vec<f64> = v.collect();
        let c = if intercept { vals.iter().sum::<f64>() / n as f64 } else { 0.0 };
        (vals.iter().map(|a| (a - c).powi(2)).sum::<f64>() / n as f64).sqrt()
    };
    let sy = spread(&mut y.iter().copied());
    let standardized = coefficients
        .iter()
        .enumerate()
        .map(|(j, b)| b * spread(&mut x.iter().map(|r| r[j])) / sy)
        .collect();

    Ok(RegressionModel {
        coefficients,
        intercept: b0,
        fit_intercept: intercept,
        standardized,
        std_errors,
        p_values,
        r_squared,
        f_stat,
        f_df: (df1, df2),
        f_p_value,
        n,
        residuals,
        fitted,
        condition_number: condition,
        ill_conditioned: condition > WARN_CONDITION,
    })
}

fn cholesky(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let p = a.len();
    let mut l = vec![vec![0.0; p]; p];
    for i in 0..p {
        for j in 0..=i {
            let s: f64 = a[i][j] - (0..j).map(|m| l[i][m] * l[j][m]).sum::<f64>();
            if i == j {
                if s <= 0.0 {
                    return None;
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    Some(l)
}

fn chol_solve(l: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let p = l.len();
    let mut z = vec![0.0; p];
    for i in 0..p {
        z[i] = (b[i] - (0..i).map(|m| l[i][m] * z[m]).sum::<f64>()) / l[i][i];
    }
    let mut x = vec![0.0; p];
    for i in (0..p).rev() {
        x[i] = (z[i] - (i + 1..p).map(|m| l[m][i] * x[m]).sum::<f64>()) / l[i][i];
    }
    x
}

/// Eigenvalues of a small symmetric matrix by cyclic Jacobi rotations.
fn jacobi_eigenvalues(a: &[Vec<f64>]) -> Vec<f64> {
    let p = a.len();
    let mut m = a.to_vec();
    for _sweep in 0..100 {
        let off: f64 = (0..p)
            .flat_map(|i| (0..p).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i][j] * m[i][j])
            .sum();
        let diag: f64 = (0..p).map(|i| m[i][i] * m[i][i]).sum();
        if off <= 1e-30 * diag {
            break;
        }
        for r in 0..p {
            for c in r + 1..p {
                if m[r][c] == 0.0 {
                    continue;
                }
                let theta = (m[c][c] - m[r][r]) / (2.0 * m[r][c]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let cos = 1.0 / (t * t + 1.0).sqrt();
                let sin = t * cos;
                for k in 0..p {
                    let (mkr, mkc) = (m[k][r], m[k][c]);
                    m[k][r] = cos * mkr - sin * mkc;
                    m[k][c] = sin * mkr + cos * mkc;
                }
                for k in 0..p {
                    let (mrk, mck) = (m[r][k], m[c][k]);
                    m[r][k] = cos * mrk - sin * mck;
                    m[c][k] = sin * mrk + cos * mck;
                }
            }
        }
    }
    (0..p).map(|i| m[i][i]).collect()
}
