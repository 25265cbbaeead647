use serde::{Deserialize, Serialize};

use super::{CorrelationRow, HighLowRow};
use crate::features::{Factor, Feature};
use crate::stats::ALPHA;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Supported,
    Partial,
    NotSupported,
    Undetermined,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Supported => "supported",
            Verdict::Partial => "partially supported",
            Verdict::NotSupported => "not supported",
            Verdict::Undetermined => "undetermined",
        }
    }

    fn from_counts(passed: usize, tested: usize) -> Verdict {
        match (passed, tested) {
            (_, 0) => Verdict::Undetermined,
            (0, _) => Verdict::NotSupported,
            (p, t) if p == t => Verdict::Supported,
            _ => Verdict::Partial,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypothesisVerdict {
    pub hypothesis: String,
    pub verdict: Verdict,
    pub evidence: String,
}

impl HypothesisVerdict {
    pub(crate) fn undetermined(hypothesis: &str, evidence: String) -> Self {
        HypothesisVerdict {
            hypothesis: hypothesis.into(),
            verdict: Verdict::Undetermined,
            evidence,
        }
    }
}

fn hypothesis_for(factor: Factor) -> &'static str {
    match factor {
        Factor::Representativeness => "H1A",
        Factor::EaseOfUse => "H1B",
        Factor::Affect => "H1C",
        Factor::Distribution => "H1D",
    }
}

fn agrees(feature: Feature, stat: Option<f64>, p: Option<f64>) -> Option<bool> {
    Some(stat? * feature.expected_sign() > 0.0 && p? < ALPHA)
}

/// H1A–H1D: a measure supports its hypothesis when its correlation has the
/// hypothesized sign and p < 0.05. All measures of a factor → supported,
/// some → partial, none → not supported.
pub fn correlation_verdicts(rows: &[CorrelationRow]) -> Vec<HypothesisVerdict> {
    Factor::ALL
        .into_iter()
        .map(|factor| {
            let mut passed = 0;
            let mut tested = 0;
            let mut evidence = Vec::new();
            for row in rows.iter().filter(|r| r.feature.factor() == factor) {
                match agrees(row.feature, row.r, row.p_value) {
                    Some(ok) => {
                        tested += 1;
                        passed += usize::from(ok);
                        evidence.push(format!(
                            "{} r = {:.3} (p = {:.3})",
                            row.feature,
                            row.r.unwrap_or_default(),
                            row.p_value.unwrap_or_default()
                        ));
                    }
                    None => evidence.push(format!("{} degenerate", row.feature)),
                }
            }
            HypothesisVerdict {
                hypothesis: hypothesis_for(factor).into(),
                verdict: Verdict::from_counts(passed, tested),
                evidence: evidence.join("; "),
            }
        })
        .collect()
}

/// H2: a factor is supported when any of its measures differs between the
/// higher- and lower-rate words in the hypothesized direction with p < 0.05.
pub fn h2_verdict(rows: &[HighLowRow]) -> HypothesisVerdict {
    let mut passed = 0;
    let mut tested = 0;
    let mut evidence = Vec::new();
    for factor in Factor::ALL {
        let results: Vec<bool> = rows
            .iter()
            .filter(|r| r.feature.factor() == factor)
            .filter_map(|r| agrees(r.feature, r.t_stat, r.p_value))
            .collect();
        if results.is_empty() {
            continue;
        }
        tested += 1;
        let ok = results.iter().any(|&b| b);
        passed += usize::from(ok);
        evidence.push(format!("{}: {}", factor.name(), if ok { "yes" } else { "no" }));
    }
    if tested == 0 {
        return HypothesisVerdict::undetermined("H2", "no high/low t-tests available".into());
    }
    HypothesisVerdict {
        hypothesis: "H2".into(),
        verdict: Verdict::from_counts(passed, tested),
        evidence: evidence.join("; "),
    }
}

/// H3: the regression is significant (F p < 0.05) and predicts the
/// direction of more than half of the pairs.
pub fn h3_verdict(r_squared: f64, f_p_value: f64, accuracy: f64) -> HypothesisVerdict {
    let ok = f_p_value < ALPHA && accuracy > 0.5;
    HypothesisVerdict {
        hypothesis: "H3".into(),
        verdict: if ok { Verdict::Supported } else { Verdict::NotSupported },
        evidence: format!("R² = {r_squared:.3}, F p = {f_p_value:.3e}, accuracy = {accuracy:.3}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(feature: Feature, r: f64, p: f64) -> CorrelationRow {
        CorrelationRow {
            feature,
            n: 100,
            r: Some(r),
            t_stat: Some(0.0),
            p_value: Some(p),
            degenerate: false,
            published_r: 0.0,
        }
    }

    #[test]
    fn sign_and_significance_both_required() {
        let rows = vec![
            row(Feature::WordLength, -0.4, 0.001),
            row(Feature::Syllables, 0.4, 0.001),
            row(Feature::Frequency, 0.3, 0.2),
        ];
        let v = correlation_verdicts(&rows);
        assert_eq!(v[1].hypothesis, "H1B");
        assert_eq!(v[1].verdict, Verdict::Partial);
        assert_eq!(v[3].verdict, Verdict::NotSupported);
        assert_eq!(v[0].verdict, Verdict::Undetermined);
    }

    #[test]
    fn h3_rule() {
        assert_eq!(h3_verdict(0.5, 0.01, 0.88).verdict, Verdict::Supported);
        assert_eq!(h3_verdict(0.5, 0.2, 0.88).verdict, Verdict::NotSupported);
        assert_eq!(h3_verdict(0.5, 0.01, 0.5).verdict, Verdict::NotSupported);
    }
}
