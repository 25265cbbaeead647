use serde::{Deserialize, Serialize};

use super::{resolve_pair, DesignConfig, DesignMode, FeatureLookup, SynonymPair};
use crate::features::{feature_delta, Feature, FeatureDelta};
use crate::{Error, Result};

/// One weighted feature delta inside a predictor column.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub feature: Feature,
    pub weight: f64,
}

/// A design column: `Σ weight · delta[feature]` over its terms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PredictorColumn {
    pub name: String,
    pub terms: Vec<Term>,
}

impl PredictorColumn {
    pub fn value(&self, delta: &FeatureDelta) -> f64 {
        self.terms.iter().map(|t| t.weight * delta[t.feature]).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DesignRow {
    pub pair_id: String,
    pub delta: FeatureDelta,
    pub x: Vec<f64>,
    /// Observed rate difference.
    pub y: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairDesign {
    pub mode: DesignMode,
    pub columns: Vec<PredictorColumn>,
    pub rows: Vec<DesignRow>,
}

/// Root mean square of each feature delta over the pairs. The deltas of a
/// pair set are sign-symmetric (either word order is equally valid), so this
/// is the standard deviation of that symmetric population.
fn delta_rms(deltas: &[FeatureDelta]) -> [f64; Feature::COUNT] {
    let n = deltas.len() as f64;
    std::array::from_fn(|j| (deltas.iter().map(|d| d.0[j] * d.0[j]).sum::<f64>() / n).sqrt())
}

pub fn build_design(
    pairs: &[SynonymPair],
    features: &dyn FeatureLookup,
    config: &DesignConfig,
) -> Result<PairDesign> {
    if pairs.is_empty() {
        return Err(Error::Argument("no pairs to build a design from".into()));
    }
    let mut deltas = Vec::with_capacity(pairs.len());
    for pair in pairs {
        pair.validate()?;
        let (a, b) = resolve_pair(pair, features)?;
        deltas.push(feature_delta(&a, &b));
    }
    let rms = delta_rms(&deltas);

    let columns = match config.mode {
        DesignMode::Plain | DesignMode::Mirrored => {
            if config.predictors.is_empty() {
                return Err(Error::Argument("no predictors selected".into()));
            }
            let mut seen = Vec::new();
            config
                .predictors
                .iter()
                .map(|&f| {
                    if seen.contains(&f) {
                        return Err(Error::Argument(format!("predictor {f} listed twice")));
                    }
                    seen.push(f);
                    let s = rms[f.index()];
                    let weight = if config.standardize && s > 0.0 { 1.0 / s } else { 1.0 };
                    Ok(PredictorColumn {
                        name: f.name().to_string(),
                        terms: vec![Term { feature: f, weight }],
                    })
                })
                .collect::<Result<Vec<_>>>()?
        }
        DesignMode::Composite => {
            // Constant-zero deltas carry no information and cannot be scaled.
            let terms: Vec<Term> = config
                .composite_weights
                .iter()
                .filter(|(f, w)| **w != 0.0 && rms[f.index()] > 0.0)
                .map(|(&f, &w)| Term {
                    feature: f,
                    weight: w / rms[f.index()],
                })
                .collect();
            if terms.is_empty() {
                return Err(Error::Degenerate(
                    "every weighted feature delta is zero; composite is undefined".into(),
                ));
            }
            vec![PredictorColumn {
                name: "composite".into(),
                terms,
            }]
        }
    };

    let mirrored = config.mode != DesignMode::Plain;
    let mut rows = Vec::with_capacity(pairs.len() * if mirrored { 2 } else { 1 });
    for (pair, delta) in pairs.iter().zip(deltas) {
        let row = |delta: FeatureDelta, y: f64| DesignRow {
            pair_id: pair.pair_id.clone(),
            x: columns.iter().map(|c| c.value(&delta)).collect(),
            delta,
            y,
        };
        rows.push(row(delta, pair.rate_delta()));
        if mirrored {
            rows.push(row(delta.negated(), -pair.rate_delta()));
        }
    }
    Ok(PairDesign {
        mode: config.mode,
        columns,
        rows,
    })
}
