//! Pairwise-difference regression over synonym pairs.
//!
//! Each observation is the within-pair difference of the ten measures
//! (`word_a − word_b`) and of the observed selection rates. Three design
//! modes are supported:
//!
//! - [`DesignMode::Plain`]: one row per pair, selected features as columns,
//!   intercept fit.
//! - [`DesignMode::Mirrored`]: two sign-negated rows per pair, fit through
//!   the origin, so predictions are antisymmetric by construction.
//! - [`DesignMode::Composite`]: mirrored rows with a single predictor, the
//!   sign-weighted sum of RMS-scaled deltas, fit with an intercept (numerator
//!   df 1, denominator df `2·pairs − 2`).
//!
//! Predictions use the feature terms only: the intercept of a plain fit
//! estimates an artifact of which word was listed first, so [`Prediction`]
//! reports it but leaves it out of the margin.

mod design;
mod significance;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::features::{feature_delta, Feature, FeatureDelta, FeatureExtractor, ReadFeatures};
use crate::stats::{ols_fit, RegressionModel};
use crate::{Error, Result};

pub use design::{build_design, DesignRow, PairDesign, PredictorColumn, Term};
pub use significance::{per_pair_significance, PairSignificance, SignificanceTable, T_CRITICAL};

pub const MODEL_FORMAT: &str = "read-model";
pub const MODEL_SCHEMA_VERSION: u32 = 1;

/// Margins at or below this magnitude are ties.
pub const TIE_EPSILON: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SynonymPair {
    pub pair_id: String,
    pub word_a: String,
    pub word_b: String,
    pub rate_a: f64,
    pub rate_b: f64,
    /// Responses collected per word; needed for significance testing only.
    pub n_responses: Option<u32>,
}

impl SynonymPair {
    pub fn new(
        pair_id: impl Into<String>,
        word_a: impl Into<String>,
        word_b: impl Into<String>,
        rate_a: f64,
        rate_b: f64,
        n_responses: Option<u32>,
    ) -> Result<Self> {
        let pair = SynonymPair {
            pair_id: pair_id.into(),
            word_a: word_a.into(),
            word_b: word_b.into(),
            rate_a,
            rate_b,
            n_responses,
        };
        pair.validate()?;
        Ok(pair)
    }

    pub fn validate(&self) -> Result<()> {
        if self.word_a == self.word_b {
            return Err(Error::Validation(format!(
                "pair {}: both words are {:?}",
                self.pair_id, self.word_a
            )));
        }
        for (w, r) in [(&self.word_a, self.rate_a), (&self.word_b, self.rate_b)] {
            if !(0.0..=1.0).contains(&r) {
                return Err(Error::Validation(format!(
                    "pair {}: rate {r} for {w:?} not in [0, 1]",
                    self.pair_id
                )));
            }
        }
        if self.n_responses == Some(0) {
            return Err(Error::Validation(format!("pair {}: zero responses", self.pair_id)));
        }
        Ok(())
    }

    /// Observed `rate_a − rate_b`.
    pub fn rate_delta(&self) -> f64 {
        self.rate_a - self.rate_b
    }

    /// The same pair with the two words swapped.
    pub fn flipped(&self) -> Self {
        SynonymPair {
            pair_id: self.pair_id.clone(),
            word_a: self.word_b.clone(),
            word_b: self.word_a.clone(),
            rate_a: self.rate_b,
            rate_b: self.rate_a,
            n_responses: self.n_responses,
        }
    }
}

/// Source of per-word features for design construction.
pub trait FeatureLookup {
    fn lookup(&self, word: &str) -> Option<ReadFeatures>;
}

impl FeatureLookup for HashMap<String, ReadFeatures> {
    fn lookup(&self, word: &str) -> Option<ReadFeatures> {
        self.get(word).copied()
    }
}

impl FeatureLookup for BTreeMap<String, ReadFeatures> {
    fn lookup(&self, word: &str) -> Option<ReadFeatures> {
        self.get(word).copied()
    }
}

/// Every word resolves; unknown words get zeroed lexical measures.
impl FeatureLookup for FeatureExtractor<'_> {
    fn lookup(&self, word: &str) -> Option<ReadFeatures> {
        self.read_features(word).ok()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DesignMode {
    #[default]
    Plain,
    Mirrored,
    Composite,
}

impl DesignMode {
    pub const ALL: [DesignMode; 3] = [DesignMode::Plain, DesignMode::Mirrored, DesignMode::Composite];

    pub fn name(self) -> &'static str {
        match self {
            DesignMode::Plain => "plain",
            DesignMode::Mirrored => "mirrored",
            DesignMode::Composite => "composite",
        }
    }

    pub fn fits_intercept(self) -> bool {
        !matches!(self, DesignMode::Mirrored)
    }
}

impl fmt::Display for DesignMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DesignMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DesignMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Argument(format!("unknown design mode {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DesignConfig {
    pub mode: DesignMode,
    /// Columns for plain and mirrored designs.
    pub predictors: Vec<Feature>,
    /// Divide plain/mirrored columns by their RMS over the design rows.
    pub standardize: bool,
    /// Composite weights; features absent from the map do not contribute.
    pub composite_weights: BTreeMap<Feature, f64>,
}

impl DesignConfig {
    /// Emotionality is `pos_max + neg_max` exactly, so the default column
    /// set leaves it out to keep the design full rank.
    pub fn default_predictors() -> Vec<Feature> {
        Feature::ALL
            .into_iter()
            .filter(|f| *f != Feature::Emotionality)
            .collect()
    }

    /// +1 for representativeness, affect and frequency; −1 for length and
    /// syllables.
    pub fn default_composite_weights() -> BTreeMap<Feature, f64> {
        Feature::ALL.into_iter().map(|f| (f, f.expected_sign())).collect()
    }

    pub fn with_mode(mode: DesignMode) -> Self {
        DesignConfig {
            mode,
            ..DesignConfig::default()
        }
    }
}

impl Default for DesignConfig {
    fn default() -> Self {
        DesignConfig {
            mode: DesignMode::Plain,
            predictors: DesignConfig::default_predictors(),
            standardize: false,
            composite_weights: DesignConfig::default_composite_weights(),
        }
    }
}

/// A fitted model plus the column definitions needed to score new pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainedModel {
    pub format: String,
    pub schema_version: u32,
    pub mode: DesignMode,
    pub columns: Vec<PredictorColumn>,
    pub fit: RegressionModel,
}

impl TrainedModel {
    /// Coefficient on each raw feature delta, folding column weights in.
    pub fn feature_coefficients(&self) -> [f64; Feature::COUNT] {
        let mut out = [0.0; Feature::COUNT];
        for (col, b) in self.columns.iter().zip(&self.fit.coefficients) {
            for t in &col.terms {
                out[t.feature.index()] += b * t.weight;
            }
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let model: TrainedModel = serde_json::from_str(text)?;
        model.validate()?;
        Ok(model)
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        TrainedModel::from_json(&text)
    }

    pub fn save(&self, path: impl AsRef<std::path::Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()? + "\n").map_err(|e| Error::io(path, e))
    }

    fn validate(&self) -> Result<()> {
        if self.format != MODEL_FORMAT {
            return Err(Error::Argument(format!("not a model file (format {:?})", self.format)));
        }
        if self.schema_version != MODEL_SCHEMA_VERSION {
            return Err(Error::Argument(format!(
                "unsupported model schema version {}",
                self.schema_version
            )));
        }
        if self.columns.is_empty() || self.columns.len() != self.fit.coefficients.len() {
            return Err(Error::Argument(format!(
                "model has {} columns but {} coefficients",
                self.columns.len(),
                self.fit.coefficients.len()
            )));
        }
        if self.fit.coefficients.iter().any(|b| !b.is_finite()) {
            return Err(Error::Argument("model has a non-finite coefficient".into()));
        }
        Ok(())
    }
}

pub fn train(design: &PairDesign) -> Result<TrainedModel> {
    let x: Vec<Vec<f64>> = design.rows.iter().map(|r| r.x.clone()).collect();
    let y: Vec<f64> = design.rows.iter().map(|r| r.y).collect();
    let fit = ols_fit(&x, &y, design.mode.fits_intercept())?;
    Ok(TrainedModel {
        format: MODEL_FORMAT.to_string(),
        schema_version: MODEL_SCHEMA_VERSION,
        mode: design.mode,
        columns: design.columns.clone(),
        fit,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairSide {
    A,
    B,
    Tie,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Contribution {
    pub feature: Feature,
    pub delta: f64,
    pub contribution: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub winner: PairSide,
    /// Predicted `rate_a − rate_b` from the feature terms.
    pub margin: f64,
    /// One entry per feature in canonical order; sums to `margin`.
    pub contributions: Vec<Contribution>,
    /// Reported for reference, not part of `margin`.
    pub intercept: f64,
}

pub fn predict_pair(model: &TrainedModel, a: &ReadFeatures, b: &ReadFeatures) -> Result<Prediction> {
    model.validate()?;
    Ok(predict_delta(model, &feature_delta(a, b)))
}

pub(crate) fn predict_delta(model: &TrainedModel, delta: &FeatureDelta) -> Prediction {
    let coef = model.feature_coefficients();
    let contributions: Vec<Contribution> = Feature::ALL
        .into_iter()
        .map(|f| Contribution {
            feature: f,
            delta: delta[f],
            contribution: coef[f.index()] * delta[f],
        })
        .collect();
    let margin: f64 = contributions.iter().map(|c| c.contribution).sum();
    let winner = if margin.abs() <= TIE_EPSILON {
        PairSide::Tie
    } else if margin > 0.0 {
        PairSide::A
    } else {
        PairSide::B
    };
    Prediction {
        winner,
        margin,
        contributions,
        intercept: model.fit.intercept,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CasewiseAccuracy {
    pub hits: usize,
    pub total: usize,
    pub fraction: f64,
    /// Pairs predicted as ties; counted as misses.
    pub zero_margin: usize,
    /// Pairs with identical observed rates; counted as misses.
    pub zero_observed: usize,
}

/// Share of pairs whose predicted winner matches the observed one.
pub fn casewise_accuracy(
    model: &TrainedModel,
    pairs: &[SynonymPair],
    features: &dyn FeatureLookup,
) -> Result<CasewiseAccuracy> {
    model.validate()?;
    let mut acc = CasewiseAccuracy {
        hits: 0,
        total: pairs.len(),
        fraction: 0.0,
        zero_margin: 0,
        zero_observed: 0,
    };
    for pair in pairs {
        let (fa, fb) = resolve_pair(pair, features)?;
        let p = predict_delta(model, &feature_delta(&fa, &fb));
        let observed = pair.rate_delta();
        if p.winner == PairSide::Tie {
            acc.zero_margin += 1;
        } else if observed == 0.0 {
            acc.zero_observed += 1;
        } else if (p.margin > 0.0) == (observed > 0.0) {
            acc.hits += 1;
        }
    }
    if acc.total > 0 {
        acc.fraction = acc.hits as f64 / acc.total as f64;
    }
    Ok(acc)
}

pub(crate) fn resolve_pair(
    pair: &SynonymPair,
    features: &dyn FeatureLookup,
) -> Result<(ReadFeatures, ReadFeatures)> {
    let get = |w: &str| {
        features
            .lookup(w)
            .ok_or_else(|| Error::Build(format!("no features for {w:?} (pair {})", pair.pair_id)))
    };
    Ok((get(&pair.word_a)?, get(&pair.word_b)?))
}

/// Out-of-sample accuracy from k-fold cross-validation. Not part of the
/// in-sample replication; pair `i` is held out in fold `i mod k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub folds: usize,
    pub accuracy: CasewiseAccuracy,
}

pub fn cross_validate(
    pairs: &[SynonymPair],
    features: &dyn FeatureLookup,
    config: &DesignConfig,
    folds: usize,
) -> Result<CrossValidation> {
    if folds < 2 || folds > pairs.len() {
        return Err(Error::Argument(format!(
            "fold count {folds} must be in 2..={}",
            pairs.len()
        )));
    }
    let mut total = CasewiseAccuracy {
        hits: 0,
        total: 0,
        fraction: 0.0,
        zero_margin: 0,
        zero_observed: 0,
    };
    for fold in 0..folds {
        let (test, train_pairs): (Vec<_>, Vec<_>) = pairs
            .iter()
            .enumerate()
            .partition(|(i, _)| i % folds == fold);
        let train_pairs: Vec<SynonymPair> = train_pairs.into_iter().map(|(_, p)| p.clone()).collect();
        let test: Vec<SynonymPair> = test.into_iter().map(|(_, p)| p.clone()).collect();
        let model = train(&build_design(&train_pairs, features, config)?)?;
        let acc = casewise_accuracy(&model, &test, features)?;
        total.hits += acc.hits;
        total.total += acc.total;
        total.zero_margin += acc.zero_margin;
        total.zero_observed += acc.zero_observed;
    }
    total.fraction = total.hits as f64 / total.total as f64;
    Ok(CrossValidation {
        folds,
        accuracy: total,
    })
}
