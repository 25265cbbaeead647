//! Lexical feature extraction and engagement prediction for synonym choice.
//!
//! The crate measures four groups of word properties (representativeness,
//! ease of use, affect and distribution), fits a regression on within-pair
//! feature differences to predict which synonym of a pair is selected more
//! often, regenerates the full statistical battery from a replication
//! dataset, and ranks synonym swaps for running text.
//!
//! Modules, bottom-up:
//! - [`lexicon`]: WordNet (WNDB), SentiWordNet and Zipf-frequency loaders.
//! - [`features`]: the ten per-word measures and pairwise deltas.
//! - [`stats`]: correlation, Welch's t, binomial tail, OLS and the
//!   special functions behind their p-values.
//! - [`model`]: pairwise-difference designs, training and prediction.
//! - [`replication`]: dataset ingestion and the report generator.
//! - [`advisor`]: tokenization and synonym suggestions.

pub mod advisor;
mod error;
pub mod features;
pub mod lexicon;
pub mod model;
pub mod replication;
mod serde_ext;
pub mod stats;

pub use error::{Error, Result};

pub use advisor::{Advisor, AdvisorConfig, Candidate, Token, TokenSuggestion};
pub use features::{
    count_syllables, feature_delta, Coverage, Feature, FeatureConfig, FeatureDelta,
    FeatureExtractor, FeatureReport, ReadFeatures,
};
pub use lexicon::{
    normalize_lemma, FrequencyTable, Lexicon, Pos, Resources, SentimentLexicon, SentimentScore,
    Synset, SynsetId,
};
pub use model::{
    build_design, casewise_accuracy, per_pair_significance, predict_pair, train, DesignConfig,
    DesignMode, PairDesign, PairSide, Prediction, SynonymPair, TrainedModel,
};
pub use replication::{
    load_dataset, render_report, run_replication, ColumnMap, ReplicationConfig,
    ReplicationDataset, ReplicationReport, ReportFormat,
};
pub use stats::{
    binomial_test, ols_fit, pearson, t_cdf, welch_t, CorrelationResult, RegressionModel,
    TTestResult,
};
