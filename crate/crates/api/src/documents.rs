//! Response documents shared by the HTTP endpoints and the CLI's `--json`
//! output, so both interfaces print identical bytes for identical inputs.

use serde::{Deserialize, Serialize};

use read_core::model::{Contribution, PairSide, Prediction};
use read_core::{Coverage, FeatureReport, ReadFeatures};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureDocument {
    pub format: String,
    pub schema_version: u32,
    pub word: String,
    pub features: ReadFeatures,
    pub coverage: Coverage,
}

impl FeatureDocument {
    pub fn new(report: FeatureReport) -> Self {
        FeatureDocument {
            format: "read-features".into(),
            schema_version: SCHEMA_VERSION,
            word: report.word,
            features: report.features,
            coverage: report.coverage,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairDocument {
    pub format: String,
    pub schema_version: u32,
    pub word_a: String,
    pub word_b: String,
    /// The predicted winner, absent on a tie.
    pub winner: Option<String>,
    pub outcome: PairSide,
    pub margin: f64,
    pub intercept: f64,
    pub contributions: Vec<Contribution>,
    pub coverage_a: Coverage,
    pub coverage_b: Coverage,
}

impl PairDocument {
    pub fn new(a: &FeatureReport, b: &FeatureReport, prediction: Prediction) -> Self {
        PairDocument {
            format: "read-prediction".into(),
            schema_version: SCHEMA_VERSION,
            word_a: a.word.clone(),
            word_b: b.word.clone(),
            winner: match prediction.winner {
                PairSide::A => Some(a.word.clone()),
                PairSide::B => Some(b.word.clone()),
                PairSide::Tie => None,
            },
            outcome: prediction.winner,
            margin: prediction.margin,
            intercept: prediction.intercept,
            contributions: prediction.contributions,
            coverage_a: a.coverage,
            coverage_b: b.coverage,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorDocument {
    pub schema_version: u32,
    pub error: ErrorBody,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub status: u16,
    pub message: String,
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize") + "\n"
}

/// Loads a dataset through its column map and runs the replication with
/// default settings. With `resources`, locally computed features are added
/// as a second battery.
pub fn replication_report(
    data: &std::path::Path,
    map: &std::path::Path,
    resources: Option<&read_core::Resources>,
) -> read_core::Result<read_core::ReplicationReport> {
    let map = read_core::ColumnMap::load(map)?;
    let mut dataset = read_core::load_dataset(data, &map)?;
    if let Some(r) = resources {
        dataset = dataset.with_local_features(&read_core::FeatureExtractor::from_resources(r))?;
    }
    read_core::run_replication(&dataset, &read_core::ReplicationConfig::default())
}
