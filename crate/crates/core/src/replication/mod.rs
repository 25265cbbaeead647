//! Regenerates the full statistical battery from a replication dataset.
//!
//! A report holds, for each available feature source (dataset-supplied and
//! locally recomputed):
//!
//! - Pearson correlation of each of the ten measures with selection rate;
//! - Welch t-tests of each measure between the higher- and lower-rate words
//!   of significantly different pairs, with Cohen's d;
//! - one regression block per design mode, with case-wise accuracy;
//! - hypothesis verdicts.
//!
//! It also holds the per-pair significance table, binomial tests on the
//! significant-pair count at both word and pair denominators, notes where
//! recomputed values disagree with the published ones, and a feature
//! agreement table when both sources exist.

mod dataset;
pub mod published;
mod render;
mod verdict;

use serde::{Deserialize, Serialize};

use crate::features::Feature;
use crate::model::{
    build_design, casewise_accuracy, cross_validate, per_pair_significance, train,
    CasewiseAccuracy, CrossValidation, DesignConfig, DesignMode, FeatureLookup, SignificanceTable,
    SynonymPair,
};
use crate::stats::{binomial_test, pearson, t_two_sided_p, welch_t, RegressionModel, ALPHA};
use crate::{Error, Result};

pub use dataset::{
    load_dataset, parse_dataset, ColumnMap, CoreColumns, DatasetSummary, FeatureSource,
    ReplicationDataset, WordRecord,
};
pub use render::{render_report, ReportFormat};
pub use verdict::{
    correlation_verdicts, h2_verdict, h3_verdict, HypothesisVerdict, Verdict,
};

pub const REPORT_FORMAT: &str = "read-replication-report";
pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Which pairs feed the high- versus low-rate t-tests.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HighLowScope {
    /// Pairs passing the |t| ≥ 1.961 rule.
    #[default]
    Significant,
    /// Every pair with unequal rates.
    All,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ReplicationConfig {
    pub modes: Vec<DesignMode>,
    /// Column set, standardization and composite weights; `mode` is ignored.
    pub design: DesignConfig,
    /// Mode used for the H3 verdict and the scatter output.
    pub primary_mode: DesignMode,
    pub high_low: HighLowScope,
    /// Null rate of the binomial test on the significant-pair count.
    pub binomial_p0: f64,
    /// k-fold cross-validation per mode; out-of-sample, not part of the
    /// replication proper.
    pub holdout: Option<usize>,
}

impl Default for ReplicationConfig {
    fn default() -> Self {
        ReplicationConfig {
            modes: DesignMode::ALL.to_vec(),
            design: DesignConfig::default(),
            primary_mode: DesignMode::Composite,
            high_low: HighLowScope::Significant,
            binomial_p0: ALPHA,
            holdout: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationRow {
    pub feature: Feature,
    pub n: usize,
    pub r: Option<f64>,
    #[serde(with = "opt_f64")]
    pub t_stat: Option<f64>,
    pub p_value: Option<f64>,
    /// Set when either variable is constant.
    pub degenerate: bool,
    pub published_r: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HighLowRow {
    pub feature: Feature,
    pub mean_high: f64,
    pub mean_low: f64,
    #[serde(with = "opt_f64")]
    pub t_stat: Option<f64>,
    pub df: Option<f64>,
    pub p_value: Option<f64>,
    #[serde(with = "opt_f64")]
    pub cohens_d: Option<f64>,
    pub published_t: Option<f64>,
    pub published_d: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HighLowTable {
    pub scope: HighLowScope,
    /// Pairs contributing one high and one low word each.
    pub pairs: usize,
    pub rows: Vec<HighLowRow>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScatterPoint {
    pub pair_id: String,
    pub predicted: f64,
    pub observed: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegressionBlock {
    pub mode: DesignMode,
    pub columns: Vec<String>,
    /// Coefficient on each raw feature delta (columns folded back onto
    /// features), canonical order.
    pub feature_coefficients: Vec<f64>,
    pub fit: Option<RegressionModel>,
    pub accuracy: Option<CasewiseAccuracy>,
    pub cross_validation: Option<CrossValidation>,
    /// Fitted versus observed rate difference, one point per pair.
    pub scatter: Vec<ScatterPoint>,
    pub h3: Option<HypothesisVerdict>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Battery {
    pub feature_source: FeatureSource,
    pub correlations: Vec<CorrelationRow>,
    pub high_low: HighLowTable,
    pub regressions: Vec<RegressionBlock>,
    /// H1A–H1D, H2, then H3 for the primary mode.
    pub verdicts: Vec<HypothesisVerdict>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BinomialRow {
    /// Denominator: pair count or word count.
    pub n: u64,
    pub k: u64,
    pub p0: f64,
    pub p_value: f64,
    /// Within a factor of 1.5 of the published p-value.
    pub matches_published: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignificanceSection {
    pub table: Option<SignificanceTable>,
    /// Tests on `count_t`, at n = pairs and n = words.
    pub binomial: Vec<BinomialRow>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub topic: String,
    pub published: String,
    pub recomputed: String,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AgreementRow {
    pub feature: Feature,
    pub n: usize,
    /// Words whose two values are equal to within 1e−9.
    pub exact: usize,
    pub max_abs_diff: f64,
    pub r: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReplicationReport {
    pub format: String,
    pub schema_version: u32,
    pub source: String,
    pub config: ReplicationConfig,
    pub summary: DatasetSummary,
    pub significance: SignificanceSection,
    /// Dataset-supplied features first when present.
    pub batteries: Vec<Battery>,
    pub feature_agreement: Option<Vec<AgreementRow>>,
    pub discrepancies: Vec<Discrepancy>,
}

impl ReplicationReport {
    pub fn primary_battery(&self) -> &Battery {
        &self.batteries[0]
    }

    pub fn block(&self, mode: DesignMode) -> Option<&RegressionBlock> {
        self.primary_battery().regressions.iter().find(|b| b.mode == mode)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let report: ReplicationReport = serde_json::from_str(text)?;
        if report.format != REPORT_FORMAT || report.schema_version != REPORT_SCHEMA_VERSION {
            return Err(Error::Argument(format!(
                "unsupported report {} v{}",
                report.format, report.schema_version
            )));
        }
        Ok(report)
    }
}

pub fn run_replication(dataset: &ReplicationDataset, config: &ReplicationConfig) -> Result<ReplicationReport> {
    if config.modes.is_empty() {
        return Err(Error::Argument("no design modes configured".into()));
    }
    if !config.modes.contains(&config.primary_mode) {
        return Err(Error::Argument(format!(
            "primary mode {} is not among the configured modes",
            config.primary_mode
        )));
    }
    let sources = dataset.feature_sources();
    if sources.is_empty() {
        return Err(Error::Argument(
            "dataset has no features; supply feature columns or compute them locally".into(),
        ));
    }
    let pairs = dataset.pairs();
    let significance = significance_section(dataset, &pairs, config)?;
    let batteries = sources
        .iter()
        .map(|&s| run_battery(dataset, &pairs, significance.table.as_ref(), s, config))
        .collect::<Result<Vec<_>>>()?;
    let feature_agreement = (sources.len() == 2).then(|| feature_agreement(dataset));
    let mut report = ReplicationReport {
        format: REPORT_FORMAT.to_string(),
        schema_version: REPORT_SCHEMA_VERSION,
        source: dataset.source.clone(),
        config: config.clone(),
        summary: dataset.summary.clone(),
        significance,
        batteries,
        feature_agreement,
        discrepancies: Vec::new(),
    };
    report.discrepancies = discrepancies(&report)?;
    Ok(report)
}

fn significance_section(
    dataset: &ReplicationDataset,
    pairs: &[SynonymPair],
    config: &ReplicationConfig,
) -> Result<SignificanceSection> {
    if pairs.iter().any(|p| p.n_responses.is_none()) {
        return Ok(SignificanceSection {
            table: None,
            binomial: Vec::new(),
            note: Some("dataset has no response counts; per-pair tests skipped".into()),
        });
    }
    let table = per_pair_significance(pairs)?;
    let k = table.count_t as u64;
    let mut binomial = Vec::new();
    for n in [dataset.summary.pair_count as u64, dataset.summary.word_count as u64] {
        let p_value = binomial_test(k, n, config.binomial_p0)?;
        let ratio = p_value / published::BINOMIAL_P;
        binomial.push(BinomialRow {
            n,
            k,
            p0: config.binomial_p0,
            p_value,
            matches_published: (1.0 / 1.5..=1.5).contains(&ratio),
        });
    }
    Ok(SignificanceSection {
        table: Some(table),
        binomial,
        note: None,
    })
}

fn run_battery(
    dataset: &ReplicationDataset,
    pairs: &[SynonymPair],
    significance: Option<&SignificanceTable>,
    source: FeatureSource,
    config: &ReplicationConfig,
) -> Result<Battery> {
    let features = dataset.feature_map(source);
    let rates: Vec<f64> = dataset.words.iter().map(|w| w.selection_rate).collect();

    let correlations = Feature::ALL
        .into_iter()
        .map(|f| {
            let x: Vec<f64> = dataset
                .words
                .iter()
                .map(|w| w.features(source).expect("complete source").get(f))
                .collect();
            let published_r = published::CORRELATIONS[f.index()];
            match pearson(&x, &rates) {
                Ok(c) => Ok(CorrelationRow {
                    feature: f,
                    n: c.n,
                    r: Some(c.r),
                    t_stat: Some(c.t_stat),
                    p_value: Some(c.p_value),
                    degenerate: false,
                    published_r,
                }),
                Err(Error::Degenerate(_)) => Ok(CorrelationRow {
                    feature: f,
                    n: x.len(),
                    r: None,
                    t_stat: None,
                    p_value: None,
                    degenerate: true,
                    published_r,
                }),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let high_low = high_low_table(pairs, &features, significance, config.high_low)?;

    let mut regressions = Vec::new();
    for &mode in &config.modes {
        regressions.push(regression_block(pairs, &features, mode, config));
    }

    let mut verdicts = correlation_verdicts(&correlations);
    verdicts.push(h2_verdict(&high_low.rows));
    let primary = regressions.iter().find(|b| b.mode == config.primary_mode);
    verdicts.push(match primary.and_then(|b| b.h3.clone()) {
        Some(v) => v,
        None => HypothesisVerdict::undetermined(
            "H3",
            format!("{} regression could not be fit", config.primary_mode),
        ),
    });

    Ok(Battery {
        feature_source: source,
        correlations,
        high_low,
        regressions,
        verdicts,
    })
}

fn high_low_table(
    pairs: &[SynonymPair],
    features: &dyn FeatureLookup,
    significance: Option<&SignificanceTable>,
    scope: HighLowScope,
) -> Result<HighLowTable> {
    let selected: Vec<&SynonymPair> = match scope {
        HighLowScope::Significant => match significance {
            Some(t) => pairs
                .iter()
                .zip(&t.rows)
                .filter(|(_, s)| s.significant_t)
                .map(|(p, _)| p)
                .collect(),
            None => Vec::new(),
        },
        HighLowScope::All => pairs.iter().filter(|p| p.rate_a != p.rate_b).collect(),
    };
    let mut high = Vec::new();
    let mut low = Vec::new();
    for p in &selected {
        let (fa, fb) = crate::model::resolve_pair(p, features)?;
        if p.rate_a > p.rate_b {
            high.push(fa);
            low.push(fb);
        } else {
            high.push(fb);
            low.push(fa);
        }
    }
    let mut note = None;
    let rows = Feature::ALL
        .into_iter()
        .map(|f| {
            let h: Vec<f64> = high.iter().map(|r| r.get(f)).collect();
            let l: Vec<f64> = low.iter().map(|r| r.get(f)).collect();
            let mean = |v: &[f64]| {
                if v.is_empty() {
                    0.0
                } else {
                    v.iter().sum::<f64>() / v.len() as f64
                }
            };
            let published = published::high_low(f);
            let mut row = HighLowRow {
                feature: f,
                mean_high: mean(&h),
                mean_low: mean(&l),
                t_stat: None,
                df: None,
                p_value: None,
                cohens_d: None,
                published_t: published.map(|p| p.0),
                published_d: published.map(|p| p.1),
            };
            match welch_t(&h, &l) {
                Ok(t) => {
                    row.t_stat = Some(t.t_stat);
                    row.df = Some(t.df);
                    row.p_value = Some(t.p_value);
                    row.cohens_d = Some(t.cohens_d);
                }
                Err(Error::Argument(_)) => {
                    note = Some(format!(
                        "{} pair(s) selected; at least 2 are needed for the t-tests",
                        selected.len()
                    ));
                }
                Err(Error::Degenerate(_)) => {}
                Err(e) => return Err(e),
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HighLowTable {
        scope,
        pairs: selected.len(),
        rows,
        note,
    })
}

fn regression_block(
    pairs: &[SynonymPair],
    features: &dyn FeatureLookup,
    mode: DesignMode,
    config: &ReplicationConfig,
) -> RegressionBlock {
    let mut block = RegressionBlock {
        mode,
        columns: Vec::new(),
        feature_coefficients: Vec::new(),
        fit: None,
        accuracy: None,
        cross_validation: None,
        scatter: Vec::new(),
        h3: None,
        error: None,
    };
    let design_config = DesignConfig {
        mode,
        ..config.design.clone()
    };
    let run = |block: &mut RegressionBlock| -> Result<()> {
        let design = build_design(pairs, features, &design_config)?;
        block.columns = design.columns.iter().map(|c| c.name.clone()).collect();
        let model = train(&design)?;
        block.feature_coefficients = model.feature_coefficients().to_vec();
        let accuracy = casewise_accuracy(&model, pairs, features)?;
        // Forward rows only: mirrored designs interleave each pair's negation.
        let step = if mode == DesignMode::Plain { 1 } else { 2 };
        block.scatter = design
            .rows
            .iter()
            .zip(&model.fit.fitted)
            .step_by(step)
            .map(|(row, &predicted)| ScatterPoint {
                pair_id: row.pair_id.clone(),
                predicted,
                observed: row.y,
            })
            .collect();
        block.h3 = Some(h3_verdict(
            model.fit.r_squared,
            model.fit.f_p_value,
            accuracy.fraction,
        ));
        block.accuracy = Some(accuracy);
        block.fit = Some(model.fit);
        if let Some(k) = config.holdout {
            block.cross_validation = Some(cross_validate(pairs, features, &design_config, k)?);
        }
        Ok(())
    };
    if let Err(e) = run(&mut block) {
        block.error = Some(e.to_string());
    }
    block
}

fn feature_agreement(dataset: &ReplicationDataset) -> Vec<AgreementRow> {
    Feature::ALL
        .into_iter()
        .map(|f| {
            let (mut a, mut b) = (Vec::new(), Vec::new());
            for w in &dataset.words {
                if let (Some(x), Some(y)) = (&w.dataset_features, &w.local_features) {
                    a.push(x.get(f));
                    b.push(y.get(f));
                }
            }
            let diffs = a.iter().zip(&b).map(|(x, y)| (x - y).abs());
            AgreementRow {
                feature: f,
                n: a.len(),
                exact: diffs.clone().filter(|d| *d <= 1e-9).count(),
                max_abs_diff: diffs.fold(0.0, f64::max),
                r: pearson(&a, &b).ok().map(|c| c.r),
            }
        })
        .collect()
}

fn discrepancies(report: &ReplicationReport) -> Result<Vec<Discrepancy>> {
    let mut out = Vec::new();
    let s = &report.summary;
    out.push(Discrepancy {
        topic: "selection rate SD".into(),
        published: format!("{:.3}", published::SD_RATE),
        recomputed: format!("{:.4}", s.sd_rate),
        note: "recomputed from the rows; the published SD is implausibly small for rates \
               that average 0.22 across synsets of different sizes"
            .into(),
    });
    out.push(Discrepancy {
        topic: "mean selection rate".into(),
        published: format!("{:.2}", published::MEAN_RATE),
        recomputed: format!("{:.4}", s.mean_rate),
        note: if (s.mean_rate - published::MEAN_RATE).abs() <= 0.005 {
            "agrees within 0.005".into()
        } else {
            "differs by more than 0.005".into()
        },
    });

    // r = 0.018 is reported with p < 0.001; at the dataset's n that cannot hold.
    let r = published::CORRELATIONS[Feature::Frequency.index()];
    let n = s.word_count.max(3) as f64;
    let t = r * ((n - 2.0) / (1.0 - r * r)).sqrt();
    out.push(Discrepancy {
        topic: "frequency correlation significance".into(),
        published: format!("r = {r}, p < 0.001"),
        recomputed: format!("p = {:.3} for r = {r} at n = {}", t_two_sided_p(t, n - 2.0)?, s.word_count),
        note: "the published p-value is inconsistent with the published r".into(),
    });

    let (d1, d2) = published::F_DF;
    let implied_r2 = published::F_STAT * d1 / (published::F_STAT * d1 + d2);
    let implied_f = published::R_SQUARED / d1 / ((1.0 - published::R_SQUARED) / d2);
    out.push(Discrepancy {
        topic: "regression F versus R²".into(),
        published: format!("F[{d1}, {d2}] = {}, R² = {}", published::F_STAT, published::R_SQUARED),
        recomputed: format!("F implies R² = {implied_r2:.3}; R² implies F = {implied_f:.1}"),
        note: "the published F and R² cannot both hold at the published degrees of freedom".into(),
    });
    if let Some(battery) = report.batteries.first() {
        let dfs: Vec<String> = battery
            .regressions
            .iter()
            .filter_map(|b| b.fit.as_ref().map(|f| format!("{}: F[{}, {}]", b.mode, f.f_df.0, f.f_df.1)))
            .collect();
        out.push(Discrepancy {
            topic: "regression degrees of freedom".into(),
            published: format!("F[{d1}, {d2}] for a multivariate model on {} pairs", published::PAIRS),
            recomputed: dfs.join("; "),
            note: "one numerator df matches a single composite predictor on mirrored rows".into(),
        });
        let d_rows: Vec<String> = battery
            .high_low
            .rows
            .iter()
            .filter_map(|r| match (r.published_d, r.cohens_d) {
                (Some(p), Some(c)) => Some(format!("{} {p} vs {c:.3}", r.feature)),
                _ => None,
            })
            .collect();
        if !d_rows.is_empty() {
            out.push(Discrepancy {
                topic: "Cohen's d".into(),
                published: "see per-feature values".into(),
                recomputed: d_rows.join("; "),
                note: "published effect sizes are inconsistent with the published t values \
                       under any standard formula; not compared"
                    .into(),
            });
        }
    }
    if !report.significance.binomial.is_empty() {
        let which: Vec<String> = report
            .significance
            .binomial
            .iter()
            .filter(|b| b.matches_published)
            .map(|b| format!("n = {}", b.n))
            .collect();
        out.push(Discrepancy {
            topic: "binomial test denominator".into(),
            published: format!("p = {} (16 of 100)", published::BINOMIAL_P),
            recomputed: report
                .significance
                .binomial
                .iter()
                .map(|b| format!("n = {}: p = {:.3e}", b.n, b.p_value))
                .collect::<Vec<_>>()
                .join("; "),
            note: if which.is_empty() {
                "neither denominator reproduces the published p-value".into()
            } else {
                format!("published p-value reproduced at {}", which.join(", "))
            },
        });
    }
    Ok(out)
}

/// Optional f64 with the non-finite string encoding.
mod opt_f64 {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Wrapped(#[serde(with = "crate::serde_ext")] f64);

    pub fn serialize<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        v.map(Wrapped).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        Ok(Option::<Wrapped>::deserialize(d)?.map(|w| w.0))
    }
}
