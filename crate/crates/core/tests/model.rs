mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;

use common::Planted;
use read_core::model::{cross_validate, per_pair_significance, DesignMode, PairSide, TrainedModel};
use read_core::replication::FeatureSource;
use read_core::{
    build_design, casewise_accuracy, predict_pair, train, DesignConfig, Feature, ReadFeatures, SynonymPair,
};

fn planted() -> (Vec<SynonymPair>, BTreeMap<String, ReadFeatures>) {
    let data = Planted::default().dataset();
    (data.pairs(), data.feature_map(FeatureSource::Dataset))
}

fn fit(pairs: &[SynonymPair], features: &BTreeMap<String, ReadFeatures>, mode: DesignMode) -> TrainedModel {
    train(&build_design(pairs, features, &DesignConfig::with_mode(mode)).unwrap()).unwrap()
}

fn winners(model: &TrainedModel, pairs: &[SynonymPair], features: &BTreeMap<String, ReadFeatures>) -> Vec<PairSide> {
    pairs
        .iter()
        .map(|p| predict_pair(model, &features[&p.word_a], &features[&p.word_b]).unwrap().winner)
        .collect()
}

/// Multiplies each of several feature columns by its own constant.
fn rescaled(features: &BTreeMap<String, ReadFeatures>) -> BTreeMap<String, ReadFeatures> {
    features
        .iter()
        .map(|(w, f)| {
            let mut g = *f;
            g.hyponyms *= 1000;
            g.word_length *= 1000;
            g.frequency *= 0.001;
            g.pos_max *= 1000.0;
            g.emotionality *= 7.0;
            (w.clone(), g)
        })
        .collect()
}

#[test]
fn predictor_scaling_leaves_winners_and_fit_unchanged() {
    let (pairs, features) = planted();
    let scaled = rescaled(&features);
    for mode in [DesignMode::Plain, DesignMode::Mirrored, DesignMode::Composite] {
        let a = fit(&pairs, &features, mode);
        let b = fit(&pairs, &scaled, mode);
        assert!((a.fit.r_squared - b.fit.r_squared).abs() < 1e-9, "{mode}");
        assert_eq!(winners(&a, &pairs, &features), winners(&b, &pairs, &scaled), "{mode}");
        for (x, y) in a.fit.fitted.iter().zip(&b.fit.fitted) {
            assert!((x - y).abs() < 1e-9, "{mode}");
        }
    }
}

#[test]
fn pair_order_flip_leaves_accuracy_unchanged() {
    let (pairs, features) = planted();
    // Flip every third pair.
    let flipped: Vec<SynonymPair> = pairs
        .iter()
        .enumerate()
        .map(|(i, p)| if i % 3 == 0 { p.flipped() } else { p.clone() })
        .collect();
    for mode in [DesignMode::Mirrored, DesignMode::Composite] {
        let a = fit(&pairs, &features, mode);
        let b = fit(&flipped, &features, mode);
        let acc_a = casewise_accuracy(&a, &pairs, &features).unwrap();
        let acc_b = casewise_accuracy(&b, &flipped, &features).unwrap();
        assert_eq!(acc_a, acc_b, "{mode}");
        assert!((a.fit.r_squared - b.fit.r_squared).abs() < 1e-12, "{mode}");
    }
    // The plain design has an intercept, so only a flip of every pair is
    // a symmetry: the slopes stay and the intercept changes sign.
    let all: Vec<SynonymPair> = pairs.iter().map(SynonymPair::flipped).collect();
    let a = fit(&pairs, &features, DesignMode::Plain);
    let b = fit(&all, &features, DesignMode::Plain);
    assert_eq!(
        casewise_accuracy(&a, &pairs, &features).unwrap(),
        casewise_accuracy(&b, &all, &features).unwrap()
    );
    assert!((a.fit.intercept + b.fit.intercept).abs() < 1e-12);
}

#[test]
fn model_file_round_trip() {
    let (pairs, features) = planted();
    let model = fit(&pairs, &features, DesignMode::Composite);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.json");
    model.save(&path).unwrap();
    let back = TrainedModel::load(&path).unwrap();
    assert_eq!(back, model);
    let mut bad = model.clone();
    bad.schema_version = 99;
    assert!(TrainedModel::from_json(&bad.to_json().unwrap()).is_err());
    assert!(TrainedModel::from_json("{}").is_err());
}

#[test]
fn missing_word_is_named() {
    let (mut pairs, features) = planted();
    pairs[3].word_b = "nowhere".into();
    let err = build_design(&pairs, &features, &DesignConfig::default()).unwrap_err().to_string();
    assert!(err.contains("nowhere"), "{err}");
}

#[test]
fn cross_validation_assigns_every_pair_once() {
    let (pairs, features) = planted();
    let cv = cross_validate(&pairs, &features, &DesignConfig::with_mode(DesignMode::Mirrored), 5).unwrap();
    assert_eq!(cv.accuracy.total, pairs.len());
    assert!(cross_validate(&pairs, &features, &DesignConfig::default(), 1).is_err());
}

#[test]
fn significance_counts_both_rules() {
    // |t| just above and below 1.961 at n = 805 with rates near 0.22.
    let pairs = vec![
        SynonymPair::new("a", "x1", "y1", 0.25, 0.20, Some(805)).unwrap(),
        SynonymPair::new("b", "x2", "y2", 0.22, 0.22, Some(805)).unwrap(),
        SynonymPair::new("c", "x3", "y3", 0.10, 0.30, Some(805)).unwrap(),
    ];
    let table = per_pair_significance(&pairs).unwrap();
    assert_eq!(table.rows[1].t_stat, 0.0);
    assert_eq!(table.rows[1].p_value, 1.0);
    assert!(table.rows[2].significant_t && table.rows[2].significant_p);
    assert_eq!(table.count_t, table.rows.iter().filter(|r| r.t_stat.abs() >= 1.961).count());
    let no_n = SynonymPair::new("d", "x", "y", 0.2, 0.1, None).unwrap();
    assert!(per_pair_significance(&[no_n]).is_err());
}

fn arb_features() -> impl Strategy<Value = ReadFeatures> {
    (0u32..20, 0u32..30, 0u32..10, 0u32..50, 1u32..15, 1u32..6, 0u32..9, 0u32..9, 0.0f64..8.0).prop_map(
        |(d, s, he, ho, l, sy, p, n, f)| ReadFeatures {
            definitions: d,
            synonyms: s,
            hypernyms: he,
            hyponyms: ho,
            word_length: l,
            syllables: sy,
            pos_max: p as f64 / 8.0,
            neg_max: n as f64 / 8.0,
            emotionality: (p + n) as f64 / 8.0,
            frequency: f,
        },
    )
}

proptest! {
    #[test]
    fn prediction_is_antisymmetric(a in arb_features(), b in arb_features()) {
        let (pairs, features) = planted();
        for mode in DesignMode::ALL {
            let model = fit(&pairs, &features, mode);
            let ab = predict_pair(&model, &a, &b).unwrap();
            let ba = predict_pair(&model, &b, &a).unwrap();
            prop_assert_eq!(ab.margin, -ba.margin);
            let expected = match ab.winner {
                PairSide::A => PairSide::B,
                PairSide::B => PairSide::A,
                PairSide::Tie => PairSide::Tie,
            };
            prop_assert_eq!(ba.winner, expected);
            let sum: f64 = ab.contributions.iter().map(|c| c.contribution).sum();
            prop_assert!((sum - ab.margin).abs() < 1e-12);
            prop_assert_eq!(ab.contributions.len(), Feature::COUNT);
            let same = predict_pair(&model, &a, &a).unwrap();
            prop_assert_eq!(same.winner, PairSide::Tie);
            prop_assert_eq!(same.margin, 0.0);
        }
    }
}
