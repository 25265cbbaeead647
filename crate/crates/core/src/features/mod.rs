//! The ten per-word READ measures and their pairwise differences.
//!
//! | group              | measures                                          |
//! |--------------------|---------------------------------------------------|
//! | representativeness | definitions, synonyms, hypernyms, hyponyms        |
//! | ease of use        | word length, syllables                            |
//! | affect             | max positivity, max negativity, emotionality      |
//! | distribution       | Zipf frequency                                    |
//!
//! Emotionality is `pos_max + neg_max`. Unknown words never fail: their
//! lexical measures are zero and [`Coverage`] records what was missing.

mod syllables;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::lexicon::{normalize_lemma, FrequencyTable, Lexicon, SentimentLexicon, SynsetId};
use crate::{Error, Result};

pub use syllables::count_syllables;

/// One of the ten measures, in canonical column order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Feature {
    Definitions,
    Synonyms,
    Hypernyms,
    Hyponyms,
    WordLength,
    Syllables,
    PosMax,
    NegMax,
    Emotionality,
    Frequency,
}

/// READ factor a measure belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Factor {
    Representativeness,
    EaseOfUse,
    Affect,
    Distribution,
}

impl Factor {
    pub const ALL: [Factor; 4] = [
        Factor::Representativeness,
        Factor::EaseOfUse,
        Factor::Affect,
        Factor::Distribution,
    ];

    pub fn features(self) -> &'static [Feature] {
        use Feature::*;
        match self {
            Factor::Representativeness => &[Definitions, Synonyms, Hypernyms, Hyponyms],
            Factor::EaseOfUse => &[WordLength, Syllables],
            Factor::Affect => &[PosMax, NegMax, Emotionality],
            Factor::Distribution => &[Frequency],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Factor::Representativeness => "representativeness",
            Factor::EaseOfUse => "ease_of_use",
            Factor::Affect => "affect",
            Factor::Distribution => "distribution",
        }
    }
}

impl Feature {
    pub const COUNT: usize = 10;

    pub const ALL: [Feature; Feature::COUNT] = [
        Feature::Definitions,
        Feature::Synonyms,
        Feature::Hypernyms,
        Feature::Hyponyms,
        Feature::WordLength,
        Feature::Syllables,
        Feature::PosMax,
        Feature::NegMax,
        Feature::Emotionality,
        Feature::Frequency,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Feature::Definitions => "definitions",
            Feature::Synonyms => "synonyms",
            Feature::Hypernyms => "hypernyms",
            Feature::Hyponyms => "hyponyms",
            Feature::WordLength => "word_length",
            Feature::Syllables => "syllables",
            Feature::PosMax => "pos_max",
            Feature::NegMax => "neg_max",
            Feature::Emotionality => "emotionality",
            Feature::Frequency => "frequency",
        }
    }

    pub fn factor(self) -> Factor {
        match self {
            Feature::Definitions | Feature::Synonyms | Feature::Hypernyms | Feature::Hyponyms => {
                Factor::Representativeness
            }
            Feature::WordLength | Feature::Syllables => Factor::EaseOfUse,
            Feature::PosMax | Feature::NegMax | Feature::Emotionality => Factor::Affect,
            Feature::Frequency => Factor::Distribution,
        }
    }

    /// Hypothesized direction of the association with selection rate:
    /// +1 for more-is-better, -1 for the two ease-of-use costs.
    pub fn expected_sign(self) -> f64 {
        match self.factor() {
            Factor::EaseOfUse => -1.0,
            _ => 1.0,
        }
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Feature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Feature::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Argument(format!("unknown feature {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ReadFeatures {
    pub definitions: u32,
    pub synonyms: u32,
    pub hypernyms: u32,
    pub hyponyms: u32,
    pub word_length: u32,
    pub syllables: u32,
    pub pos_max: f64,
    pub neg_max: f64,
    pub emotionality: f64,
    pub frequency: f64,
}

impl ReadFeatures {
    pub fn get(&self, feature: Feature) -> f64 {
        match feature {
            Feature::Definitions => self.definitions as f64,
            Feature::Synonyms => self.synonyms as f64,
            Feature::Hypernyms => self.hypernyms as f64,
            Feature::Hyponyms => self.hyponyms as f64,
            Feature::WordLength => self.word_length as f64,
            Feature::Syllables => self.syllables as f64,
            Feature::PosMax => self.pos_max,
            Feature::NegMax => self.neg_max,
            Feature::Emotionality => self.emotionality,
            Feature::Frequency => self.frequency,
        }
    }

    pub fn values(&self) -> [f64; Feature::COUNT] {
        Feature::ALL.map(|f| self.get(f))
    }

    /// Builds features from ten values in canonical order. Count fields must
    /// be non-negative integers.
    pub fn from_values(values: [f64; Feature::COUNT]) -> Result<Self> {
        let count = |f: Feature| {
            let v = values[f.index()];
            if v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64 {
                Ok(v as u32)
            } else {
                Err(Error::Validation(format!("{f} must be a non-negative integer, got {v}")))
            }
        };
        for f in Feature::ALL {
            if !values[f.index()].is_finite() {
                return Err(Error::Validation(format!("{f} is not finite")));
            }
        }
        Ok(ReadFeatures {
            definitions: count(Feature::Definitions)?,
            synonyms: count(Feature::Synonyms)?,
            hypernyms: count(Feature::Hypernyms)?,
            hyponyms: count(Feature::Hyponyms)?,
            word_length: count(Feature::WordLength)?,
            syllables: count(Feature::Syllables)?,
            pos_max: values[Feature::PosMax.index()],
            neg_max: values[Feature::NegMax.index()],
            emotionality: values[Feature::Emotionality.index()],
            frequency: values[Feature::Frequency.index()],
        })
    }
}

/// Field-wise difference of two feature vectors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureDelta(pub [f64; Feature::COUNT]);

impl FeatureDelta {
    pub fn zero() -> Self {
        FeatureDelta([0.0; Feature::COUNT])
    }

    pub fn negated(&self) -> Self {
        FeatureDelta(self.0.map(|v| -v))
    }
}

impl Index<Feature> for FeatureDelta {
    type Output = f64;

    fn index(&self, f: Feature) -> &f64 {
        &self.0[f.index()]
    }
}

pub fn feature_delta(a: &ReadFeatures, b: &ReadFeatures) -> FeatureDelta {
    let (a, b) = (a.values(), b.values());
    FeatureDelta(std::array::from_fn(|i| a[i] - b[i]))
}

/// How polarity scores of the senses of a word are combined.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SentimentAggregation {
    #[default]
    Max,
    /// Mean over all senses, unscored senses counting as zero.
    Mean,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HierarchyDepth {
    /// Synsets one hypernym/hyponym link away.
    #[default]
    OneLevel,
    /// Every synset reachable through repeated links.
    Transitive,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureConfig {
    pub sentiment: SentimentAggregation,
    pub hierarchy: HierarchyDepth,
}

/// What a lookup could not find.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coverage {
    /// Word absent from the lexicon; representativeness counts are zero.
    pub lexicon_oov: bool,
    /// Word absent from the frequency table; frequency is 0.0.
    pub frequency_oov: bool,
    /// None of the word's senses has a sentiment score.
    pub no_sentiment: bool,
}

impl Coverage {
    pub fn any(&self) -> bool {
        self.lexicon_oov || self.frequency_oov || self.no_sentiment
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeatureReport {
    pub word: String,
    pub features: ReadFeatures,
    pub coverage: Coverage,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Representativeness {
    pub definitions: u32,
    pub synonyms: u32,
    pub hypernyms: u32,
    pub hyponyms: u32,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Affect {
    pub pos_max: f64,
    pub neg_max: f64,
    pub emotionality: f64,
    pub scored: bool,
}

/// Computes [`ReadFeatures`] from borrowed resources. Cheap to copy and safe
/// to share across threads.
#[derive(Clone, Copy, Debug)]
pub struct FeatureExtractor<'a> {
    pub lexicon: &'a Lexicon,
    pub sentiment: &'a SentimentLexicon,
    pub frequency: &'a FrequencyTable,
    pub config: FeatureConfig,
}

impl<'a> FeatureExtractor<'a> {
    pub fn new(
        lexicon: &'a Lexicon,
        sentiment: &'a SentimentLexicon,
        frequency: &'a FrequencyTable,
    ) -> Self {
        FeatureExtractor {
            lexicon,
            sentiment,
            frequency,
            config: FeatureConfig::default(),
        }
    }

    pub fn from_resources(resources: &'a crate::lexicon::Resources) -> Self {
        Self::new(&resources.lexicon, &resources.sentiment, &resources.frequency)
    }

    pub fn with_config(mut self, config: FeatureConfig) -> Self {
        self.config = config;
        self
    }

    pub fn representativeness(&self, word: &str) -> Representativeness {
        let ids = self.lexicon.synset_ids(word);
        let mut co_lemmas: HashSet<&str> = HashSet::new();
        for id in ids {
            if let Some(s) = self.lexicon.synset(*id) {
                co_lemmas.extend(s.lemmas.iter().map(String::as_str).filter(|l| *l != word));
            }
        }
        let hypernyms = self.related(ids, |id| self.lexicon.hypernyms(id));
        let hyponyms = self.related(ids, |id| self.lexicon.hyponyms(id));
        Representativeness {
            definitions: ids.len() as u32,
            synonyms: co_lemmas.len() as u32,
            hypernyms,
            hyponyms,
        }
    }

    fn related<'l>(&self, start: &[SynsetId], links: impl Fn(SynsetId) -> &'l [SynsetId]) -> u32
    where
        'a: 'l,
    {
        let mut seen: BTreeSet<SynsetId> = BTreeSet::new();
        let mut frontier: Vec<SynsetId> = start.iter().flat_map(|id| links(*id)).copied().collect();
        while let Some(id) = frontier.pop() {
            if seen.insert(id) && self.config.hierarchy == HierarchyDepth::Transitive {
                frontier.extend(links(id).iter().copied());
            }
        }
        seen.len() as u32
    }

    pub fn affect(&self, word: &str) -> Affect {
        let ids = self.lexicon.synset_ids(word);
        let scores: Vec<_> = ids.iter().map(|id| self.sentiment.score(*id)).collect();
        let scored = scores.iter().any(Option::is_some);
        let (pos, neg) = match self.config.sentiment {
            SentimentAggregation::Max => scores.iter().flatten().fold((0.0f64, 0.0f64), |acc, s| {
                (acc.0.max(s.positivity), acc.1.max(s.negativity))
            }),
            SentimentAggregation::Mean if !ids.is_empty() => {
                let n = ids.len() as f64;
                let (p, q) = scores
                    .iter()
                    .flatten()
                    .fold((0.0, 0.0), |acc, s| (acc.0 + s.positivity, acc.1 + s.negativity));
                (p / n, q / n)
            }
            SentimentAggregation::Mean => (0.0, 0.0),
        };
        Affect {
            pos_max: pos,
            neg_max: neg,
            emotionality: pos + neg,
            scored,
        }
    }

    /// Zipf frequency, 0.0 when out of vocabulary.
    pub fn distribution(&self, word: &str) -> (f64, bool) {
        match self.frequency.zipf(word) {
            Some(z) => (z, true),
            None => (0.0, false),
        }
    }

    /// Normalizes `word` and computes all ten measures.
    pub fn extract(&self, word: &str) -> Result<FeatureReport> {
        let word = normalize_lemma(word);
        if word.is_empty() {
            return Err(Error::Argument("empty word".into()));
        }
        let syllables = syllables_of(&word)?;
        let rep = self.representativeness(&word);
        let affect = self.affect(&word);
        let (frequency, freq_found) = self.distribution(&word);
        Ok(FeatureReport {
            features: ReadFeatures {
                definitions: rep.definitions,
                synonyms: rep.synonyms,
                hypernyms: rep.hypernyms,
                hyponyms: rep.hyponyms,
                word_length: word.chars().count() as u32,
                syllables,
                pos_max: affect.pos_max,
                neg_max: affect.neg_max,
                emotionality: affect.emotionality,
                frequency,
            },
            coverage: Coverage {
                lexicon_oov: rep.definitions == 0,
                frequency_oov: !freq_found,
                no_sentiment: !affect.scored,
            },
            word,
        })
    }

    pub fn read_features(&self, word: &str) -> Result<ReadFeatures> {
        self.extract(word).map(|r| r.features)
    }
}

/// Syllables of a normalized word: the sum over its letter runs, so
/// multiword lemmas ("give_up") and hyphenated forms are covered.
fn syllables_of(word: &str) -> Result<u32> {
    let mut total = 0;
    for run in word.split(|c: char| !c.is_ascii_alphabetic()).filter(|r| !r.is_empty()) {
        total += count_syllables(run)?;
    }
    if total == 0 {
        return Err(Error::Argument(format!("{word:?} contains no letters")));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::{Pos, SentimentScore, Synset};
    use proptest::prelude::*;

    fn id(o: u32) -> SynsetId {
        SynsetId::new(Pos::Noun, o)
    }

    fn synset(offset: u32, lemmas: &[&str], hyper: &[u32], hypo: &[u32]) -> Synset {
        Synset {
            id: id(offset),
            lemmas: lemmas.iter().map(|s| s.to_string()).collect(),
            gloss: String::new(),
            hypernym_ids: hyper.iter().copied().map(id).collect(),
            hyponym_ids: hypo.iter().copied().map(id).collect(),
        }
    }

    /// W appears in synsets 1 and 2, both containing X. Synset 1 has
    /// hypernym 10, synset 2 has hypernyms 10 and 11, and 11 has hypernym 12.
    fn fixture() -> (Lexicon, SentimentLexicon, FrequencyTable) {
        let lexicon = Lexicon::from_synsets([
            synset(1, &["w", "x"], &[10], &[20]),
            synset(2, &["w", "x", "y_z"], &[10, 11], &[]),
            synset(3, &["x"], &[], &[]),
            synset(10, &["top"], &[], &[1, 2]),
            synset(11, &["mid"], &[12], &[2]),
            synset(12, &["root"], &[], &[11]),
            synset(20, &["leaf"], &[1], &[]),
        ])
        .unwrap();
        let sentiment = SentimentLexicon::from_scores([
            (id(1), SentimentScore { positivity: 0.5, negativity: 0.0 }),
            (id(2), SentimentScore { positivity: 0.25, negativity: 0.125 }),
        ])
        .unwrap();
        let frequency = FrequencyTable::from_entries([("w", 4.5), ("the", 7.73)]).unwrap();
        (lexicon, sentiment, frequency)
    }

    #[test]
    fn representativeness_counts_on_fixture() {
        let (lex, senti, freq) = fixture();
        let fx = FeatureExtractor::new(&lex, &senti, &freq);
        let r = fx.representativeness("w");
        assert_eq!(r.definitions, 2);
        // x and y_z, x counted once.
        assert_eq!(r.synonyms, 2);
        assert_eq!(r.hypernyms, 2);
        assert_eq!(r.hyponyms, 1);
        assert_eq!(fx.representativeness("zzqx"), Representativeness::default());

        let deep = fx.with_config(FeatureConfig {
            hierarchy: HierarchyDepth::Transitive,
            ..Default::default()
        });
        assert_eq!(deep.representativeness("w").hypernyms, 3);
    }

    #[test]
    fn affect_takes_max_per_polarity() {
        let (lex, senti, freq) = fixture();
        let fx = FeatureExtractor::new(&lex, &senti, &freq);
        let a = fx.affect("w");
        assert_eq!((a.pos_max, a.neg_max, a.emotionality), (0.5, 0.125, 0.625));
        let none = fx.affect("top");
        assert_eq!((none.pos_max, none.neg_max, none.emotionality), (0.0, 0.0, 0.0));
        assert!(!none.scored);

        let mean = fx.with_config(FeatureConfig {
            sentiment: SentimentAggregation::Mean,
            ..Default::default()
        });
        let m = mean.affect("w");
        assert_eq!((m.pos_max, m.neg_max), (0.375, 0.0625));
    }

    #[test]
    fn distribution_lookup_and_fallback() {
        let (lex, senti, freq) = fixture();
        let fx = FeatureExtractor::new(&lex, &senti, &freq);
        assert_eq!(fx.distribution("the"), (7.73, true));
        assert_eq!(fx.distribution("The"), fx.distribution("the"));
        assert_eq!(fx.distribution("qqq"), (0.0, false));
    }

    #[test]
    fn full_tuple_for_fixture_word() {
        let (lex, senti, freq) = fixture();
        let fx = FeatureExtractor::new(&lex, &senti, &freq);
        let report = fx.extract("W").unwrap();
        assert_eq!(report.word, "w");
        assert_eq!(
            report.features,
            ReadFeatures {
                definitions: 2,
                synonyms: 2,
                hypernyms: 2,
                hyponyms: 1,
                word_length: 1,
                syllables: 1,
                pos_max: 0.5,
                neg_max: 0.125,
                emotionality: 0.625,
                frequency: 4.5,
            }
        );
        assert!(!report.coverage.any());
        assert_eq!(fx.extract("W").unwrap(), report);
    }

    #[test]
    fn unknown_word_keeps_only_surface_measures() {
        let (lex, senti, freq) = fixture();
        let fx = FeatureExtractor::new(&lex, &senti, &freq);
        let r = fx.extract("zzqx").unwrap();
        let expected = ReadFeatures {
            word_length: 4,
            syllables: 1,
            ..Default::default()
        };
        assert_eq!(r.features, expected);
        assert!(r.coverage.lexicon_oov && r.coverage.frequency_oov && r.coverage.no_sentiment);
        assert!(fx.extract("  ").is_err());
        assert!(fx.extract("123").is_err());
    }

    #[test]
    fn multiword_lemmas_count_underscores_in_length() {
        let (lex, senti, freq) = fixture();
        let fx = FeatureExtractor::new(&lex, &senti, &freq);
        let r = fx.extract("y z").unwrap();
        assert_eq!(r.word, "y_z");
        assert_eq!(r.features.word_length, 3);
        assert_eq!(r.features.definitions, 1);
    }

    #[test]
    fn adding_a_synset_never_lowers_counts() {
        let (lex, senti, freq) = fixture();
        let before = FeatureExtractor::new(&lex, &senti, &freq).representativeness("w");
        let mut synsets: Vec<Synset> = lex.synsets().cloned().collect();
        synsets.push(synset(4, &["w", "q"], &[12], &[]));
        synsets.iter_mut().find(|s| s.id == id(12)).unwrap().hyponym_ids.push(id(4));
        let bigger = Lexicon::from_synsets(synsets).unwrap();
        let after = FeatureExtractor::new(&bigger, &senti, &freq).representativeness("w");
        assert!(after.definitions >= before.definitions);
        assert!(after.synonyms >= before.synonyms);
        assert!(after.hypernyms >= before.hypernyms);
        assert!(after.hyponyms >= before.hyponyms);
    }

    #[test]
    fn hand_computed_delta() {
        let a = ReadFeatures {
            definitions: 5,
            synonyms: 3,
            hypernyms: 2,
            hyponyms: 10,
            word_length: 4,
            syllables: 1,
            pos_max: 0.25,
            neg_max: 0.0,
            emotionality: 0.25,
            frequency: 5.5,
        };
        let b = ReadFeatures {
            definitions: 2,
            synonyms: 4,
            hypernyms: 2,
            hyponyms: 0,
            word_length: 6,
            syllables: 2,
            pos_max: 0.0,
            neg_max: 0.5,
            emotionality: 0.5,
            frequency: 4.25,
        };
        assert_eq!(
            feature_delta(&a, &b).0,
            [3.0, -1.0, 0.0, 10.0, -2.0, -1.0, 0.25, -0.5, -0.25, 1.25]
        );
    }

    #[test]
    fn feature_names_round_trip() {
        for f in Feature::ALL {
            assert_eq!(f.name().parse::<Feature>().unwrap(), f);
        }
        assert!("colour".parse::<Feature>().is_err());
    }

    fn arb_features() -> impl Strategy<Value = ReadFeatures> {
        (
            (0u32..50, 0u32..50, 0u32..50, 0u32..200, 1u32..20, 1u32..8),
            (0.0f64..=1.0, 0.0f64..=1.0, 0.0f64..=9.0),
        )
            .prop_map(|((d, s, h, o, l, y), (p, n, z))| ReadFeatures {
                definitions: d,
                synonyms: s,
                hypernyms: h,
                hyponyms: o,
                word_length: l,
                syllables: y,
                pos_max: p,
                neg_max: n,
                emotionality: p + n,
                frequency: z,
            })
    }

    proptest! {
        #[test]
        fn delta_is_antisymmetric(a in arb_features(), b in arb_features()) {
            prop_assert_eq!(feature_delta(&a, &b), feature_delta(&b, &a).negated());
            prop_assert_eq!(feature_delta(&a, &a), FeatureDelta::zero());
        }

        #[test]
        fn values_round_trip(a in arb_features()) {
            prop_assert_eq!(ReadFeatures::from_values(a.values()).unwrap(), a);
        }
    }
}
