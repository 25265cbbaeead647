use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::features::{Feature, FeatureExtractor, ReadFeatures};
use crate::model::SynonymPair;
use crate::{Error, Result};

/// Maps dataset columns onto record fields. Shipped as TOML so upstream
/// column renames only need a config change.
///
/// ```toml
/// delimiter = ","
///
/// [columns]
/// word = "word"
/// pair_id = "pair_id"
/// selection_rate = "selection_rate"
/// n_responses = "responses"      # optional
///
/// [features]                     # optional; all ten or none
/// definitions = "definitions"
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColumnMap {
    #[serde(default = "default_delimiter")]
    pub delimiter: char,
    /// Multiplier applied to the rate column (0.01 for percentages).
    #[serde(default = "default_rate_scale")]
    pub rate_scale: f64,
    /// Responses per word when the dataset has no response-count column.
    #[serde(default)]
    pub default_n_responses: Option<u32>,
    pub columns: CoreColumns,
    /// Feature name → column. Emotionality may be omitted and is then
    /// derived as `pos_max + neg_max`.
    #[serde(default)]
    pub features: BTreeMap<Feature, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoreColumns {
    pub word: String,
    pub pair_id: String,
    pub selection_rate: String,
    #[serde(default)]
    pub n_responses: Option<String>,
}

fn default_delimiter() -> char {
    ','
}

fn default_rate_scale() -> f64 {
    1.0
}

impl Default for ColumnMap {
    fn default() -> Self {
        ColumnMap {
            delimiter: ',',
            rate_scale: 1.0,
            default_n_responses: None,
            columns: CoreColumns {
                word: "word".into(),
                pair_id: "pair_id".into(),
                selection_rate: "selection_rate".into(),
                n_responses: Some("n_responses".into()),
            },
            features: Feature::ALL
                .into_iter()
                .map(|f| (f, f.name().to_string()))
                .collect(),
        }
    }
}

impl ColumnMap {
    pub fn from_toml(text: &str) -> Result<Self> {
        let map: ColumnMap = toml::from_str(text)?;
        if !map.delimiter.is_ascii() {
            return Err(Error::Argument(format!("delimiter {:?} is not ASCII", map.delimiter)));
        }
        if !(map.rate_scale.is_finite() && map.rate_scale > 0.0) {
            return Err(Error::Argument(format!("rate_scale {} must be positive", map.rate_scale)));
        }
        Ok(map)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        ColumnMap::from_toml(&text)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureSource {
    /// Feature columns supplied with the dataset.
    Dataset,
    /// Recomputed from local lexical resources.
    Local,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WordRecord {
    pub word: String,
    pub pair_id: String,
    pub selection_rate: f64,
    pub n_responses: Option<u32>,
    pub dataset_features: Option<ReadFeatures>,
    pub local_features: Option<ReadFeatures>,
}

impl WordRecord {
    pub fn features(&self, source: FeatureSource) -> Option<&ReadFeatures> {
        match source {
            FeatureSource::Dataset => self.dataset_features.as_ref(),
            FeatureSource::Local => self.local_features.as_ref(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetSummary {
    pub word_count: usize,
    pub pair_count: usize,
    /// Set when every word has the same response count.
    pub responses_per_word: Option<u32>,
    pub mean_rate: f64,
    /// Sample standard deviation (n − 1).
    pub sd_rate: f64,
}

impl DatasetSummary {
    fn of(words: &[WordRecord]) -> Self {
        let n = words.len() as f64;
        let mean = words.iter().map(|w| w.selection_rate).sum::<f64>() / n;
        let ss: f64 = words.iter().map(|w| (w.selection_rate - mean).powi(2)).sum();
        let first = words.first().and_then(|w| w.n_responses);
        let uniform = words.iter().all(|w| w.n_responses == first);
        DatasetSummary {
            word_count: words.len(),
            pair_count: words.len() / 2,
            responses_per_word: if uniform { first } else { None },
            mean_rate: mean,
            sd_rate: if words.len() > 1 { (ss / (n - 1.0)).sqrt() } else { 0.0 },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReplicationDataset {
    /// File name or other label of the input.
    pub source: String,
    /// Rows in input order; the two words of a pair keep their relative order.
    pub words: Vec<WordRecord>,
    pub summary: DatasetSummary,
}

impl ReplicationDataset {
    /// Validates records and recomputes the summary from them.
    pub fn new(source: impl Into<String>, words: Vec<WordRecord>) -> Result<Self> {
        let mut problems = Vec::new();
        for (i, w) in words.iter().enumerate() {
            let at = format!("record {} ({:?})", i + 1, w.word);
            if w.word.trim().is_empty() {
                problems.push(format!("{at}: empty word"));
            }
            if w.pair_id.trim().is_empty() {
                problems.push(format!("{at}: empty pair id"));
            }
            if !(0.0..=1.0).contains(&w.selection_rate) {
                problems.push(format!("{at}: selection rate {} not in [0, 1]", w.selection_rate));
            }
            if w.n_responses == Some(0) {
                problems.push(format!("{at}: zero responses"));
            }
        }
        for (pair_id, members) in group_pairs(&words) {
            let rows: Vec<String> = members.iter().map(|i| (i + 1).to_string()).collect();
            if members.len() != 2 {
                problems.push(format!(
                    "pair {pair_id:?} has {} words (records {})",
                    members.len(),
                    rows.join(", ")
                ));
            } else if words[members[0]].word == words[members[1]].word {
                problems.push(format!(
                    "pair {pair_id:?} repeats {:?} (records {})",
                    words[members[0]].word,
                    rows.join(", ")
                ));
            }
        }
        if words.is_empty() {
            problems.push("dataset has no records".into());
        }
        if !problems.is_empty() {
            return Err(Error::Validation(format!(
                "{} problem(s):\n  {}",
                problems.len(),
                problems.join("\n  ")
            )));
        }
        let summary = DatasetSummary::of(&words);
        Ok(ReplicationDataset {
            source: source.into(),
            words,
            summary,
        })
    }

    /// Pairs in order of first appearance; `word_a` is the earlier row.
    pub fn pairs(&self) -> Vec<SynonymPair> {
        group_pairs(&self.words)
            .into_iter()
            .map(|(pair_id, m)| {
                let (a, b) = (&self.words[m[0]], &self.words[m[1]]);
                SynonymPair {
                    pair_id,
                    word_a: a.word.clone(),
                    word_b: b.word.clone(),
                    rate_a: a.selection_rate,
                    rate_b: b.selection_rate,
                    n_responses: match (a.n_responses, b.n_responses) {
                        (Some(x), Some(y)) => Some(x.min(y)),
                        _ => None,
                    },
                }
            })
            .collect()
    }

    pub fn has_features(&self, source: FeatureSource) -> bool {
        !self.words.is_empty() && self.words.iter().all(|w| w.features(source).is_some())
    }

    /// Sources with complete features, dataset first.
    pub fn feature_sources(&self) -> Vec<FeatureSource> {
        [FeatureSource::Dataset, FeatureSource::Local]
            .into_iter()
            .filter(|s| self.has_features(*s))
            .collect()
    }

    /// Word → features for one source.
    pub fn feature_map(&self, source: FeatureSource) -> BTreeMap<String, ReadFeatures> {
        self.words
            .iter()
            .filter_map(|w| w.features(source).map(|f| (w.word.clone(), *f)))
            .collect()
    }

    /// Fills `local_features` for every record from local resources.
    pub fn with_local_features(mut self, extractor: &FeatureExtractor<'_>) -> Result<Self> {
        for w in &mut self.words {
            w.local_features = Some(extractor.read_features(&w.word)?);
        }
        Ok(self)
    }
}

/// pair id → record indices, in order of first appearance.
fn group_pairs(words: &[WordRecord]) -> Vec<(String, Vec<usize>)> {
    let mut order: Vec<(String, Vec<usize>)> = Vec::new();
    let mut index: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, w) in words.iter().enumerate() {
        match index.get(w.pair_id.as_str()) {
            Some(&k) => order[k].1.push(i),
            None => {
                index.insert(&w.pair_id, order.len());
                order.push((w.pair_id.clone(), vec![i]));
            }
        }
    }
    order
}

pub fn load_dataset(path: impl AsRef<Path>, map: &ColumnMap) -> Result<ReplicationDataset> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let source = path
        .file_name()
        .map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    parse_dataset(&text, map, &source)
}

/// Parses a delimited table according to `map`.
pub fn parse_dataset(text: &str, map: &ColumnMap, source: &str) -> Result<ReplicationDataset> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(map.delimiter as u8)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    let column = |name: &str| headers.iter().position(|h| h == name);
    let required = |name: &str| {
        column(name).ok_or_else(|| Error::Validation(format!("{source}: missing column {name:?}")))
    };
    let c_word = required(&map.columns.word)?;
    let c_pair = required(&map.columns.pair_id)?;
    let c_rate = required(&map.columns.selection_rate)?;
    let c_n = match &map.columns.n_responses {
        Some(name) => column(name),
        None => None,
    };

    // Feature columns: all mapped columns must be present, or none.
    let mapped: Vec<(Feature, &String, Option<usize>)> =
        map.features.iter().map(|(f, c)| (*f, c, column(c))).collect();
    let present = mapped.iter().filter(|m| m.2.is_some()).count();
    let feature_columns: Option<BTreeMap<Feature, usize>> = if present == 0 {
        None
    } else {
        let missing: Vec<String> = Feature::ALL
            .into_iter()
            .filter(|f| *f != Feature::Emotionality)
            .filter(|f| !mapped.iter().any(|m| m.0 == *f && m.2.is_some()))
            .map(|f| format!("{f} ({})", map.features.get(&f).map_or("unmapped", String::as_str)))
            .collect();
        if !missing.is_empty() {
            return Err(Error::Validation(format!(
                "{source}: feature columns partially present; missing {}",
                missing.join(", ")
            )));
        }
        Some(mapped.iter().filter_map(|(f, _, c)| c.map(|c| (*f, c))).collect())
    };

    let mut words = Vec::new();
    let mut problems = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        let field = |i: usize| record.get(i).unwrap_or("");
        let number = |i: usize, what: &str| -> std::result::Result<f64, String> {
            let raw = field(i);
            raw.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("line {line}: {what} {raw:?} is not a number"))
        };
        let rate = match number(c_rate, "selection rate") {
            Ok(r) => r * map.rate_scale,
            Err(e) => {
                problems.push(e);
                continue;
            }
        };
        let n_responses = match c_n.map(field).filter(|s| !s.is_empty()) {
            Some(raw) => match raw.parse::<u32>() {
                Ok(n) => Some(n),
                Err(_) => {
                    problems.push(format!("line {line}: response count {raw:?} is not an integer"));
                    continue;
                }
            },
            None => map.default_n_responses,
        };
        let dataset_features = match &feature_columns {
            None => None,
            Some(cols) => {
                let mut values = [0.0; Feature::COUNT];
                let mut bad = None;
                for (f, &c) in cols {
                    match number(c, f.name()) {
                        Ok(v) => values[f.index()] = v,
                        Err(e) => bad = Some(e),
                    }
                }
                if !cols.contains_key(&Feature::Emotionality) {
                    values[Feature::Emotionality.index()] =
                        values[Feature::PosMax.index()] + values[Feature::NegMax.index()];
                }
                if let Some(e) = bad {
                    problems.push(e);
                    continue;
                }
                match ReadFeatures::from_values(values) {
                    Ok(f) => Some(f),
                    Err(e) => {
                        problems.push(format!("line {line}: {e}"));
                        continue;
                    }
                }
            }
        };
        words.push(WordRecord {
            word: crate::lexicon::normalize_lemma(field(c_word)),
            pair_id: field(c_pair).to_string(),
            selection_rate: rate,
            n_responses,
            dataset_features,
            local_features: None,
        });
    }
    if !problems.is_empty() {
        return Err(Error::Validation(format!(
            "{source}: {} problem(s):\n  {}",
            problems.len(),
            problems.join("\n  ")
        )));
    }
    ReplicationDataset::new(source, words)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn core_map() -> ColumnMap {
        ColumnMap {
            features: BTreeMap::new(),
            ..ColumnMap::default()
        }
    }

    #[test]
    fn two_pair_table() {
        let csv = "word,pair_id,selection_rate,n_responses\n\
                   help,p1,0.30,805\nassist,p1,0.10,805\nbig,p2,0.2,805\nlarge,p2,0.25,805\n";
        let d = parse_dataset(csv, &core_map(), "t").unwrap();
        assert_eq!(d.summary.word_count, 4);
        assert_eq!(d.summary.pair_count, 2);
        assert_eq!(d.summary.responses_per_word, Some(805));
        let pairs = d.pairs();
        assert_eq!(pairs[0].word_a, "help");
        assert_eq!(pairs[1].word_b, "large");
        assert!(d.feature_sources().is_empty());
    }

    #[test]
    fn three_words_in_one_pair() {
        let csv = "word,pair_id,selection_rate\na,p1,0.1\nb,p1,0.2\nc,p1,0.3\n";
        let err = parse_dataset(csv, &core_map(), "t").unwrap_err().to_string();
        assert!(err.contains("\"p1\" has 3 words (records 1, 2, 3)"), "{err}");
    }

    #[test]
    fn lists_every_bad_row() {
        let csv = "word,pair_id,selection_rate\na,p1,x\nb,p1,1.5\nc,p2,0.1\nd,p2,0.2\n";
        let err = parse_dataset(csv, &core_map(), "t").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
        // Row-level parse failures are reported before record validation.
        let csv = "word,pair_id,selection_rate\na,p1,1.5\nb,p1,-0.1\n";
        let err = parse_dataset(csv, &core_map(), "t").unwrap_err().to_string();
        assert!(err.contains("record 1") && err.contains("record 2"), "{err}");
    }

    #[test]
    fn partial_feature_columns_rejected() {
        let csv = "word,pair_id,selection_rate,definitions\na,p1,0.1,3\nb,p1,0.2,4\n";
        assert!(parse_dataset(csv, &ColumnMap::default(), "t").is_err());
    }

    #[test]
    fn emotionality_derived_when_unmapped() {
        let mut map = ColumnMap::default();
        map.features.remove(&Feature::Emotionality);
        let header = "word,pair_id,selection_rate,definitions,synonyms,hypernyms,hyponyms,\
                      word_length,syllables,pos_max,neg_max,frequency";
        let csv = format!("{header}\na,p1,0.1,1,2,3,4,1,1,0.25,0.5,3.1\nbb,p1,0.2,1,2,3,4,2,1,0,0,4\n");
        let d = parse_dataset(&csv, &map, "t").unwrap();
        assert_eq!(d.words[0].dataset_features.unwrap().emotionality, 0.75);
        assert!(d.has_features(FeatureSource::Dataset));
    }

    #[test]
    fn column_map_toml() {
        let map = ColumnMap::from_toml(
            "delimiter = \"\\t\"\nrate_scale = 0.01\n[columns]\nword = \"Word\"\npair_id = \"Set\"\nselection_rate = \"Rate\"\n",
        )
        .unwrap();
        assert_eq!(map.delimiter, '\t');
        assert!(map.features.is_empty());
        assert!(ColumnMap::from_toml("[columns]\nword = \"w\"\n").is_err());
    }
}
