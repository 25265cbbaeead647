use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Pos, SynsetId};
use crate::{Error, Result};

const SUM_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SentimentScore {
    pub positivity: f64,
    pub negativity: f64,
}

impl SentimentScore {
    /// Checks `0 <= pos`, `0 <= neg`, `pos + neg <= 1`.
    pub fn new(positivity: f64, negativity: f64) -> Result<Self> {
        let in_unit = |v: f64| (0.0..=1.0).contains(&v);
        if !in_unit(positivity) || !in_unit(negativity) {
            return Err(Error::Validation(format!(
                "scores ({positivity}, {negativity}) outside [0, 1]"
            )));
        }
        if positivity + negativity > 1.0 + SUM_TOLERANCE {
            return Err(Error::Validation(format!(
                "positivity {positivity} + negativity {negativity} exceeds 1"
            )));
        }
        Ok(SentimentScore {
            positivity,
            negativity,
        })
    }
}

/// SentiWordNet polarity scores keyed by synset.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SentimentLexicon {
    scores: HashMap<SynsetId, SentimentScore>,
}

impl SentimentLexicon {
    pub fn from_scores(
        scores: impl IntoIterator<Item = (SynsetId, SentimentScore)>,
    ) -> Result<Self> {
        let mut map = HashMap::new();
        for (id, score) in scores {
            map.insert(id, SentimentScore::new(score.positivity, score.negativity)?);
        }
        Ok(SentimentLexicon { scores: map })
    }

    /// Reads the six-column SentiWordNet 3.0 TSV
    /// (`POS ID PosScore NegScore SynsetTerms Gloss`). `#` lines are comments.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }

    pub(crate) fn parse(text: &str, path: &Path) -> Result<Self> {
        let mut scores = HashMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() < 4 {
                return Err(Error::parse(path, n + 1, "expected at least 4 tab-separated columns"));
            }
            let pos = Pos::from_tag(cols[0].trim())
                .ok_or_else(|| Error::parse(path, n + 1, format!("bad POS {:?}", cols[0])))?;
            let offset: u32 = cols[1]
                .trim()
                .parse()
                .map_err(|_| Error::parse(path, n + 1, format!("bad synset id {:?}", cols[1])))?;
            let num = |s: &str, what: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::parse(path, n + 1, format!("bad {what} {s:?}")))
            };
            let positivity = num(cols[2], "PosScore")?;
            let negativity = num(cols[3], "NegScore")?;
            let score = SentimentScore::new(positivity, negativity).map_err(|e| {
                Error::Validation(format!(
                    "{}:{}: row {}{:08}: {e}",
                    path.display(),
                    n + 1,
                    pos.tag(),
                    offset
                ))
            })?;
            scores.insert(SynsetId::new(pos, offset), score);
        }
        Ok(SentimentLexicon { scores })
    }

    pub fn score(&self, id: SynsetId) -> Option<SentimentScore> {
        self.scores.get(&id).copied()
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (SynsetId, SentimentScore)> + '_ {
        self.scores.iter().map(|(k, v)| (*k, *v))
    }
}
