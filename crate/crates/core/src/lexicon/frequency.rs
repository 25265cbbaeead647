use std::collections::HashMap;
use std::fs;
use std::path::Path;

use super::normalize_lemma;
use crate::{Error, Result};

pub const ZIPF_MAX: f64 = 9.0;

/// Word frequencies on the Zipf scale (log10 occurrences per billion words).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FrequencyTable {
    zipf: HashMap<String, f64>,
}

impl FrequencyTable {
    pub fn from_entries<S: AsRef<str>>(entries: impl IntoIterator<Item = (S, f64)>) -> Result<Self> {
        let mut zipf = HashMap::new();
        for (word, value) in entries {
            if !(0.0..=ZIPF_MAX).contains(&value) {
                return Err(Error::Validation(format!(
                    "Zipf value {value} for {:?} outside [0, 9]",
                    word.as_ref()
                )));
            }
            zipf.insert(normalize_lemma(word.as_ref()), value);
        }
        Ok(FrequencyTable { zipf })
    }

    /// Reads a two-column `word<TAB>zipf` file. Later duplicates win.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }

    pub(crate) fn parse(text: &str, path: &Path) -> Result<Self> {
        let mut zipf = HashMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (word, value) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(path, n + 1, "expected word<TAB>zipf"))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| Error::parse(path, n + 1, format!("non-numeric Zipf value {value:?}")))?;
            if !(0.0..=ZIPF_MAX).contains(&value) {
                return Err(Error::parse(
                    path,
                    n + 1,
                    format!("Zipf value {value} outside [0, 9]"),
                ));
            }
            let word = normalize_lemma(word);
            if word.is_empty() {
                return Err(Error::parse(path, n + 1, "empty word"));
            }
            zipf.insert(word, value);
        }
        Ok(FrequencyTable { zipf })
    }

    /// Case-insensitive lookup; `None` when out of vocabulary.
    pub fn zipf(&self, word: &str) -> Option<f64> {
        self.zipf.get(&normalize_lemma(word)).copied()
    }

    pub fn len(&self) -> usize {
        self.zipf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zipf.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.zipf.iter().map(|(k, v)| (k.as_str(), *v))
    }
}
