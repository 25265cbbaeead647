//! Resource cache written by `read ingest`.
//!
//! A single JSON document:
//!
//! ```text
//! {
//!   "format": "read-resource-cache",
//!   "version": 1,
//!   "synsets":   [ {"id": "02084071-n", "lemmas": [...], "gloss": "...",
//!                   "hypernym_ids": [...], "hyponym_ids": [...]}, ... ],
//!   "sentiment": [ {"id": "02084071-n", "positivity": 0.0, "negativity": 0.0}, ... ],
//!   "frequency": [ ["dog", 5.1], ... ]
//! }
//! ```
//!
//! Synsets are ordered by id, sentiment rows by id and frequency rows by word,
//! so the same sources always produce byte-identical caches. The cache can be
//! regenerated from the source files at any time.

use std::fs;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{FrequencyTable, Lexicon, Resources, SentimentLexicon, SentimentScore, Synset, SynsetId};
use crate::{Error, Result};

pub const CACHE_FORMAT: &str = "read-resource-cache";
pub const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct SentimentRow {
    id: SynsetId,
    positivity: f64,
    negativity: f64,
}

#[derive(Serialize, Deserialize)]
struct CacheDocument {
    format: String,
    version: u32,
    synsets: Vec<Synset>,
    sentiment: Vec<SentimentRow>,
    frequency: Vec<(String, f64)>,
}

impl Resources {
    pub fn write_cache(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut sentiment: Vec<SentimentRow> = self
            .sentiment
            .iter()
            .map(|(id, s)| SentimentRow {
                id,
                positivity: s.positivity,
                negativity: s.negativity,
            })
            .collect();
        sentiment.sort_by_key(|r| r.id);
        let mut frequency: Vec<(String, f64)> = self
            .frequency
            .iter()
            .map(|(w, z)| (w.to_string(), z))
            .collect();
        frequency.sort_by(|a, b| a.0.cmp(&b.0));
        let doc = CacheDocument {
            format: CACHE_FORMAT.to_string(),
            version: CACHE_VERSION,
            synsets: self.lexicon.synsets().cloned().collect(),
            sentiment,
            frequency,
        };
        let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = BufWriter::new(file);
        serde_json::to_writer(&mut w, &doc)?;
        w.write_all(b"\n").map_err(|e| Error::io(path, e))?;
        w.flush().map_err(|e| Error::io(path, e))
    }

    pub fn read_cache(path: impl AsRef<Path>) -> Result<Resources> {
        let path = path.as_ref();
        let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
        let doc: CacheDocument = serde_json::from_reader(BufReader::new(file))?;
        if doc.format != CACHE_FORMAT || doc.version != CACHE_VERSION {
            return Err(Error::Validation(format!(
                "{}: expected {CACHE_FORMAT} v{CACHE_VERSION}, found {} v{}",
                path.display(),
                doc.format,
                doc.version
            )));
        }
        let lexicon = Lexicon::from_synsets(doc.synsets)?;
        let sentiment = SentimentLexicon::from_scores(doc.sentiment.into_iter().map(|r| {
            (
                r.id,
                SentimentScore {
                    positivity: r.positivity,
                    negativity: r.negativity,
                },
            )
        }))?;
        let frequency = FrequencyTable::from_entries(doc.frequency)?;
        Ok(Resources {
            lexicon,
            sentiment,
            frequency,
        })
    }
}
