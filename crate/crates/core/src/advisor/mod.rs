//! Synonym suggestions for running text.
//!
//! Text is split into tokens (maximal runs of ASCII letters, with
//! apostrophes allowed between letters). Each token that is not a stop word
//! gets the single-word co-lemmas of every synset containing it, scored by
//! the trained model against the original word and ranked by margin.

mod tokenize;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::features::{FeatureExtractor, ReadFeatures};
use crate::lexicon::normalize_lemma;
use crate::model::{predict_pair, Contribution, TrainedModel};
use crate::Result;

pub use tokenize::{tokenize, Token};

pub const ANNOTATION_FORMAT: &str = "read-annotations";
pub const ANNOTATION_SCHEMA_VERSION: u32 = 1;

/// Stop-word list shipped with the crate.
pub const DEFAULT_STOP_WORDS: &str = include_str!("../../data/stopwords.txt");

pub fn parse_stop_words(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_ascii_lowercase)
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdvisorConfig {
    /// Candidates kept per token.
    pub limit: usize,
    /// Offer multiword lemmas ("give_up") as candidates.
    pub multiword: bool,
    pub stop_words: BTreeSet<String>,
}

impl Default for AdvisorConfig {
    fn default() -> Self {
        AdvisorConfig {
            limit: 5,
            multiword: false,
            stop_words: parse_stop_words(DEFAULT_STOP_WORDS),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub word: String,
    /// Predicted rate advantage of the candidate over the original.
    pub margin: f64,
    pub frequency: f64,
    pub contributions: Vec<Contribution>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TokenSuggestion {
    /// Byte offsets into the input text.
    pub start: usize,
    pub end: usize,
    pub word: String,
    pub candidates: Vec<Candidate>,
    /// The word is not in the lexicon.
    pub oov: bool,
    /// The word is known but has no eligible synonyms.
    pub no_synonyms: bool,
}

/// Annotation output shared by every interface.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnotationDocument {
    pub format: String,
    pub schema_version: u32,
    pub annotations: Vec<TokenSuggestion>,
}

impl AnnotationDocument {
    pub fn new(annotations: Vec<TokenSuggestion>) -> Self {
        AnnotationDocument {
            format: ANNOTATION_FORMAT.to_string(),
            schema_version: ANNOTATION_SCHEMA_VERSION,
            annotations,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

pub struct Advisor<'a> {
    extractor: FeatureExtractor<'a>,
    model: &'a TrainedModel,
    config: AdvisorConfig,
}

impl<'a> Advisor<'a> {
    pub fn new(extractor: FeatureExtractor<'a>, model: &'a TrainedModel, config: AdvisorConfig) -> Self {
        Advisor {
            extractor,
            model,
            config,
        }
    }

    pub fn config(&self) -> &AdvisorConfig {
        &self.config
    }

    fn eligible(&self, lemma: &str) -> bool {
        let letters = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphabetic());
        if self.config.multiword {
            lemma.split('_').all(letters)
        } else {
            letters(lemma)
        }
    }

    /// Ranked candidates for one word; the span is left at 0..len(word).
    pub fn suggest(&self, word: &str) -> Result<TokenSuggestion> {
        let lemma = normalize_lemma(word);
        let mut out = TokenSuggestion {
            start: 0,
            end: word.len(),
            word: word.to_string(),
            candidates: Vec::new(),
            oov: false,
            no_synonyms: false,
        };
        let lexicon = self.extractor.lexicon;
        if lemma.is_empty() || !lexicon.contains_lemma(&lemma) {
            out.oov = true;
            return Ok(out);
        }
        let pool: BTreeSet<&str> = lexicon
            .senses(&lemma)
            .into_iter()
            .flat_map(|s| s.lemmas.iter().map(String::as_str))
            .filter(|l| *l != lemma && self.eligible(l))
            .collect();
        if pool.is_empty() {
            out.no_synonyms = true;
            return Ok(out);
        }
        let original = self.extractor.read_features(&lemma)?;
        let mut candidates = pool
            .into_iter()
            .map(|c| self.score(c, &original))
            .collect::<Result<Vec<_>>>()?;
        candidates.sort_by(|a, b| {
            b.margin
                .total_cmp(&a.margin)
                .then(b.frequency.total_cmp(&a.frequency))
                .then_with(|| a.word.cmp(&b.word))
        });
        candidates.truncate(self.config.limit);
        out.candidates = candidates;
        Ok(out)
    }

    fn score(&self, word: &str, original: &ReadFeatures) -> Result<Candidate> {
        let features = self.extractor.read_features(word)?;
        let p = predict_pair(self.model, &features, original)?;
        Ok(Candidate {
            word: word.to_string(),
            margin: p.margin,
            frequency: features.frequency,
            contributions: p.contributions,
        })
    }

    /// Suggestions for every non-stop-word token, in text order.
    pub fn annotate(&self, text: &str) -> Result<Vec<TokenSuggestion>> {
        let mut out = Vec::new();
        for token in tokenize(text) {
            if self.config.stop_words.contains(&token.text.to_ascii_lowercase()) {
                continue;
            }
            let mut s = self.suggest(token.text)?;
            s.start = token.start;
            s.end = token.end;
            out.push(s);
        }
        Ok(out)
    }

    pub fn annotate_document(&self, text: &str) -> Result<AnnotationDocument> {
        Ok(AnnotationDocument::new(self.annotate(text)?))
    }
}
