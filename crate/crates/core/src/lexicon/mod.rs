//! Lexical resources: the WordNet synset graph, SentiWordNet polarity scores
//! and a Zipf-scale frequency table.
//!
//! All three are immutable once loaded. [`Resources`] bundles them and owns the
//! on-disk cache format written by `read ingest`.

mod cache;
mod frequency;
mod sentiment;
mod wndb;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use cache::{CACHE_FORMAT, CACHE_VERSION};
pub use frequency::FrequencyTable;
pub use sentiment::{SentimentLexicon, SentimentScore};

/// Part of speech of a synset. Adjective satellites (`s`) fold into
/// [`Pos::Adjective`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pos {
    Noun,
    Verb,
    Adjective,
    Adverb,
}

impl Pos {
    pub const ALL: [Pos; 4] = [Pos::Noun, Pos::Verb, Pos::Adjective, Pos::Adverb];

    pub fn from_tag(tag: &str) -> Option<Pos> {
        match tag {
            "n" => Some(Pos::Noun),
            "v" => Some(Pos::Verb),
            "a" | "s" => Some(Pos::Adjective),
            "r" => Some(Pos::Adverb),
            _ => None,
        }
    }

    pub fn tag(self) -> char {
        match self {
            Pos::Noun => 'n',
            Pos::Verb => 'v',
            Pos::Adjective => 'a',
            Pos::Adverb => 'r',
        }
    }

    /// Suffix used by the WNDB file names (`data.noun`, `index.adj`, ...).
    pub fn file_suffix(self) -> &'static str {
        match self {
            Pos::Noun => "noun",
            Pos::Verb => "verb",
            Pos::Adjective => "adj",
            Pos::Adverb => "adv",
        }
    }
}

/// Synset identity: byte offset in the data file plus part of speech.
/// Displays as `02084071-n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SynsetId {
    pub pos: Pos,
    pub offset: u32,
}

impl SynsetId {
    pub fn new(pos: Pos, offset: u32) -> Self {
        SynsetId { pos, offset }
    }
}

impl fmt::Display for SynsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:08}-{}", self.offset, self.pos.tag())
    }
}

impl FromStr for SynsetId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Argument(format!("malformed synset id {s:?}"));
        let (offset, tag) = s.split_once('-').ok_or_else(bad)?;
        let pos = Pos::from_tag(tag).ok_or_else(bad)?;
        let offset = offset.parse().map_err(|_| bad())?;
        Ok(SynsetId { pos, offset })
    }
}

impl Serialize for SynsetId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SynsetId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Synset {
    pub id: SynsetId,
    /// Normalized lemmas in file order.
    pub lemmas: Vec<String>,
    pub gloss: String,
    /// Hypernyms and instance hypernyms.
    pub hypernym_ids: Vec<SynsetId>,
    /// Hyponyms and instance hyponyms.
    pub hyponym_ids: Vec<SynsetId>,
}

/// Lowercase, trim, and join internal whitespace with underscores.
pub fn normalize_lemma(word: &str) -> String {
    let mut out = String::with_capacity(word.len());
    for (i, part) in word.split_whitespace().enumerate() {
        if i > 0 {
            out.push('_');
        }
        out.extend(part.chars().flat_map(char::to_lowercase));
    }
    out
}

/// Immutable synset graph with a lemma index.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Lexicon {
    synsets: BTreeMap<SynsetId, Synset>,
    lemma_index: HashMap<String, Vec<SynsetId>>,
}

impl Lexicon {
    /// Builds a lexicon from already-parsed synsets, checking the graph
    /// invariants: no self links, hierarchy links stay within one part of
    /// speech, and every link resolves.
    pub fn from_synsets(synsets: impl IntoIterator<Item = Synset>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for synset in synsets {
            if synset.lemmas.is_empty() {
                return Err(Error::Validation(format!("synset {} has no lemmas", synset.id)));
            }
            let id = synset.id;
            if map.insert(id, synset).is_some() {
                return Err(Error::Validation(format!("duplicate synset {id}")));
            }
        }
        for synset in map.values() {
            for target in synset.hypernym_ids.iter().chain(&synset.hyponym_ids) {
                if *target == synset.id {
                    return Err(Error::Validation(format!("synset {} links to itself", synset.id)));
                }
                if target.pos != synset.id.pos {
                    return Err(Error::Validation(format!(
                        "synset {} has a hierarchy link to {} of another part of speech",
                        synset.id, target
                    )));
                }
                if !map.contains_key(target) {
                    return Err(Error::DanglingPointer {
                        synset: synset.id.to_string(),
                        target: target.to_string(),
                    });
                }
            }
        }
        let mut lemma_index: HashMap<String, Vec<SynsetId>> = HashMap::new();
        // BTreeMap iteration is already sorted by (pos, offset).
        for synset in map.values() {
            for lemma in &synset.lemmas {
                lemma_index.entry(lemma.clone()).or_default().push(synset.id);
            }
        }
        Ok(Lexicon {
            synsets: map,
            lemma_index,
        })
    }

    pub fn len(&self) -> usize {
        self.synsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.synsets.is_empty()
    }

    pub fn synset(&self, id: SynsetId) -> Option<&Synset> {
        self.synsets.get(&id)
    }

    pub fn synsets(&self) -> impl Iterator<Item = &Synset> {
        self.synsets.values()
    }

    /// Synset ids containing `lemma`, sorted by part of speech then offset.
    pub fn synset_ids(&self, lemma: &str) -> &[SynsetId] {
        self.lemma_index.get(lemma).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All senses of an already-normalized lemma across every part of speech.
    pub fn senses(&self, lemma: &str) -> Vec<&Synset> {
        self.synset_ids(lemma)
            .iter()
            .map(|id| &self.synsets[id])
            .collect()
    }

    pub fn contains_lemma(&self, lemma: &str) -> bool {
        self.lemma_index.contains_key(lemma)
    }

    pub fn lemmas(&self) -> impl Iterator<Item = &str> {
        self.lemma_index.keys().map(String::as_str)
    }

    pub fn hypernyms(&self, id: SynsetId) -> &[SynsetId] {
        self.synsets
            .get(&id)
            .map(|s| s.hypernym_ids.as_slice())
            .unwrap_or(&[])
    }

    pub fn hyponyms(&self, id: SynsetId) -> &[SynsetId] {
        self.synsets
            .get(&id)
            .map(|s| s.hyponym_ids.as_slice())
            .unwrap_or(&[])
    }
}

/// Parses WNDB `index.*` and `data.*` files into a [`Lexicon`].
///
/// Data files supply the synsets; index files are cross-checked against them.
/// Only hypernym (`@`, `@i`) and hyponym (`~`, `~i`) pointers are kept.
pub fn load_wordnet<P: AsRef<Path>>(index_paths: &[P], data_paths: &[P]) -> Result<Lexicon> {
    let mut synsets = Vec::new();
    for path in data_paths {
        synsets.extend(wndb::parse_data_file(path.as_ref())?);
    }
    let lexicon = Lexicon::from_synsets(synsets)?;
    for path in index_paths {
        wndb::check_index_file(path.as_ref(), &lexicon)?;
    }
    Ok(lexicon)
}

/// Loads every `index.<pos>`/`data.<pos>` pair present in a WordNet `dict`
/// directory.
pub fn load_wordnet_dir(dir: impl AsRef<Path>) -> Result<Lexicon> {
    let dir = dir.as_ref();
    let mut index = Vec::new();
    let mut data = Vec::new();
    for pos in Pos::ALL {
        let d = dir.join(format!("data.{}", pos.file_suffix()));
        if d.exists() {
            data.push(d);
            let i = dir.join(format!("index.{}", pos.file_suffix()));
            if i.exists() {
                index.push(i);
            }
        }
    }
    if data.is_empty() {
        return Err(Error::Argument(format!(
            "no WNDB data files found in {}",
            dir.display()
        )));
    }
    load_wordnet(&index, &data)
}

/// The three lexical resources the feature extractor reads from.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Resources {
    pub lexicon: Lexicon,
    pub sentiment: SentimentLexicon,
    pub frequency: FrequencyTable,
}

impl Resources {
    /// Loads the sources in parallel, one thread per resource.
    pub fn load(
        wordnet_dir: &Path,
        sentiwordnet: Option<&Path>,
        frequency: Option<&Path>,
    ) -> Result<Resources> {
        std::thread::scope(|scope| {
            let lexicon = scope.spawn(|| load_wordnet_dir(wordnet_dir));
            let sentiment = scope.spawn(|| match sentiwordnet {
                Some(p) => SentimentLexicon::load(p),
                None => Ok(SentimentLexicon::default()),
            });
            let frequency = scope.spawn(|| match frequency {
                Some(p) => FrequencyTable::load(p),
                None => Ok(FrequencyTable::default()),
            });
            Ok(Resources {
                lexicon: lexicon.join().expect("wordnet loader panicked")?,
                sentiment: sentiment.join().expect("sentiwordnet loader panicked")?,
                frequency: frequency.join().expect("frequency loader panicked")?,
            })
        })
    }
}
