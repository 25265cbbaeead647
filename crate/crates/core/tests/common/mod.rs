//! Shared fixtures for the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use std::path::PathBuf;

use read_core::replication::parse_dataset;
use read_core::{ColumnMap, Feature, ReplicationDataset, Resources};

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn repo_data() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn mini_resources() -> Resources {
    let dir = fixtures().join("mini");
    Resources::load(&dir, Some(&dir.join("sentiwordnet.tsv")), Some(&dir.join("zipf.tsv"))).unwrap()
}

/// Lines of a `#`-commented TSV, split on tabs.
pub fn tsv_rows(name: &str) -> Vec<Vec<String>> {
    std::fs::read_to_string(fixtures().join(name))
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| l.split('\t').map(str::to_string).collect())
        .collect()
}

pub fn reference() -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(fixtures().join("stats_reference.json")).unwrap()).unwrap()
}

/// Walsh function `k` on 16 points: (−1)^popcount(k & i).
fn walsh(k: usize, i: usize) -> f64 {
    if (k & i).count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

pub const PAIRS: usize = 50;
/// Pairs 0..48 carry the signal; 48 and 49 carry noise only.
const SIGNAL: usize = 48;

/// Unit pattern over pairs for Walsh row `k`, repeated over three blocks of
/// 16 and zero on the last two pairs. Rows 1..=15 are mutually orthogonal
/// and sum to zero.
pub fn pattern(k: usize) -> Vec<f64> {
    (0..PAIRS).map(|p| if p < SIGNAL { walsh(k, p % 16) } else { 0.0 }).collect()
}

/// A synthetic dataset with known answers.
///
/// For pair `p` and feature `j`, word a has `center_j + scale_j·u_j[p]` and
/// word b `center_j − scale_j·u_j[p]`, where `u_j` is Walsh pattern `j + 1`.
/// Rates are `0.22 ± s[p]` with
/// `s = Σ_j b_j·u_j + gamma·u_10 + eta·(0, …, 0, 1, −1)`.
///
/// Because the patterns are orthogonal and zero-sum, the word-level
/// correlation of feature `j` with the rate is `b_j·√48 / |s|`, the pair
/// regression recovers the planted rule exactly and `R² = 48·Σb² / |s|²`.
pub struct Planted {
    /// Per-unit-pattern effect on the half rate difference, for the nine
    /// non-emotionality features in canonical order.
    pub b: [f64; 9],
    pub gamma: f64,
    pub eta: f64,
    pub centers: [f64; 9],
    pub scales: [f64; 9],
}

/// The nine independent features (emotionality is pos + neg).
pub const BASE_FEATURES: [Feature; 9] = [
    Feature::Definitions,
    Feature::Synonyms,
    Feature::Hypernyms,
    Feature::Hyponyms,
    Feature::WordLength,
    Feature::Syllables,
    Feature::PosMax,
    Feature::NegMax,
    Feature::Frequency,
];

impl Default for Planted {
    fn default() -> Self {
        Planted {
            b: [0.004, 0.003, 0.005, 0.002, -0.006, -0.0035, 0.0025, 0.0015, 0.001],
            gamma: 0.01,
            eta: 0.02,
            centers: [5.0, 6.0, 3.0, 10.0, 7.0, 3.0, 0.5, 0.25, 4.0],
            scales: [1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.125, 0.125, 0.5],
        }
    }
}

impl Planted {
    /// Half rate difference per pair.
    pub fn s(&self) -> Vec<f64> {
        let mut s = vec![0.0; PAIRS];
        for (j, b) in self.b.iter().enumerate() {
            for (sp, u) in s.iter_mut().zip(pattern(j + 1)) {
                *sp += b * u;
            }
        }
        for (sp, u) in s.iter_mut().zip(pattern(10)) {
            *sp += self.gamma * u;
        }
        s[SIGNAL] += self.eta;
        s[SIGNAL + 1] -= self.eta;
        s
    }

    /// The signal part of `s` (what the true rule predicts).
    pub fn signal(&self) -> Vec<f64> {
        let mut m = vec![0.0; PAIRS];
        for (j, b) in self.b.iter().enumerate() {
            for (mp, u) in m.iter_mut().zip(pattern(j + 1)) {
                *mp += b * u;
            }
        }
        m
    }

    fn s_norm2(&self) -> f64 {
        48.0 * self.b.iter().map(|b| b * b).sum::<f64>() + 48.0 * self.gamma * self.gamma + 2.0 * self.eta * self.eta
    }

    /// Word-level correlation of each feature with the selection rate.
    pub fn correlations(&self) -> [f64; Feature::COUNT] {
        let s = self.s_norm2().sqrt();
        let mut r = [0.0; Feature::COUNT];
        for (j, f) in BASE_FEATURES.iter().enumerate() {
            r[f.index()] = self.b[j] * 48f64.sqrt() / s;
        }
        // Emotionality: pos and neg share a scale, so its pattern is u_7 + u_8.
        r[Feature::Emotionality.index()] = 48.0 * (self.b[6] + self.b[7]) / (96f64.sqrt() * s);
        r
    }

    /// R² of the plain and mirrored regressions.
    pub fn r_squared(&self) -> f64 {
        48.0 * self.b.iter().map(|b| b * b).sum::<f64>() / self.s_norm2()
    }

    /// Coefficient on each raw feature delta. Pair deltas and rate
    /// differences are both twice the half-differences, so it is
    /// `b_j / scale_j`.
    pub fn coefficients(&self) -> [f64; 9] {
        std::array::from_fn(|j| self.b[j] / self.scales[j])
    }

    /// Hits of the true rule: pairs where the signal and `s` share a
    /// nonzero sign. Noise-only pairs are ties and count as misses.
    pub fn accuracy_hits(&self) -> usize {
        self.signal()
            .iter()
            .zip(self.s())
            .filter(|(m, s)| **m != 0.0 && m.signum() == s.signum())
            .count()
    }

    pub fn csv(&self) -> String {
        let names: Vec<&str> = Feature::ALL.iter().map(|f| f.name()).collect();
        let mut out = format!("word,pair_id,selection_rate,n_responses,{}\n", names.join(","));
        let s = self.s();
        for p in 0..PAIRS {
            for (side, sign) in [("a", 1.0), ("b", -1.0)] {
                let mut values = [0.0; Feature::COUNT];
                for (j, f) in BASE_FEATURES.iter().enumerate() {
                    values[f.index()] = self.centers[j] + sign * self.scales[j] * pattern(j + 1)[p];
                }
                values[Feature::Emotionality.index()] =
                    values[Feature::PosMax.index()] + values[Feature::NegMax.index()];
                let cells: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                out.push_str(&format!(
                    "{}{side},p{p:02},{},805,{}\n",
                    word_name(p),
                    0.22 + sign * s[p],
                    cells.join(",")
                ));
            }
        }
        out
    }

    pub fn dataset(&self) -> ReplicationDataset {
        parse_dataset(&self.csv(), &ColumnMap::default(), "planted").unwrap()
    }
}

/// Letters-only word names ("ba", "be", …) so local extraction also works.
fn word_name(p: usize) -> String {
    const C: &[u8] = b"bdfgklmnprstvz";
    const V: &[u8] = b"aeiou";
    let mut w = String::new();
    w.push(C[p % C.len()] as char);
    w.push(V[(p / C.len()) % V.len()] as char);
    w.push(C[(p / 3) % C.len()] as char);
    w
}
