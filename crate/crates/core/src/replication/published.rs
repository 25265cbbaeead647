//! Values reported by the original study, used for comparison only.

use crate::features::Feature;

pub const WORDS: usize = 100;
pub const PAIRS: usize = 50;
pub const RESPONSES_PER_WORD: u32 = 805;
pub const MEAN_RATE: f64 = 0.22;
pub const SD_RATE: f64 = 0.017;

/// Correlation with selection rate, in canonical feature order.
pub const CORRELATIONS: [f64; Feature::COUNT] =
    [0.207, 0.200, 0.269, 0.155, -0.384, -0.410, 0.137, 0.117, 0.184, 0.018];

pub const SIGNIFICANT_PAIRS: usize = 16;
pub const BINOMIAL_P: f64 = 0.000037;

pub const R_SQUARED: f64 = 0.545;
pub const F_STAT: f64 = 13.096;
pub const F_DF: (f64, f64) = (1.0, 98.0);
pub const HITS: usize = 44;

/// High- versus low-rate t statistic and Cohen's d per feature, where given.
pub fn high_low(feature: Feature) -> Option<(f64, f64)> {
    match feature {
        Feature::Definitions => Some((102.016, 2.573)),
        Feature::Synonyms => Some((92.240, 5.460)),
        Feature::Hypernyms => Some((100.430, 1.766)),
        Feature::Hyponyms => Some((40.524, 9.977)),
        Feature::WordLength => Some((-140.503, 1.615)),
        Feature::Syllables => Some((-121.140, 0.820)),
        Feature::PosMax => Some((-7.340, 0.241575)),
        Feature::NegMax => Some((8.904, 0.298743)),
        Feature::Emotionality => None,
        Feature::Frequency => Some((94.004, 0.0000645)),
    }
}
