//! Inherent-vowel handling for abugidas.
//!
//! Consonant outputs (from rules or from the name heuristic) carry the
//! inherent vowel, `ja` for U+091C. The engine removes it when the
//! consonant is followed by a dependent sign (vowel sign, virama, subjoined
//! consonant) and, in scripts with word-final vowel deletion, when the
//! consonant closes a word of two or more letters.

use std::ops::RangeInclusive;

pub(crate) const INHERENT_VOWEL: char = 'a';

pub(crate) struct Profile {
    consonants: &'static [RangeInclusive<u32>],
    /// Vowel signs, viramas and subjoined consonants.
    dependents: &'static [RangeInclusive<u32>],
    /// Signs skipped when looking for a dependent (nukta).
    transparent: &'static [RangeInclusive<u32>],
    pub final_deletion: bool,
}

impl Profile {
    pub fn is_consonant(&self, c: char) -> bool {
        in_any(self.consonants, c)
    }

    pub fn is_dependent(&self, c: char) -> bool {
        in_any(self.dependents, c)
    }

    pub fn is_transparent(&self, c: char) -> bool {
        in_any(self.transparent, c)
    }
}

fn in_any(ranges: &[RangeInclusive<u32>], c: char) -> bool {
    ranges.iter().any(|r| r.contains(&(c as u32)))
}

// The nine Brahmic blocks of the BMP share the ISCII-derived layout.
macro_rules! indic {
    ($base:expr, $final_deletion:expr) => {
        Profile {
            consonants: &[$base + 0x15..=$base + 0x39, $base + 0x58..=$base + 0x5F],
            dependents: &[
                $base + 0x3E..=$base + 0x4D,
                $base + 0x55..=$base + 0x57,
                $base + 0x62..=$base + 0x63,
            ],
            transparent: &[$base + 0x3C..=$base + 0x3C],
            final_deletion: $final_deletion,
        }
    };
}

static DEVANAGARI: Profile = Profile {
    consonants: &[0x0915..=0x0939, 0x0958..=0x095F, 0x0978..=0x097F],
    dependents: &[
        0x093A..=0x093B,
        0x093E..=0x094D,
        0x094E..=0x094F,
        0x0955..=0x0957,
        0x0962..=0x0963,
    ],
    transparent: &[0x093C..=0x093C],
    final_deletion: true,
};
static BENGALI: Profile = indic!(0x0980, true);
static GURMUKHI: Profile = indic!(0x0A00, true);
static GUJARATI: Profile = indic!(0x0A80, true);
static ORIYA: Profile = indic!(0x0B00, false);
static TAMIL: Profile = indic!(0x0B80, false);
static TELUGU: Profile = indic!(0x0C00, false);
static KANNADA: Profile = indic!(0x0C80, false);
static MALAYALAM: Profile = indic!(0x0D00, false);

static SINHALA: Profile = Profile {
    consonants: &[0x0D9A..=0x0DC6],
    dependents: &[0x0DCA..=0x0DCA, 0x0DCF..=0x0DDF, 0x0DF2..=0x0DF3],
    transparent: &[],
    final_deletion: false,
};

static TIBETAN: Profile = Profile {
    consonants: &[0x0F40..=0x0F6C, 0x0F90..=0x0FBC],
    dependents: &[0x0F71..=0x0F7D, 0x0F80..=0x0F81, 0x0F84..=0x0F84, 0x0F90..=0x0FBC],
    transparent: &[],
    final_deletion: true,
};

static MYANMAR: Profile = Profile {
    consonants: &[0x1000..=0x1021],
    dependents: &[0x102B..=0x1032, 0x1039..=0x103A],
    transparent: &[],
    final_deletion: false,
};

static KHMER: Profile = Profile {
    consonants: &[0x1780..=0x17A2],
    dependents: &[0x17B6..=0x17C5, 0x17D2..=0x17D2],
    transparent: &[],
    final_deletion: false,
};

pub(crate) fn profile_for(c: char) -> Option<&'static Profile> {
    Some(match c as u32 {
        0x0900..=0x097F => &DEVANAGARI,
        0x0980..=0x09FF => &BENGALI,
        0x0A00..=0x0A7F => &GURMUKHI,
        0x0A80..=0x0AFF => &GUJARATI,
        0x0B00..=0x0B7F => &ORIYA,
        0x0B80..=0x0BFF => &TAMIL,
        0x0C00..=0x0C7F => &TELUGU,
        0x0C80..=0x0CFF => &KANNADA,
        0x0D00..=0x0D7F => &MALAYALAM,
        0x0D80..=0x0DFF => &SINHALA,
        0x0F00..=0x0FFF => &TIBETAN,
        0x1000..=0x109F => &MYANMAR,
        0x1780..=0x17FF => &KHMER,
        _ => return None,
    })
}
