//! Unicode foundations: script identification, normalization and the
//! character properties the romanizer's fallback chain reads.
//!
//! All property data is pinned to a single Unicode version
//! ([`UNICODE_VERSION`]). Scripts, names and normalization come from the
//! `unicode-script`, `unicode_names2` and `unicode-normalization` crates
//! (version-locked in the manifest); decimal-digit values come from the
//! generated table in `tables.rs`.

mod tables;

use std::fmt;
use std::str::FromStr;

use unicode_normalization::UnicodeNormalization;
use unicode_script::{Script, UnicodeScript};

use crate::error::{Error, Result};

pub use tables::UNICODE_VERSION;

const ZERO_WIDTH_NON_JOINER: char = '\u{200C}';
const ZERO_WIDTH_JOINER: char = '\u{200D}';

/// A value of the Unicode `Script` property.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ScriptTag(Script);

impl ScriptTag {
    pub const LATIN: ScriptTag = ScriptTag(Script::Latin);
    pub const COMMON: ScriptTag = ScriptTag(Script::Common);
    pub const INHERITED: ScriptTag = ScriptTag(Script::Inherited);
    pub const UNKNOWN: ScriptTag = ScriptTag(Script::Unknown);
    pub const DEVANAGARI: ScriptTag = ScriptTag(Script::Devanagari);
    pub const ARABIC: ScriptTag = ScriptTag(Script::Arabic);
    pub const CYRILLIC: ScriptTag = ScriptTag(Script::Cyrillic);
    pub const GEORGIAN: ScriptTag = ScriptTag(Script::Georgian);
    pub const ETHIOPIC: ScriptTag = ScriptTag(Script::Ethiopic);
    pub const THAANA: ScriptTag = ScriptTag(Script::Thaana);
    pub const KHMER: ScriptTag = ScriptTag(Script::Khmer);
    pub const SINHALA: ScriptTag = ScriptTag(Script::Sinhala);
    pub const TIBETAN: ScriptTag = ScriptTag(Script::Tibetan);
    pub const HAN: ScriptTag = ScriptTag(Script::Han);

    /// Long property value alias, e.g. `Devanagari`.
    pub fn name(self) -> &'static str {
        self.0.full_name()
    }

    /// Common and Inherited codepoints are shared between scripts.
    pub fn is_shared(self) -> bool {
        matches!(self.0, Script::Common | Script::Inherited)
    }
}

impl fmt::Display for ScriptTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScriptTag {
    type Err = Error;

    /// Accepts the long alias (`Devanagari`) or the four-letter code (`Deva`).
    fn from_str(s: &str) -> Result<Self> {
        Script::from_full_name(s)
            .or_else(|| Script::from_short_name(s))
            .map(ScriptTag)
            .ok_or_else(|| Error::Contract(format!("unknown script {s:?}")))
    }
}

pub fn script_of(ch: char) -> ScriptTag {
    ScriptTag(ch.script())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormalForm {
    /// NFC.
    Composed,
    /// NFKD with zero-width joiners and non-joiners removed.
    CompatibilityDecomposed,
}

pub fn is_joiner(ch: char) -> bool {
    ch == ZERO_WIDTH_JOINER || ch == ZERO_WIDTH_NON_JOINER
}

pub fn normalize(text: &str, form: NormalForm) -> String {
    match form {
        NormalForm::Composed => text.nfc().collect(),
        NormalForm::CompatibilityDecomposed => text.nfkd().filter(|&c| !is_joiner(c)).collect(),
    }
}

/// Like [`normalize`], but validates the encoding first.
pub fn normalize_bytes(bytes: &[u8], form: NormalForm) -> Result<String> {
    let text = decode_utf8(bytes)?;
    Ok(normalize(text, form))
}

pub fn decode_utf8(bytes: &[u8]) -> Result<&str> {
    std::str::from_utf8(bytes).map_err(|e| Error::from_utf8(&e))
}

/// NFKD without joiner removal; the romanizer decides joiner handling itself.
pub(crate) fn compatibility_decompose(text: &str) -> impl Iterator<Item = char> + '_ {
    text.nfkd()
}

pub(crate) fn decompose_char(ch: char) -> Vec<char> {
    let mut out = Vec::with_capacity(4);
    unicode_normalization::char::decompose_compatible(ch, |c| out.push(c));
    out
}

pub fn is_combining_mark(ch: char) -> bool {
    unicode_normalization::char::is_combining_mark(ch)
}

/// Numeric value for codepoints with `General_Category=Nd`.
pub fn decimal_digit_value(ch: char) -> Option<u8> {
    let cp = ch as u32;
    let idx = match tables::DECIMAL_DIGIT_ZEROS.binary_search(&cp) {
        Ok(i) => i,
        Err(0) => return None,
        Err(i) => i - 1,
    };
    let offset = cp - tables::DECIMAL_DIGIT_ZEROS[idx];
    (offset < 10).then_some(offset as u8)
}

/// The character's `Name` property (including algorithmic names), if any.
pub fn unicode_name(ch: char) -> Option<String> {
    unicode_names2::name(ch).map(|n| n.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharRecord {
    pub codepoint: char,
    pub script: ScriptTag,
    pub is_combining_mark: bool,
    pub decimal_digit_value: Option<u8>,
    /// Empty for codepoints without a name (unassigned, private use, controls).
    pub unicode_name: String,
}

impl CharRecord {
    pub fn of(ch: char) -> Self {
        CharRecord {
            codepoint: ch,
            script: script_of(ch),
            is_combining_mark: is_combining_mark(ch),
            decimal_digit_value: decimal_digit_value(ch),
            unicode_name: unicode_name(ch).unwrap_or_default(),
        }
    }
}
