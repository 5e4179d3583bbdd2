//! Transliteration strategies: the universal tables, a borrowed table, or a
//! seeded random letter per codepoint.
//!
//! The random map uses a fixed keyed hash so the same seed produces the same
//! letters on every platform:
//!
//! ```text
//! mix(z)     = SplitMix64 finalizer
//! key        = mix(seed + 0x9E3779B97F4A7C15)
//! letter(cp) = 'a' + mix(key + cp) mod 26      (wrapping u64 arithmetic)
//! ```

use std::path::PathBuf;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::romanizer::{self, RomanizeOptions, RuleSet};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seeded letter for a non-ASCII codepoint.
pub fn rand_char(seed: u64, ch: char) -> Result<char> {
    if ch.is_ascii() {
        return Err(Error::Contract(format!(
            "rand_char is defined for non-ASCII codepoints only, got U+{:04X}",
            ch as u32
        )));
    }
    Ok(letter(mix64(seed.wrapping_add(GOLDEN_GAMMA)), ch))
}

fn letter(key: u64, ch: char) -> char {
    let h = mix64(key.wrapping_add(ch as u64));
    char::from(b'a' + (h % 26) as u8)
}

/// Total map from codepoints to ASCII: identity on ASCII, a seeded letter elsewhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandMap {
    seed: u64,
    key: u64,
}

impl RandMap {
    pub fn new(seed: u64) -> Self {
        RandMap {
            seed,
            key: mix64(seed.wrapping_add(GOLDEN_GAMMA)),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn map(&self, ch: char) -> char {
        if ch.is_ascii() {
            ch
        } else {
            letter(self.key, ch)
        }
    }

    /// Whitespace is copied and ASCII control characters are dropped so the
    /// output obeys the same alphabet as [`romanizer::romanize`].
    pub fn transliterate(&self, text: &str) -> String {
        text.chars()
            .filter(|c| !c.is_ascii_control() || c.is_ascii_whitespace())
            .map(|c| if c.is_whitespace() { c } else { self.map(c) })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrategySpec {
    Universal,
    Borrow(PathBuf),
    Rand { seed: u64 },
}

impl StrategySpec {
    pub fn name(&self) -> &'static str {
        match self {
            StrategySpec::Universal => "universal",
            StrategySpec::Borrow(_) => "borrow",
            StrategySpec::Rand { .. } => "rand",
        }
    }
}

/// A ready-to-use text transformer.
#[derive(Clone, Debug)]
pub enum Strategy {
    Rules {
        kind: &'static str,
        rules: Arc<RuleSet>,
        options: RomanizeOptions,
    },
    Rand(RandMap),
}

impl Strategy {
    pub fn transliterate(&self, text: &str) -> String {
        match self {
            Strategy::Rules { rules, options, .. } => romanizer::romanize(text, rules, options),
            Strategy::Rand(map) => map.transliterate(text),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Strategy::Rules { kind, .. } => kind,
            Strategy::Rand(_) => "rand",
        }
    }

    /// Rule-table provenance, or `rand:<seed>`.
    pub fn provenance(&self) -> String {
        match self {
            Strategy::Rules { rules, .. } => rules.provenance().to_owned(),
            Strategy::Rand(map) => format!("rand:{}", map.seed()),
        }
    }
}

/// Build a strategy using the embedded universal tables.
pub fn make_strategy(spec: &StrategySpec) -> Result<Strategy> {
    make_strategy_with(spec, Arc::new(romanizer::default_rules().clone()), RomanizeOptions::default())
}

/// Build a strategy with an explicit universal rule set and romanizer options.
pub fn make_strategy_with(
    spec: &StrategySpec,
    universal: Arc<RuleSet>,
    options: RomanizeOptions,
) -> Result<Strategy> {
    options.validate()?;
    Ok(match spec {
        StrategySpec::Universal => Strategy::Rules {
            kind: "universal",
            rules: universal,
            options,
        },
        StrategySpec::Borrow(path) => {
            let label = format!(
                "borrowed:{}",
                path.file_stem().unwrap_or_default().to_string_lossy()
            );
            Strategy::Rules {
                kind: "borrow",
                rules: Arc::new(romanizer::load_rules_file(path, label)?),
                options,
            }
        }
        StrategySpec::Rand { seed } => Strategy::Rand(RandMap::new(*seed)),
    })
}
