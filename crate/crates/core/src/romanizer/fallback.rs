//! The fallback chain for codepoints no rule covers.
//!
//! In order:
//!
//! 1. decimal digits become their ASCII digit (when `map_digits` is on);
//! 2. name heuristic: for names containing one of the markers `LETTER`,
//!    `SYLLABLE`, `SIGN` or `VOWEL`, take the last word after the first
//!    marker (stopping at `WITH`), lowercased;
//! 3. compatibility decomposition, romanizing the non-mark parts and
//!    dropping combining marks;
//! 4. the terminal policy: drop, or emit the placeholder.
//!
//! Step 2 is a reconstruction; names like `SINHALA LETTER ALPAPRAANA GAYANNA`
//! come out poorly and are covered by the default tables instead.

use super::rules::is_printable_ascii;
use super::{FallbackPolicy, RomanizeOptions};
use crate::unicode;

const MARKERS: [&str; 4] = ["LETTER", "SYLLABLE", "SIGN", "VOWEL"];
const MAX_DEPTH: usize = 4;

/// Romanize a single codepoint without rules, using default options.
pub fn fallback_romanize(ch: char) -> String {
    fallback_romanize_with(ch, &RomanizeOptions::default())
}

pub fn fallback_romanize_with(ch: char, opts: &RomanizeOptions) -> String {
    let mut out = chain(ch, opts, 0).unwrap_or_else(|| terminal(ch, opts));
    if opts.lowercase_output && !ch.is_ascii() {
        out.make_ascii_lowercase();
    }
    out
}

/// Steps 1-3. `None` means the chain found nothing and the terminal policy applies;
/// `Some("")` means the codepoint is deliberately silent (a combining mark).
pub(crate) fn chain(ch: char, opts: &RomanizeOptions, depth: usize) -> Option<String> {
    if ch.is_ascii() {
        return is_printable_ascii(ch).then(|| ch.to_string());
    }
    if opts.map_digits {
        if let Some(d) = unicode::decimal_digit_value(ch) {
            return Some(char::from(b'0' + d).to_string());
        }
    }
    if let Some(name) = unicode::unicode_name(ch) {
        if let Some(token) = name_token(&name) {
            return Some(token);
        }
    }
    let parts = unicode::decompose_char(ch);
    if parts.len() == 1 && parts[0] == ch {
        return unicode::is_combining_mark(ch).then(String::new);
    }
    if depth >= MAX_DEPTH {
        return None;
    }
    let mut out = String::new();
    let mut any = false;
    for part in parts {
        if unicode::is_combining_mark(part) {
            continue;
        }
        if let Some(s) = chain(part, opts, depth + 1) {
            out.push_str(&s);
            any = true;
        }
    }
    any.then_some(out)
}

pub(crate) fn terminal(ch: char, opts: &RomanizeOptions) -> String {
    match opts.fallback_policy {
        FallbackPolicy::Drop => String::new(),
        FallbackPolicy::Placeholder(p) if !unicode::is_combining_mark(ch) => p.to_string(),
        FallbackPolicy::Placeholder(_) => String::new(),
    }
}

pub(crate) fn name_token(name: &str) -> Option<String> {
    let words: Vec<&str> = name.split(' ').collect();
    let marker = words.iter().position(|w| MARKERS.contains(w))?;
    let tail = &words[marker + 1..];
    let tail = match tail.iter().position(|&w| w == "WITH") {
        Some(i) => &tail[..i],
        None => tail,
    };
    let last = tail.last()?;
    if MARKERS.contains(last) || last.is_empty() {
        return None;
    }
    last.chars()
        .all(|c| c.is_ascii_alphanumeric() || c == '-')
        .then(|| last.to_ascii_lowercase())
}
