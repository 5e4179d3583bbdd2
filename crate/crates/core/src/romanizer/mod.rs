//! Universal UTF-8 to Latin rewriting.
//!
//! Input is split into whitespace and non-whitespace runs. Whitespace is
//! copied verbatim. Each other run is compatibility-decomposed and walked
//! left to right: ASCII passes through, otherwise the longest matching rule
//! fires, otherwise the [fallback chain](fallback_romanize) decides. Zero-width
//! joiners are dropped unless a rule consumes them.

mod abugida;
mod defaults;
mod fallback;
mod rules;

use crate::error::{Error, Result};
use crate::unicode::{self, is_joiner};

pub use defaults::{default_rules, default_tables, load_table_dir, DEFAULT_PROVENANCE};
pub use fallback::{fallback_romanize, fallback_romanize_with};
pub use rules::{
    load_rules, load_rules_file, RomanizationRule, RuleLocation, RuleSet, RuleSetBuilder,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FallbackPolicy {
    /// Codepoints the chain cannot romanize produce nothing.
    Drop,
    /// Codepoints the chain cannot romanize produce this character.
    Placeholder(char),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RomanizeOptions {
    pub fallback_policy: FallbackPolicy,
    pub lowercase_output: bool,
    pub map_digits: bool,
}

impl Default for RomanizeOptions {
    fn default() -> Self {
        RomanizeOptions {
            fallback_policy: FallbackPolicy::Drop,
            lowercase_output: true,
            map_digits: true,
        }
    }
}

impl RomanizeOptions {
    pub fn with_placeholder(placeholder: char) -> Result<Self> {
        let opts = RomanizeOptions {
            fallback_policy: FallbackPolicy::Placeholder(placeholder),
            ..Default::default()
        };
        opts.validate()?;
        Ok(opts)
    }

    pub fn validate(&self) -> Result<()> {
        match self.fallback_policy {
            FallbackPolicy::Placeholder(p) if !rules::is_printable_ascii(p) => Err(Error::Contract(
                format!("placeholder {p:?} is not a printable ASCII character"),
            )),
            _ => Ok(()),
        }
    }
}

/// Romanize raw bytes, rejecting invalid UTF-8.
pub fn romanize_bytes(bytes: &[u8], rules: &RuleSet, opts: &RomanizeOptions) -> Result<String> {
    Ok(romanize(unicode::decode_utf8(bytes)?, rules, opts))
}

pub fn romanize(text: &str, rules: &RuleSet, opts: &RomanizeOptions) -> String {
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    while !rest.is_empty() {
        let split = rest
            .find(|c: char| c.is_whitespace() != rest.starts_with(char::is_whitespace))
            .unwrap_or(rest.len());
        let (run, tail) = rest.split_at(split);
        if run.starts_with(char::is_whitespace) {
            out.push_str(run);
        } else {
            romanize_run(run, rules, opts, &mut out);
        }
        rest = tail;
    }
    out
}

fn romanize_run(run: &str, rules: &RuleSet, opts: &RomanizeOptions, out: &mut String) {
    let chars: Vec<char> = unicode::compatibility_decompose(run).collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_ascii() {
            if rules::is_printable_ascii(c) || c.is_ascii_whitespace() {
                out.push(c);
            } else {
                out.push_str(&fallback::terminal(c, opts));
            }
            i += 1;
            continue;
        }
        let (consumed, mut piece) = match rules.longest_match(&chars[i..]) {
            Some((n, rule)) => (n, rule.target.clone()),
            None if is_joiner(c) => (1, String::new()),
            None => (
                1,
                fallback::chain(c, opts, 0).unwrap_or_else(|| fallback::terminal(c, opts)),
            ),
        };
        adjust_inherent_vowel(&chars, i, i + consumed, &mut piece);
        if opts.lowercase_output {
            piece.make_ascii_lowercase();
        }
        out.push_str(&piece);
        i += consumed;
    }
}

/// Strip the inherent vowel from a consonant's romanization where the
/// script's orthography silences it.
fn adjust_inherent_vowel(chars: &[char], start: usize, end: usize, piece: &mut String) {
    let last = chars[end - 1];
    let Some(profile) = abugida::profile_for(last) else {
        return;
    };
    if !profile.is_consonant(last) || !piece.ends_with(abugida::INHERENT_VOWEL) {
        return;
    }
    let next = chars[end..]
        .iter()
        .copied()
        .find(|&c| !is_joiner(c) && !profile.is_transparent(c));
    let silent = match next {
        Some(c) if profile.is_dependent(c) => true,
        Some(c) if c.is_alphabetic() || unicode::is_combining_mark(c) => false,
        _ => profile.final_deletion && has_letter_before(chars, start, profile),
    };
    if silent {
        piece.pop();
    }
}

fn has_letter_before(chars: &[char], start: usize, profile: &abugida::Profile) -> bool {
    chars[..start]
        .iter()
        .rev()
        .take_while(|&&c| c.is_alphabetic() || unicode::is_combining_mark(c) || is_joiner(c))
        .any(|&c| c.is_alphabetic() && abugida::profile_for(c).is_some_and(|p| std::ptr::eq(p, profile)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn empty() -> RuleSet {
        RuleSet::empty("empty")
    }

    fn rom(text: &str, rules: &RuleSet) -> String {
        romanize(text, rules, &RomanizeOptions::default())
    }

    #[test]
    fn ascii_fixed_point() {
        assert_eq!(rom("hello, world 42", &empty()), "hello, world 42");
        assert_eq!(rom("Hello", &empty()), "Hello");
    }

    #[test]
    fn whitespace_runs_preserved() {
        let text = "  \u{0905}\t\t\u{0915}\n\n\u{3000}x ";
        assert_eq!(rom(text, &empty()), "  a\t\tka\n\n\u{3000}x ");
    }

    #[test]
    fn inherent_vowel_alone_and_in_clusters() {
        let rules = empty();
        assert_eq!(rom("\u{091C}", &rules), "ja");
        assert_eq!(rom("\u{091C}\u{093F}", &rules), "ji");
        // word-final consonant after another letter loses the inherent vowel
        assert_eq!(rom("\u{0915}\u{092E}", &rules), "kam");
        assert_eq!(rom("\u{0915}\u{092E}.", &rules), "kam.");
        // Khmer keeps it
        assert_eq!(rom("\u{1780}\u{1780}", &rules), "kaka");
    }

    #[test]
    fn rule_beats_fallback_and_longest_wins() {
        let rules = RuleSet::parse("\u{0915}\tk-a\n\u{0915}\u{094D}\u{0937}\tksha\n", "t").unwrap();
        assert_eq!(rom("\u{0915}", &rules), "k-a");
        assert_eq!(rom("\u{0915}\u{094D}\u{0937}\u{093F}", &rules), "kshi");
    }

    #[test]
    fn joiners_dropped_unless_matched() {
        assert_eq!(rom("\u{10D0}\u{200D}\u{10D0}", &empty()), "anan");
        let rules = RuleSet::parse("\u{10D0}\u{200D}\tX\n", "t").unwrap();
        assert_eq!(rom("\u{10D0}\u{200D}\u{10D0}", &rules), "xan");
    }

    #[test]
    fn lowercase_option_applies_to_generated_text_only() {
        let rules = RuleSet::parse("\u{0414}\tD\n", "t").unwrap();
        assert_eq!(rom("\u{0414}A", &rules), "dA");
        let opts = RomanizeOptions {
            lowercase_output: false,
            ..Default::default()
        };
        assert_eq!(romanize("\u{0414}A", &rules, &opts), "DA");
    }

    #[test]
    fn control_characters_follow_terminal_policy() {
        assert_eq!(rom("a\u{0001}b", &empty()), "ab");
        let opts = RomanizeOptions::with_placeholder('_').unwrap();
        assert_eq!(romanize("a\u{0001}b\u{1F600}", &empty(), &opts), "a_b_");
    }

    #[test]
    fn placeholder_must_be_printable_ascii() {
        assert!(RomanizeOptions::with_placeholder('\u{00E9}').is_err());
        assert!(RomanizeOptions::with_placeholder('\n').is_err());
    }

    #[test]
    fn scoped_rule_does_not_fire_outside_scope() {
        let rules = RuleSet::parse("\u{0627}\tZ\tscope=Cyrillic\n\u{0964}\t.\tscope=Khmer\n", "t").unwrap();
        assert_eq!(rom("\u{0627}", &rules), "alef");
        assert_eq!(rom("\u{0964}", &rules), ".");
    }

    #[test]
    fn default_tables_reproduce_reference_words() {
        let rules = default_rules();
        for (src, want) in [
            ("जॉर्जियन भासा", "jorjiyan bhaasaa"),
            ("ග්‍රහලෝක", "grahalooka"),
            ("ايران", "ayran"),
            ("សេដ្ឋកិច្ច", "sedtthakicca"),
        ] {
            assert_eq!(rom(src, rules), want, "{src}");
        }
    }

    #[test]
    fn invalid_utf8_is_an_encoding_error() {
        let err = romanize_bytes(b"ok\xc3", &empty(), &RomanizeOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Encoding { offset: 2 }));
    }
}
