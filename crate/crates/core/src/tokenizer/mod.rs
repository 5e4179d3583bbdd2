//! WordPiece vocabularies: training, greedy longest-prefix encoding and the
//! `.vocab` file format.

mod io;
mod train;

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) use io::read_tokens;
pub use io::{sidecar_path, VocabMetadata};
pub use train::{train_wordpiece, TrainConfig, DEFAULT_VOCAB_SIZE};

pub const DEFAULT_UNK: &str = "[UNK]";
pub const DEFAULT_PREFIX: &str = "##";
pub const DEFAULT_MAX_WORD_CHARS: usize = 100;
pub const DEFAULT_SPECIALS: [&str; 5] = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenizerConfig {
    pub unk_token: String,
    pub continuation_prefix: String,
    pub max_word_chars: usize,
    /// Must contain `unk_token`.
    pub special_tokens: Vec<String>,
}

impl Default for TokenizerConfig {
    fn default() -> Self {
        TokenizerConfig {
            unk_token: DEFAULT_UNK.to_owned(),
            continuation_prefix: DEFAULT_PREFIX.to_owned(),
            max_word_chars: DEFAULT_MAX_WORD_CHARS,
            special_tokens: DEFAULT_SPECIALS.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl TokenizerConfig {
    pub fn validate(&self) -> Result<()> {
        let contract = |m: String| Err(Error::Contract(m));
        if self.continuation_prefix.is_empty() || self.continuation_prefix.contains(char::is_whitespace) {
            return contract(format!(
                "continuation prefix {:?} must be non-empty and whitespace-free",
                self.continuation_prefix
            ));
        }
        if self.max_word_chars == 0 {
            return contract("max_word_chars must be at least 1".into());
        }
        for (i, s) in self.special_tokens.iter().enumerate() {
            if s.is_empty() || s.contains(char::is_whitespace) {
                return contract(format!("special token {s:?} must be non-empty and whitespace-free"));
            }
            if self.special_tokens[..i].contains(s) {
                return contract(format!("special token {s:?} is listed twice"));
            }
        }
        if !self.special_tokens.contains(&self.unk_token) {
            return contract(format!("unk token {:?} is not among the special tokens", self.unk_token));
        }
        Ok(())
    }

    pub(crate) fn is_special(&self, token: &str) -> bool {
        self.special_tokens.iter().any(|s| s == token)
    }
}

/// An immutable WordPiece vocabulary. Ids are dense and equal to the
/// token's position.
#[derive(Clone, Debug)]
pub struct TokenizerModel {
    config: TokenizerConfig,
    vocab: Vec<String>,
    ids: HashMap<String, u32>,
    initial: HashMap<String, u32>,
    continuation: HashMap<String, u32>,
    max_initial_chars: usize,
    max_continuation_chars: usize,
    unk_id: u32,
    corpus_digest: Option<String>,
}

impl PartialEq for TokenizerModel {
    fn eq(&self, other: &Self) -> bool {
        self.config == other.config && self.vocab == other.vocab && self.corpus_digest == other.corpus_digest
    }
}

impl Eq for TokenizerModel {}

impl TokenizerModel {
    /// Build a model from tokens in id order. Errors name the 1-based line
    /// (id + 1) of the offending token.
    pub fn from_tokens(tokens: Vec<String>, config: TokenizerConfig) -> Result<Self> {
        config.validate()?;
        let prefix = config.continuation_prefix.as_str();
        let mut ids = HashMap::with_capacity(tokens.len());
        let mut initial = HashMap::new();
        let mut continuation = HashMap::new();
        let (mut max_initial_chars, mut max_continuation_chars) = (0, 0);
        for (id, token) in tokens.iter().enumerate() {
            let line = id + 1;
            let id = u32::try_from(id).map_err(|_| Error::VocabFormat {
                line,
                message: "vocabulary exceeds u32 ids".into(),
            })?;
            if let Some(&first) = ids.get(token) {
                return Err(Error::DuplicateToken {
                    token: token.clone(),
                    first: first as usize + 1,
                    second: line,
                });
            }
            ids.insert(token.clone(), id);
            if config.is_special(token) {
                continue;
            }
            if token.is_empty() || token.contains(char::is_whitespace) {
                return Err(Error::VocabFormat {
                    line,
                    message: format!("token {token:?} is empty or contains whitespace"),
                });
            }
            match token.strip_prefix(prefix) {
                Some("") => {
                    return Err(Error::VocabFormat {
                        line,
                        message: format!("continuation token {token:?} has nothing after the prefix"),
                    })
                }
                Some(rest) => {
                    max_continuation_chars = max_continuation_chars.max(rest.chars().count());
                    continuation.insert(rest.to_owned(), id);
                }
                None => {
                    max_initial_chars = max_initial_chars.max(token.chars().count());
                    initial.insert(token.clone(), id);
                }
            }
        }
        for special in &config.special_tokens {
            if !ids.contains_key(special) {
                return Err(Error::VocabFormat {
                    line: tokens.len() + 1,
                    message: format!("special token {special:?} is missing"),
                });
            }
        }
        let unk_id = ids[&config.unk_token];
        Ok(TokenizerModel {
            config,
            vocab: tokens,
            ids,
            initial,
            continuation,
            max_initial_chars,
            max_continuation_chars,
            unk_id,
            corpus_digest: None,
        })
    }

    pub fn with_corpus_digest(mut self, digest: Option<String>) -> Self {
        self.corpus_digest = digest;
        self
    }

    pub fn config(&self) -> &TokenizerConfig {
        &self.config
    }

    pub fn len(&self) -> usize {
        self.vocab.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vocab.is_empty()
    }

    pub fn tokens(&self) -> &[String] {
        &self.vocab
    }

    pub fn token(&self, id: u32) -> Option<&str> {
        self.vocab.get(id as usize).map(String::as_str)
    }

    pub fn id(&self, token: &str) -> Option<u32> {
        self.ids.get(token).copied()
    }

    pub fn unk_id(&self) -> u32 {
        self.unk_id
    }

    pub fn is_special_id(&self, id: u32) -> bool {
        self.token(id).is_some_and(|t| self.config.is_special(t))
    }

    pub fn corpus_digest(&self) -> Option<&str> {
        self.corpus_digest.as_deref()
    }

    /// Greedy longest-prefix segmentation; false when the word must become
    /// the unknown token.
    fn segment(&self, word: &str, out: &mut Vec<u32>) -> bool {
        let mut bounds: Vec<usize> = word.char_indices().map(|(i, _)| i).collect();
        let n = bounds.len();
        if n > self.config.max_word_chars {
            return false;
        }
        bounds.push(word.len());
        let mut start = 0;
        while start < n {
            let (map, limit) = if start == 0 {
                (&self.initial, self.max_initial_chars)
            } else {
                (&self.continuation, self.max_continuation_chars)
            };
            let hit = (start + 1..=n.min(start + limit))
                .rev()
                .find_map(|end| map.get(&word[bounds[start]..bounds[end]]).map(|&id| (end, id)));
            match hit {
                Some((end, id)) => {
                    out.push(id);
                    start = end;
                }
                None => return false,
            }
        }
        true
    }

    /// Token ids for one whitespace-free word.
    pub fn encode_word_ids(&self, word: &str) -> Vec<u32> {
        let mut out = Vec::new();
        if !self.segment(word, &mut out) {
            out.clear();
            out.push(self.unk_id);
        }
        out
    }

    pub fn encode_word(&self, word: &str) -> Vec<&str> {
        self.encode_word_ids(word)
            .into_iter()
            .map(|id| self.vocab[id as usize].as_str())
            .collect()
    }

    /// Whitespace-split `text` and encode every word.
    pub fn encode(&self, text: &str) -> TokenizationResult {
        let mut counts = TokenCounts::default();
        let words = text
            .split_whitespace()
            .map(|w| {
                let ids = self.encode_word_ids(w);
                counts.add_word(&ids, self.unk_id);
                ids
            })
            .collect();
        TokenizationResult { words, counts }
    }

    pub fn encode_bytes(&self, bytes: &[u8]) -> Result<TokenizationResult> {
        Ok(self.encode(crate::unicode::decode_utf8(bytes)?))
    }

    pub fn count(&self, text: &str) -> TokenCounts {
        let mut counts = TokenCounts::default();
        let mut buf = Vec::new();
        for w in text.split_whitespace() {
            buf.clear();
            if !self.segment(w, &mut buf) {
                buf.clear();
                buf.push(self.unk_id);
            }
            counts.add_word(&buf, self.unk_id);
        }
        counts
    }

    /// Counts over many sentences, sharded across the current rayon pool.
    pub fn count_corpus<S: AsRef<str> + Sync>(&self, sentences: &[S]) -> TokenCounts {
        sentences
            .par_iter()
            .map(|s| self.count(s.as_ref()))
            .reduce(TokenCounts::default, |a, b| a + b)
    }

    /// Concatenate tokens, stripping the continuation prefix from all but the first.
    pub fn detokenize_word(&self, ids: &[u32]) -> String {
        let prefix = &self.config.continuation_prefix;
        let mut out = String::new();
        for (i, &id) in ids.iter().enumerate() {
            let t = &self.vocab[id as usize];
            out.push_str(if i == 0 { t } else { t.strip_prefix(prefix.as_str()).unwrap_or(t) });
        }
        out
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TokenCounts {
    pub total_words: u64,
    pub total_subwords: u64,
    pub unk_count: u64,
    /// Words that produced two or more subwords.
    pub words_split: u64,
}

impl TokenCounts {
    fn add_word(&mut self, ids: &[u32], unk_id: u32) {
        self.total_words += 1;
        self.total_subwords += ids.len() as u64;
        self.unk_count += ids.iter().filter(|&&id| id == unk_id).count() as u64;
        if ids.len() >= 2 {
            self.words_split += 1;
        }
    }
}

impl std::ops::Add for TokenCounts {
    type Output = TokenCounts;

    fn add(self, o: TokenCounts) -> TokenCounts {
        TokenCounts {
            total_words: self.total_words + o.total_words,
            total_subwords: self.total_subwords + o.total_subwords,
            unk_count: self.unk_count + o.unk_count,
            words_split: self.words_split + o.words_split,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TokenizationResult {
    /// Token ids per word, in text order.
    pub words: Vec<Vec<u32>>,
    pub counts: TokenCounts,
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn model(tokens: &[&str]) -> TokenizerModel {
        let mut all: Vec<String> = DEFAULT_SPECIALS.iter().map(|s| s.to_string()).collect();
        all.extend(tokens.iter().map(|s| s.to_string()));
        TokenizerModel::from_tokens(all, TokenizerConfig::default()).unwrap()
    }

    #[test]
    fn whole_word_hit() {
        let m = model(&["hello", "h", "##ello"]);
        assert_eq!(m.encode_word("hello"), ["hello"]);
    }

    #[test]
    fn forced_split() {
        let m = model(&["a", "##b", "##c"]);
        assert_eq!(m.encode_word("abc"), ["a", "##b", "##c"]);
    }

    #[test]
    fn failure_anywhere_gives_unk() {
        let m = model(&["a", "##b"]);
        assert_eq!(m.encode_word("abz"), ["[UNK]"]);
        assert_eq!(m.encode_word("ba"), ["[UNK]"]);
    }

    #[test]
    fn greedy_not_optimal() {
        // longest-prefix first takes "ab" and then fails on "##cd"
        let m = model(&["ab", "a", "##bcd", "##c"]);
        assert_eq!(m.encode_word("abcd"), ["[UNK]"]);
        assert_eq!(m.encode_word("abc"), ["ab", "##c"]);
    }

    #[test]
    fn long_words_are_unk() {
        let m = model(&["a", "##a"]);
        let long = "a".repeat(DEFAULT_MAX_WORD_CHARS + 1);
        assert_eq!(m.encode_word(&long), ["[UNK]"]);
        assert_eq!(m.encode_word(&long[1..]).len(), DEFAULT_MAX_WORD_CHARS);
    }

    #[test]
    fn specials_are_not_matched_inside_words() {
        let m = model(&["[", "##C", "##L", "##S", "##]"]);
        assert_eq!(m.encode_word("[CLS]"), ["[", "##C", "##L", "##S", "##]"]);
    }

    #[test]
    fn encode_counts() {
        let m = model(&["aa", "bb", "a", "##b"]);
        assert_eq!(m.encode("").counts, TokenCounts::default());
        let r = m.encode(" aa\tab  zz ");
        assert_eq!(r.words, vec![vec![5], vec![7, 8], vec![1]]);
        assert_eq!(
            r.counts,
            TokenCounts {
                total_words: 3,
                total_subwords: 4,
                unk_count: 1,
                words_split: 1
            }
        );
        assert_eq!(m.count(" aa\tab  zz "), r.counts);
        assert_eq!(m.count_corpus(&[" aa\tab", " zz "]), r.counts);
    }

    #[test]
    fn all_unk_corpus() {
        let m = model(&["a"]);
        let c = m.encode("x yy zzz").counts;
        assert_eq!((c.unk_count, c.total_subwords, c.total_words), (3, 3, 3));
    }

    #[test]
    fn invalid_vocabularies() {
        let cfg = TokenizerConfig::default;
        let toks = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let err = TokenizerModel::from_tokens(toks(&["[UNK]", "a", "b", "a"]), TokenizerConfig {
            special_tokens: vec!["[UNK]".into()],
            ..cfg()
        })
        .unwrap_err();
        assert!(matches!(err, Error::DuplicateToken { first: 2, second: 4, .. }));
        let err = TokenizerModel::from_tokens(toks(&["a"]), cfg()).unwrap_err();
        assert!(matches!(err, Error::VocabFormat { .. }), "{err}");
        let only_unk = || TokenizerConfig {
            special_tokens: vec!["[UNK]".into()],
            ..cfg()
        };
        assert!(TokenizerModel::from_tokens(toks(&["[UNK]", "##"]), only_unk()).is_err());
        assert!(TokenizerModel::from_tokens(toks(&["[UNK]", "a b"]), only_unk()).is_err());
        assert!(TokenizerModel::from_tokens(toks(&["[UNK]", "##a"]), only_unk()).is_ok());
    }

    #[test]
    fn config_requires_unk_among_specials() {
        let cfg = TokenizerConfig {
            special_tokens: vec!["[PAD]".into()],
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn detokenize_strips_prefix() {
        let m = model(&["a", "##b", "##c"]);
        assert_eq!(m.detokenize_word(&m.encode_word_ids("abc")), "abc");
    }
}
