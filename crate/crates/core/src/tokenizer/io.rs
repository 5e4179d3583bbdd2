//! `.vocab` files: one token per line, line number minus one is the id. A
//! JSON sidecar at `<path>.json` carries the remaining configuration.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{TokenizerConfig, TokenizerModel, DEFAULT_MAX_WORD_CHARS, DEFAULT_PREFIX, DEFAULT_UNK};
use crate::digest;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VocabMetadata {
    pub unk_token: String,
    pub continuation_prefix: String,
    pub max_word_chars: usize,
    pub special_tokens: Vec<String>,
    pub vocab_size: usize,
    pub corpus_digest: Option<String>,
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = OsString::from(path.as_os_str());
    s.push(".json");
    PathBuf::from(s)
}

/// Split vocabulary text into tokens; a trailing newline is optional and
/// `\r\n` line endings are accepted.
fn parse_lines(text: &str) -> Result<Vec<String>> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split('\n')
        .enumerate()
        .map(|(i, line)| {
            let token = line.strip_suffix('\r').unwrap_or(line);
            if token.is_empty() {
                Err(Error::VocabFormat {
                    line: i + 1,
                    message: "empty line".into(),
                })
            } else {
                Ok(token.to_owned())
            }
        })
        .collect()
}

pub(crate) fn read_tokens(path: &Path) -> Result<Vec<String>> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    parse_lines(crate::unicode::decode_utf8(&bytes)?)
}

/// Configuration for vocab files without a sidecar: bracketed tokens such
/// as `[CLS]` are special, everything else takes the defaults.
fn inferred_config(tokens: &[String]) -> TokenizerConfig {
    TokenizerConfig {
        unk_token: DEFAULT_UNK.to_owned(),
        continuation_prefix: DEFAULT_PREFIX.to_owned(),
        max_word_chars: DEFAULT_MAX_WORD_CHARS,
        special_tokens: tokens
            .iter()
            .filter(|t| t.len() > 2 && t.starts_with('[') && t.ends_with(']'))
            .cloned()
            .collect(),
    }
}

impl TokenizerModel {
    pub fn metadata(&self) -> VocabMetadata {
        VocabMetadata {
            unk_token: self.config.unk_token.clone(),
            continuation_prefix: self.config.continuation_prefix.clone(),
            max_word_chars: self.config.max_word_chars,
            special_tokens: self.config.special_tokens.clone(),
            vocab_size: self.vocab.len(),
            corpus_digest: self.corpus_digest.clone(),
        }
    }

    pub fn vocab_text(&self) -> String {
        let mut out = String::new();
        for t in &self.vocab {
            out.push_str(t);
            out.push('\n');
        }
        out
    }

    pub fn metadata_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.metadata()).expect("metadata serializes");
        s.push('\n');
        s
    }

    /// Digest of the vocabulary file and its sidecar.
    pub fn digest(&self) -> String {
        let mut h = digest::Hasher::new();
        h.update(self.vocab_text());
        h.update(self.metadata_json());
        h.finish()
    }

    /// Write `path` and its `<path>.json` sidecar.
    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.vocab_text()).map_err(|e| Error::io(path, e))?;
        let side = sidecar_path(path);
        std::fs::write(&side, self.metadata_json()).map_err(|e| Error::io(&side, e))
    }

    /// Read a vocab file, using its sidecar when present.
    pub fn load(path: &Path) -> Result<Self> {
        let tokens = read_tokens(path)?;
        let side = sidecar_path(path);
        if !side.exists() {
            let config = inferred_config(&tokens);
            return TokenizerModel::from_tokens(tokens, config);
        }
        let bytes = std::fs::read(&side).map_err(|e| Error::io(&side, e))?;
        let meta: VocabMetadata = serde_json::from_slice(&bytes)?;
        if meta.vocab_size != tokens.len() {
            return Err(Error::VocabFormat {
                line: tokens.len(),
                message: format!(
                    "sidecar declares {} tokens but the file has {}",
                    meta.vocab_size,
                    tokens.len()
                ),
            });
        }
        let config = TokenizerConfig {
            unk_token: meta.unk_token,
            continuation_prefix: meta.continuation_prefix,
            max_word_chars: meta.max_word_chars,
            special_tokens: meta.special_tokens,
        };
        Ok(TokenizerModel::from_tokens(tokens, config)?.with_corpus_digest(meta.corpus_digest))
    }
}
