//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;
use romankit::tokenizer::{TokenCounts, TokenizerConfig, TokenizerModel, DEFAULT_SPECIALS};

pub const PREFIX: &str = "##";

/// Small alphabet mixing ASCII, multi-byte letters and the prefix character.
pub const ALPHABET: &[char] = &['a', 'b', 'c', 'd', 'e', 'é', 'ж', 'क', '#', '1'];

pub fn random_word(rng: &mut impl Rng, max_len: usize) -> String {
    let n = rng.gen_range(1..=max_len);
    (0..n).map(|_| *ALPHABET.choose(rng).unwrap()).collect()
}

/// A random vocabulary over [`ALPHABET`]: specials, then distinct initial and
/// continuation tokens of one to four characters.
pub fn random_model(rng: &mut impl Rng, size: usize) -> TokenizerModel {
    let mut tokens: Vec<String> = DEFAULT_SPECIALS.iter().map(|s| s.to_string()).collect();
    let mut seen: HashSet<String> = tokens.iter().cloned().collect();
    while tokens.len() < DEFAULT_SPECIALS.len() + size {
        let body = random_word(rng, 4);
        let t = if rng.gen_bool(0.5) { format!("{PREFIX}{body}") } else { body };
        if t != PREFIX && seen.insert(t.clone()) {
            tokens.push(t);
        }
    }
    TokenizerModel::from_tokens(tokens, TokenizerConfig::default()).unwrap()
}

/// WordPiece encoding straight from its definition: repeatedly take the
/// longest vocabulary piece at the current position (prefixed after the
/// first), or return `None` when some position has no piece.
pub fn reference_encode(model: &TokenizerModel, word: &str) -> Option<Vec<String>> {
    let chars: Vec<char> = word.chars().collect();
    if chars.len() > model.config().max_word_chars {
        return None;
    }
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let mut found = None;
        for j in (i + 1..=chars.len()).rev() {
            let piece: String = chars[i..j].iter().collect();
            let token = if i == 0 {
                if piece.starts_with(PREFIX) {
                    continue;
                }
                piece
            } else {
                format!("{PREFIX}{piece}")
            };
            if let Some(id) = model.id(&token) {
                if !model.is_special_id(id) {
                    found = Some((j, token));
                    break;
                }
            }
        }
        let (j, token) = found?;
        out.push(token);
        i = j;
    }
    Some(out)
}

/// Token counts by walking every word with [`reference_encode`].
pub fn tally(model: &TokenizerModel, corpus: &[String]) -> TokenCounts {
    let mut c = TokenCounts::default();
    for sentence in corpus {
        for word in sentence.split_whitespace() {
            c.total_words += 1;
            match reference_encode(model, word) {
                Some(pieces) => {
                    c.total_subwords += pieces.len() as u64;
                    if pieces.len() >= 2 {
                        c.words_split += 1;
                    }
                }
                None => {
                    c.total_subwords += 1;
                    c.unk_count += 1;
                }
            }
        }
    }
    c
}

/// Quadratic WordPiece trainer: recount every pair from scratch each step.
pub fn naive_train(corpus: &[String], vocab_size: usize) -> Vec<String> {
    let config = TokenizerConfig::default();
    let specials: HashSet<&str> = config.special_tokens.iter().map(String::as_str).collect();
    let mut counts: BTreeMap<&str, u64> = BTreeMap::new();
    for s in corpus {
        for w in s.split_whitespace() {
            *counts.entry(w).or_default() += 1;
        }
    }
    let mut words: Vec<(Vec<String>, u64)> = Vec::new();
    for (w, c) in counts {
        if w.chars().count() > config.max_word_chars {
            continue;
        }
        let pieces: Vec<String> = w
            .chars()
            .enumerate()
            .map(|(i, ch)| if i == 0 { ch.to_string() } else { format!("{PREFIX}{ch}") })
            .collect();
        if pieces[0].starts_with(PREFIX) || pieces.iter().any(|p| specials.contains(p.as_str())) {
            continue;
        }
        words.push((pieces, c));
    }
    let mut units: Vec<String> = words.iter().flat_map(|(p, _)| p.clone()).collect();
    units.sort();
    units.dedup();
    let mut vocab: Vec<String> = config.special_tokens.clone();
    vocab.extend(units);
    let mut seen: HashSet<String> = vocab.iter().cloned().collect();

    while vocab.len() < vocab_size {
        let mut sym: BTreeMap<&str, u64> = BTreeMap::new();
        let mut pairs: BTreeMap<(&str, &str), u64> = BTreeMap::new();
        for (p, c) in &words {
            for s in p {
                *sym.entry(s).or_default() += c;
            }
            for w in p.windows(2) {
                *pairs.entry((&w[0], &w[1])).or_default() += c;
            }
        }
        let mut best: Option<(u64, u128, String, &str, &str)> = None;
        for (&(a, b), &f) in &pairs {
            let merged = format!("{a}{}", &b[PREFIX.len()..]);
            if (!a.starts_with(PREFIX) && merged.starts_with(PREFIX)) || specials.contains(merged.as_str()) {
                continue;
            }
            let den = sym[a] as u128 * sym[b] as u128;
            let better = match &best {
                None => true,
                Some((bf, bden, bm, ba, bb)) => {
                    let (l, r) = (f as u128 * bden, *bf as u128 * den);
                    l > r || l == r && (&merged, a, b) < (bm, ba, bb)
                }
            };
            if better {
                best = Some((f, den, merged, a, b));
            }
        }
        let Some((_, _, merged, a, b)) = best else {
            break;
        };
        let (a, b) = (a.to_owned(), b.to_owned());
        for (p, _) in &mut words {
            let mut next = Vec::with_capacity(p.len());
            let mut i = 0;
            while i < p.len() {
                if i + 1 < p.len() && p[i] == a && p[i + 1] == b {
                    next.push(merged.clone());
                    i += 2;
                } else {
                    next.push(p[i].clone());
                    i += 1;
                }
            }
            *p = next;
        }
        if seen.insert(merged.clone()) {
            vocab.push(merged);
        }
    }
    vocab
}

/// Random sentences over a small word pool so merges have something to find.
pub fn random_corpus(rng: &mut impl Rng, max_words: usize) -> Vec<String> {
    let pool: Vec<String> = (0..rng.gen_range(3..40)).map(|_| random_word(rng, 8)).collect();
    let total = rng.gen_range(1..=max_words);
    let mut sentences = Vec::new();
    let mut left = total;
    while left > 0 {
        let n = rng.gen_range(1..=left.min(12));
        left -= n;
        let words: Vec<&str> = (0..n).map(|_| pool.choose(rng).unwrap().as_str()).collect();
        sentences.push(words.join(" "));
    }
    sentences
}
