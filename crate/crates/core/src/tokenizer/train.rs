use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;

use super::{TokenizerConfig, TokenizerModel};
use crate::digest;
use crate::error::{Error, Result};

pub const DEFAULT_VOCAB_SIZE: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrainConfig {
    pub vocab_size: usize,
    pub tokenizer: TokenizerConfig,
    /// Threads used for word counting; 0 uses the ambient rayon pool.
    pub workers: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            vocab_size: DEFAULT_VOCAB_SIZE,
            tokenizer: TokenizerConfig::default(),
            workers: 0,
        }
    }
}

/// Train a WordPiece vocabulary by likelihood-scored pair merging.
///
/// Words are whitespace-delimited. Each starts as its first character
/// followed by prefixed continuation characters. The pair with the highest
/// `freq(ab) / (freq(a) * freq(b))` is merged, ties going to the
/// lexicographically smallest merged string, until the vocabulary reaches
/// `vocab_size` or no pair remains. Words longer than `max_word_chars` are
/// ignored, as are merges that would produce a special token or a
/// word-initial token starting with the continuation prefix.
pub fn train_wordpiece<S: AsRef<str> + Sync>(corpus: &[S], config: &TrainConfig) -> Result<TokenizerModel> {
    config.tokenizer.validate()?;
    let counts = if config.workers == 0 {
        count_words(corpus)
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::Contract(format!("cannot start {} workers: {e}", config.workers)))?
            .install(|| count_words(corpus))
    };
    let mut words: Vec<(&str, u64)> = counts.into_iter().collect();
    words.sort_unstable();

    let mut trainer = Trainer::new(&config.tokenizer, &words);
    if trainer.words.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let minimum = config.tokenizer.special_tokens.len() + trainer.symbols.len();
    if config.vocab_size < minimum {
        return Err(Error::VocabTooSmall {
            requested: config.vocab_size,
            minimum,
        });
    }
    let mut vocab: Vec<String> = config.tokenizer.special_tokens.clone();
    vocab.extend(trainer.symbols.iter().cloned());
    let mut seen: HashSet<String> = vocab.iter().cloned().collect();
    while vocab.len() < config.vocab_size {
        let Some(best) = trainer.queue.pop_first() else {
            break;
        };
        let merged = trainer.merge(best);
        if seen.insert(merged.clone()) {
            vocab.push(merged);
        }
    }
    Ok(TokenizerModel::from_tokens(vocab, config.tokenizer.clone())?
        .with_corpus_digest(Some(digest::sentences(corpus))))
}

fn count_words<S: AsRef<str> + Sync>(corpus: &[S]) -> HashMap<&str, u64> {
    corpus
        .par_iter()
        .fold(HashMap::new, |mut m, s| {
            for w in s.as_ref().split_whitespace() {
                *m.entry(w).or_insert(0) += 1;
            }
            m
        })
        .reduce(HashMap::new, |a, b| {
            if a.len() >= b.len() {
                merge_counts(a, b)
            } else {
                merge_counts(b, a)
            }
        })
}

fn merge_counts<'a>(mut into: HashMap<&'a str, u64>, from: HashMap<&'a str, u64>) -> HashMap<&'a str, u64> {
    for (w, c) in from {
        *into.entry(w).or_insert(0) += c;
    }
    into
}

type Pair = (u32, u32);

/// A merge candidate; `Ord` puts the best candidate first.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Candidate {
    pair: Pair,
    pair_freq: u64,
    left_freq: u64,
    right_freq: u64,
    merged: String,
    left: String,
    right: String,
}

/// `a * b * c` as a 192-bit value `(high, low)`.
fn mul3(a: u64, b: u64, c: u64) -> (u128, u64) {
    let ab = a as u128 * b as u128;
    let lo = (ab as u64) as u128 * c as u128;
    let hi = (ab >> 64) * c as u128 + (lo >> 64);
    (hi, lo as u64)
}

impl Ord for Candidate {
    fn cmp(&self, o: &Self) -> Ordering {
        // self.score > o.score  <=>  pf_s * fl_o * fr_o > pf_o * fl_s * fr_s
        let lhs = mul3(self.pair_freq, o.left_freq, o.right_freq);
        let rhs = mul3(o.pair_freq, self.left_freq, self.right_freq);
        rhs.cmp(&lhs)
            .then_with(|| self.merged.cmp(&o.merged))
            .then_with(|| self.left.cmp(&o.left))
            .then_with(|| self.right.cmp(&o.right))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

struct Trainer<'c> {
    config: &'c TokenizerConfig,
    /// Initial units, sorted; merged symbols are appended after them.
    symbols: Vec<String>,
    symbol_ids: HashMap<String, u32>,
    symbol_freq: Vec<u64>,
    words: Vec<(Vec<u32>, u64)>,
    pair_freq: HashMap<Pair, u64>,
    /// Words that may contain the pair; may hold stale or repeated indices.
    pair_words: HashMap<Pair, Vec<u32>>,
    /// Live pairs each symbol takes part in.
    symbol_pairs: Vec<HashSet<Pair>>,
    queue: BTreeSet<Candidate>,
    queued: HashMap<Pair, Candidate>,
}

impl<'c> Trainer<'c> {
    fn new(config: &'c TokenizerConfig, counted: &[(&str, u64)]) -> Self {
        let prefix = config.continuation_prefix.as_str();
        let mut units: Vec<Vec<String>> = Vec::with_capacity(counted.len());
        let mut kept: Vec<u64> = Vec::with_capacity(counted.len());
        for &(word, count) in counted {
            if word.chars().count() > config.max_word_chars {
                continue;
            }
            let pieces: Vec<String> = word
                .chars()
                .enumerate()
                .map(|(i, c)| if i == 0 { c.to_string() } else { format!("{prefix}{c}") })
                .collect();
            if pieces[0].starts_with(prefix) || pieces.iter().any(|p| config.is_special(p)) {
                continue;
            }
            units.push(pieces);
            kept.push(count);
        }
        let mut symbols: Vec<String> = units.iter().flatten().cloned().collect();
        symbols.sort_unstable();
        symbols.dedup();
        let symbol_ids: HashMap<String, u32> = symbols
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as u32))
            .collect();
        let words = units
            .into_iter()
            .zip(kept)
            .map(|(pieces, count)| (pieces.iter().map(|p| symbol_ids[p]).collect(), count))
            .collect();
        let n = symbols.len();
        let mut t = Trainer {
            config,
            symbols,
            symbol_ids,
            symbol_freq: vec![0; n],
            words,
            pair_freq: HashMap::new(),
            pair_words: HashMap::new(),
            symbol_pairs: vec![HashSet::new(); n],
            queue: BTreeSet::new(),
            queued: HashMap::new(),
        };
        for w in 0..t.words.len() {
            let (seq, count) = std::mem::take(&mut t.words[w]);
            t.add_word(w as u32, &seq, count, None);
            t.words[w] = (seq, count);
        }
        let pairs: Vec<Pair> = t.pair_freq.keys().copied().collect();
        for p in pairs {
            t.requeue(p);
        }
        t
    }

    /// Add a word's contribution; `only_with` limits the pair index to pairs
    /// containing that symbol.
    fn add_word(&mut self, w: u32, seq: &[u32], count: u64, only_with: Option<u32>) {
        for &s in seq {
            self.symbol_freq[s as usize] += count;
        }
        for p in seq.windows(2).map(|x| (x[0], x[1])) {
            let f = self.pair_freq.entry(p).or_insert(0);
            if *f == 0 {
                self.symbol_pairs[p.0 as usize].insert(p);
                self.symbol_pairs[p.1 as usize].insert(p);
            }
            *f += count;
            if only_with.is_none_or(|m| p.0 == m || p.1 == m) {
                self.pair_words.entry(p).or_default().push(w);
            }
        }
    }

    fn remove_word(&mut self, seq: &[u32], count: u64, touched: &mut HashSet<Pair>) {
        for &s in seq {
            self.symbol_freq[s as usize] -= count;
        }
        for p in seq.windows(2).map(|x| (x[0], x[1])) {
            let f = self.pair_freq.get_mut(&p).expect("pair of a live word");
            *f -= count;
            if *f == 0 {
                self.pair_freq.remove(&p);
                self.symbol_pairs[p.0 as usize].remove(&p);
                self.symbol_pairs[p.1 as usize].remove(&p);
            }
            touched.insert(p);
        }
    }

    fn merged_string(&self, (a, b): Pair) -> String {
        let right = &self.symbols[b as usize];
        let mut s = self.symbols[a as usize].clone();
        s.push_str(&right[self.config.continuation_prefix.len()..]);
        s
    }

    fn is_initial(&self, s: u32) -> bool {
        !self.symbols[s as usize].starts_with(&self.config.continuation_prefix)
    }

    fn requeue(&mut self, p: Pair) {
        if let Some(old) = self.queued.remove(&p) {
            self.queue.remove(&old);
        }
        let Some(&pair_freq) = self.pair_freq.get(&p) else {
            return;
        };
        let merged = self.merged_string(p);
        let prefix = &self.config.continuation_prefix;
        if (self.is_initial(p.0) && merged.starts_with(prefix.as_str())) || self.config.is_special(&merged) {
            return;
        }
        let c = Candidate {
            pair: p,
            pair_freq,
            left_freq: self.symbol_freq[p.0 as usize],
            right_freq: self.symbol_freq[p.1 as usize],
            merged,
            left: self.symbols[p.0 as usize].clone(),
            right: self.symbols[p.1 as usize].clone(),
        };
        self.queue.insert(c.clone());
        self.queued.insert(p, c);
    }

    /// Apply the merge everywhere and return the merged token string.
    fn merge(&mut self, best: Candidate) -> String {
        let (a, b) = best.pair;
        self.queued.remove(&best.pair);
        let merged = best.merged;
        let m = match self.symbol_ids.get(&merged) {
            Some(&m) => m,
            None => {
                let m = self.symbols.len() as u32;
                self.symbols.push(merged.clone());
                self.symbol_ids.insert(merged.clone(), m);
                self.symbol_freq.push(0);
                self.symbol_pairs.push(HashSet::new());
                m
            }
        };
        let mut candidates = self.pair_words.remove(&(a, b)).unwrap_or_default();
        candidates.sort_unstable();
        candidates.dedup();
        let mut touched = HashSet::new();
        for w in candidates {
            let (seq, count) = std::mem::take(&mut self.words[w as usize]);
            if !seq.windows(2).any(|x| x[0] == a && x[1] == b) {
                self.words[w as usize] = (seq, count);
                continue;
            }
            let mut next = Vec::with_capacity(seq.len() - 1);
            let mut i = 0;
            while i < seq.len() {
                if i + 1 < seq.len() && seq[i] == a && seq[i + 1] == b {
                    next.push(m);
                    i += 2;
                } else {
                    next.push(seq[i]);
                    i += 1;
                }
            }
            self.remove_word(&seq, count, &mut touched);
            self.add_word(w, &next, count, Some(m));
            touched.extend(next.windows(2).map(|x| (x[0], x[1])));
            self.words[w as usize] = (next, count);
        }
        for s in [a, b, m] {
            touched.extend(self.symbol_pairs[s as usize].iter().copied());
        }
        for p in touched {
            self.requeue(p);
        }
        merged
    }
}
