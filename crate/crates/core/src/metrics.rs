//! Tokenization quality: unknown-token rate, fertility and the share of
//! words split into several subwords.
//!
//! Metrics are generic over the scalar so the same code yields floating
//! point values for reports and exact rationals for verification.

use std::fmt::Debug;
use std::ops::Sub;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::tokenizer::{TokenCounts, TokenizerModel};

pub trait Scalar: Copy + Debug + PartialEq + PartialOrd + Sub<Output = Self> + Send + Sync {
    /// `num / den`, or zero when `den` is zero.
    fn ratio(num: u64, den: u64) -> Self;
    fn from_count(n: u64) -> Self;
    fn to_f64(self) -> f64;
}

impl Scalar for f64 {
    fn ratio(num: u64, den: u64) -> Self {
        if den == 0 {
            0.0
        } else {
            num as f64 / den as f64
        }
    }

    fn from_count(n: u64) -> Self {
        n as f64
    }

    fn to_f64(self) -> f64 {
        self
    }
}

impl Scalar for f32 {
    fn ratio(num: u64, den: u64) -> Self {
        f64::ratio(num, den) as f32
    }

    fn from_count(n: u64) -> Self {
        n as f32
    }

    fn to_f64(self) -> f64 {
        self as f64
    }
}

fn as_i64(n: u64) -> i64 {
    i64::try_from(n).expect("count exceeds i64 range")
}

impl Scalar for Rational64 {
    fn ratio(num: u64, den: u64) -> Self {
        if den == 0 {
            Rational64::from_integer(0)
        } else {
            Rational64::new(as_i64(num), as_i64(den))
        }
    }

    fn from_count(n: u64) -> Self {
        Rational64::from_integer(as_i64(n))
    }

    fn to_f64(self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TokenizerMetrics<T> {
    /// Unknown tokens over all produced subwords.
    pub pct_unk: T,
    /// Subwords per word.
    pub fertility: T,
    /// Words split into two or more subwords, over all words.
    pub continued_proportion: T,
    pub counts: TokenCounts,
    /// Set when there were no words; all metrics are then zero.
    pub empty: bool,
}

impl<T: Scalar> TokenizerMetrics<T> {
    pub fn from_counts(counts: TokenCounts) -> Self {
        TokenizerMetrics {
            pct_unk: T::ratio(counts.unk_count, counts.total_subwords),
            fertility: T::ratio(counts.total_subwords, counts.total_words),
            continued_proportion: T::ratio(counts.words_split, counts.total_words),
            counts,
            empty: counts.total_words == 0,
        }
    }

    pub fn to_f64(&self) -> TokenizerMetrics<f64> {
        TokenizerMetrics {
            pct_unk: self.pct_unk.to_f64(),
            fertility: self.fertility.to_f64(),
            continued_proportion: self.continued_proportion.to_f64(),
            counts: self.counts,
            empty: self.empty,
        }
    }
}

pub fn compute_metrics<S: AsRef<str> + Sync>(corpus: &[S], model: &TokenizerModel) -> TokenizerMetrics<f64> {
    compute_metrics_as(corpus, model)
}

pub fn compute_metrics_as<T: Scalar, S: AsRef<str> + Sync>(corpus: &[S], model: &TokenizerModel) -> TokenizerMetrics<T> {
    TokenizerMetrics::from_counts(model.count_corpus(corpus))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsDelta<T> {
    pub before: TokenizerMetrics<T>,
    pub after: TokenizerMetrics<T>,
    pub pct_unk: T,
    pub fertility: T,
    pub continued_proportion: T,
}

/// Differences `after - before`.
pub fn compare<T: Scalar>(before: &TokenizerMetrics<T>, after: &TokenizerMetrics<T>) -> MetricsDelta<T> {
    MetricsDelta {
        before: *before,
        after: *after,
        pct_unk: after.pct_unk - before.pct_unk,
        fertility: after.fertility - before.fertility,
        continued_proportion: after.continued_proportion - before.continued_proportion,
    }
}

pub const METRIC_NAMES: [&str; 3] = ["pct_unk", "fertility", "continued_proportion"];

impl<T: Scalar> MetricsDelta<T> {
    /// `(metric, before, after, delta)` for each metric.
    pub fn rows(&self) -> [(&'static str, T, T, T); 3] {
        [
            ("pct_unk", self.before.pct_unk, self.after.pct_unk, self.pct_unk),
            ("fertility", self.before.fertility, self.after.fertility, self.fertility),
            (
                "continued_proportion",
                self.before.continued_proportion,
                self.after.continued_proportion,
                self.continued_proportion,
            ),
        ]
    }
}

/// Metrics with the digests that identify what was measured.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub corpus_digest: String,
    pub model_digest: String,
    #[serde(flatten)]
    pub metrics: TokenizerMetrics<f64>,
}

/// One flat record per report, for CSV output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub label: String,
    pub pct_unk: f64,
    pub fertility: f64,
    pub continued_proportion: f64,
    pub total_words: u64,
    pub total_subwords: u64,
    pub unk_count: u64,
    pub words_split: u64,
    pub empty: bool,
    pub corpus_digest: String,
    pub model_digest: String,
}

impl MetricsReport {
    pub fn new<S: AsRef<str> + Sync>(corpus: &[S], model: &TokenizerModel) -> Self {
        MetricsReport {
            corpus_digest: crate::digest::sentences(corpus),
            model_digest: model.digest(),
            metrics: compute_metrics(corpus, model),
        }
    }

    pub fn row(&self, label: &str) -> MetricsRow {
        let m = &self.metrics;
        MetricsRow {
            label: label.to_owned(),
            pct_unk: m.pct_unk,
            fertility: m.fertility,
            continued_proportion: m.continued_proportion,
            total_words: m.counts.total_words,
            total_subwords: m.counts.total_subwords,
            unk_count: m.counts.unk_count,
            words_split: m.counts.words_split,
            empty: m.empty,
            corpus_digest: self.corpus_digest.clone(),
            model_digest: self.model_digest.clone(),
        }
    }
}
