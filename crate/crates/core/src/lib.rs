pub mod corpus;
pub mod digest;
pub mod error;
pub mod metrics;
pub mod overlap;
pub mod pipeline;
pub mod romanizer;
pub mod strategies;
pub mod tokenizer;
pub mod unicode;

pub use error::{Error, Result};

/// Metrics in floating point, as reported.
pub type Metrics = metrics::TokenizerMetrics<f64>;
/// Metrics as exact rationals.
pub type ExactMetrics = metrics::TokenizerMetrics<num_rational::Rational64>;
