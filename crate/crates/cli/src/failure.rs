//! Exit codes and the JSON error record written to stderr.

use std::any::Any;
use std::fmt;

use romankit::Error;
use serde::Serialize;

pub const USAGE: u8 = 1;
pub const DATA: u8 = 2;
pub const INTERNAL: u8 = 3;

/// Invalid flag combinations detected after parsing.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Debug, Serialize)]
pub struct Failure {
    pub exit_code: u8,
    pub category: &'static str,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stage: Option<&'static str>,
    pub message: String,
}

#[derive(Serialize)]
struct Record<'a> {
    error: &'a Failure,
}

fn kind_of(e: &Error) -> &'static str {
    match e {
        Error::Encoding { .. } => "encoding",
        Error::RuleParse { .. } => "rule_parse",
        Error::RuleConflict { .. } => "rule_conflict",
        Error::Contract(_) => "contract",
        Error::EmptyCorpus => "empty_corpus",
        Error::VocabTooSmall { .. } => "vocab_too_small",
        Error::VocabFormat { .. } => "vocab_format",
        Error::DuplicateToken { .. } => "duplicate_token",
        Error::CorpusFormat { .. } => "corpus_format",
        Error::Io { .. } => "io",
        Error::DigestMismatch { .. } => "digest_mismatch",
        Error::Stage { .. } => "stage",
        Error::Metadata(_) => "metadata",
    }
}

/// The error chain joined by ": ", skipping causes already spelled out by
/// an outer message.
fn message_of(e: &anyhow::Error) -> String {
    let mut message = String::new();
    for cause in e.chain() {
        let text = cause.to_string();
        if message.contains(&text) {
            continue;
        }
        if !message.is_empty() {
            message.push_str(": ");
        }
        message.push_str(&text);
    }
    message
}

impl Failure {
    pub fn usage(kind: String, message: String) -> Self {
        Failure {
            exit_code: USAGE,
            category: "usage",
            kind,
            stage: None,
            message: message.trim_start_matches("error: ").trim_end().to_owned(),
        }
    }

    pub fn from_error(e: &anyhow::Error) -> Self {
        let message = message_of(e);
        for cause in e.chain() {
            if let Some(u) = cause.downcast_ref::<UsageError>() {
                return Failure::usage("invalid_arguments".into(), u.0.clone());
            }
            if let Some(err) = cause.downcast_ref::<Error>() {
                let stage = match err {
                    Error::Stage { stage, .. } => Some(*stage),
                    _ => None,
                };
                let root = err.root();
                let (exit_code, category) = match root {
                    Error::Contract(_) | Error::VocabTooSmall { .. } => (USAGE, "config"),
                    _ => (DATA, "data"),
                };
                return Failure {
                    exit_code,
                    category,
                    kind: kind_of(root).into(),
                    stage,
                    message,
                };
            }
            if cause.downcast_ref::<std::io::Error>().is_some() || cause.downcast_ref::<serde_json::Error>().is_some() {
                return Failure {
                    exit_code: DATA,
                    category: "data",
                    kind: "io".into(),
                    stage: None,
                    message,
                };
            }
        }
        Failure {
            exit_code: INTERNAL,
            category: "internal",
            kind: "internal".into(),
            stage: None,
            message,
        }
    }

    pub fn panic(payload: Box<dyn Any + Send>) -> Self {
        let message = payload
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| payload.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "panic".into());
        Failure {
            exit_code: INTERNAL,
            category: "internal",
            kind: "panic".into(),
            stage: None,
            message,
        }
    }

    pub fn report(&self) {
        let record = serde_json::to_string(&Record { error: self }).expect("record serializes");
        eprintln!("{record}");
    }
}
