//! Lexical overlap between a new vocabulary and a base model vocabulary,
//! expressed as an embedding-initialization plan.
//!
//! A new token overlaps when the identical string, continuation prefix
//! included, is in the base vocabulary. Overlapping tokens copy the base
//! row; the rest get consecutive random-initialization seed slots. Special
//! tokens appear in the plan but not in the overlap ratio.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tokenizer::TokenizerModel;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseVocab {
    tokens: Vec<String>,
    ids: HashMap<String, u32>,
}

impl BaseVocab {
    pub fn from_tokens(tokens: Vec<String>) -> Result<Self> {
        let mut ids = HashMap::with_capacity(tokens.len());
        for (i, t) in tokens.iter().enumerate() {
            if let Some(&first) = ids.get(t) {
                return Err(Error::DuplicateToken {
                    token: t.clone(),
                    first: first as usize + 1,
                    second: i + 1,
                });
            }
            ids.insert(t.clone(), i as u32);
        }
        Ok(BaseVocab { tokens, ids })
    }

    /// Read a one-token-per-line vocabulary file.
    pub fn load(path: &Path) -> Result<Self> {
        Self::from_tokens(crate::tokenizer::read_tokens(path)?)
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn id(&self, token: &str) -> Option<u32> {
        self.ids.get(token).copied()
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "init", rename_all = "snake_case")]
pub enum Directive {
    CopyFromBase { base_id: u32 },
    RandomInit { seed_slot: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanEntry {
    pub id: u32,
    pub token: String,
    pub special: bool,
    #[serde(flatten)]
    pub directive: Directive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverlapPlan {
    /// One entry per new-vocabulary token, in id order.
    pub entries: Vec<PlanEntry>,
    /// Overlapping non-special tokens.
    pub shared: usize,
    /// Non-special tokens.
    pub scored: usize,
    /// `shared / scored`, or 0 when there are no non-special tokens.
    pub overlap_ratio: f64,
}

pub fn overlap_plan(new_vocab: &TokenizerModel, base: &BaseVocab) -> OverlapPlan {
    let mut next_slot = 0u32;
    let (mut shared, mut scored) = (0, 0);
    let entries = new_vocab
        .tokens()
        .iter()
        .enumerate()
        .map(|(id, token)| {
            let id = id as u32;
            let special = new_vocab.is_special_id(id);
            let directive = match base.id(token) {
                Some(base_id) => Directive::CopyFromBase { base_id },
                None => {
                    next_slot += 1;
                    Directive::RandomInit {
                        seed_slot: next_slot - 1,
                    }
                }
            };
            if !special {
                scored += 1;
                shared += matches!(directive, Directive::CopyFromBase { .. }) as usize;
            }
            PlanEntry {
                id,
                token: token.clone(),
                special,
                directive,
            }
        })
        .collect();
    OverlapPlan {
        entries,
        shared,
        scored,
        overlap_ratio: if scored == 0 { 0.0 } else { shared as f64 / scored as f64 },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharedToken {
    pub id: u32,
    pub token: String,
    pub base_id: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverlapSummary {
    pub vocab_size: usize,
    pub specials: usize,
    /// Copy directives over all entries, specials included.
    pub copies: usize,
    pub randoms: usize,
    pub shared: usize,
    pub scored: usize,
    pub overlap_ratio: f64,
    /// The first shared non-special tokens by new-vocabulary id.
    pub top_shared: Vec<SharedToken>,
}

pub fn overlap_report(plan: &OverlapPlan, top_n: usize) -> OverlapSummary {
    let copies = plan
        .entries
        .iter()
        .filter(|e| matches!(e.directive, Directive::CopyFromBase { .. }))
        .count();
    let top_shared = plan
        .entries
        .iter()
        .filter(|e| !e.special)
        .filter_map(|e| match e.directive {
            Directive::CopyFromBase { base_id } => Some(SharedToken {
                id: e.id,
                token: e.token.clone(),
                base_id,
            }),
            Directive::RandomInit { .. } => None,
        })
        .take(top_n)
        .collect();
    OverlapSummary {
        vocab_size: plan.entries.len(),
        specials: plan.entries.iter().filter(|e| e.special).count(),
        copies,
        randoms: plan.entries.len() - copies,
        shared: plan.shared,
        scored: plan.scored,
        overlap_ratio: plan.overlap_ratio,
        top_shared,
    }
}
