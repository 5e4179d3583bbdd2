//! Rule tables: parsing the `.rules` format and the longest-match trie.
//!
//! One rule per line, fields separated by a single TAB:
//!
//! ```text
//! source<TAB>target[<TAB>scope=<Script>][<TAB>prio=<int>]
//! ```
//!
//! Lines starting with `#` and blank lines are ignored. Sources are stored
//! compatibility-decomposed so they line up with the normalized input the
//! engine walks over.

use std::collections::HashMap;
use std::fmt;
use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};
use crate::unicode::{self, ScriptTag};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RomanizationRule {
    /// Source as written in the table.
    pub source: String,
    pub target: String,
    pub script_scope: Option<ScriptTag>,
    pub priority: i32,
    pub location: RuleLocation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleLocation {
    pub table: String,
    pub line: usize,
}

impl fmt::Display for RuleLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.table, self.line)
    }
}

impl RomanizationRule {
    pub fn new(source: &str, target: &str) -> Result<Self> {
        let rule = RomanizationRule {
            source: source.to_owned(),
            target: target.to_owned(),
            script_scope: None,
            priority: 0,
            location: RuleLocation {
                table: String::new(),
                line: 0,
            },
        };
        rule.validate().map_err(Error::Contract)?;
        Ok(rule)
    }

    pub fn with_scope(mut self, scope: ScriptTag) -> Self {
        self.script_scope = Some(scope);
        self
    }

    pub fn with_priority(mut self, priority: i32) -> Self {
        self.priority = priority;
        self
    }

    fn validate(&self) -> std::result::Result<(), String> {
        if self.source.is_empty() {
            return Err("empty source".into());
        }
        if let Some(bad) = self.target.chars().find(|c| !is_printable_ascii(*c)) {
            return Err(format!("target contains non-printable-ASCII {bad:?}"));
        }
        Ok(())
    }

    /// A scoped rule only fires if every codepoint of its source is in the
    /// scope script or is shared (Common/Inherited).
    fn can_fire(&self, key: &[char]) -> bool {
        match self.script_scope {
            None => true,
            Some(scope) => key.iter().all(|&c| {
                let s = unicode::script_of(c);
                s == scope || s.is_shared()
            }),
        }
    }
}

pub(crate) fn is_printable_ascii(c: char) -> bool {
    (' '..='~').contains(&c)
}

#[derive(Default, Debug, Clone)]
struct TrieNode {
    children: HashMap<char, u32>,
    /// Indices into `RuleSet::rules`, in table order.
    rules: Vec<u32>,
}

/// An ordered, trie-indexed collection of rules.
#[derive(Debug, Clone)]
pub struct RuleSet {
    rules: Vec<RomanizationRule>,
    /// Rule index that wins at a given trie node; `None` if no rule there can fire.
    winners: Vec<Option<u32>>,
    nodes: Vec<TrieNode>,
    provenance: String,
}

impl RuleSet {
    pub fn empty(provenance: impl Into<String>) -> Self {
        RuleSetBuilder::new(provenance).build()
    }

    pub fn parse(text: &str, provenance: impl Into<String>) -> Result<Self> {
        let provenance = provenance.into();
        let mut builder = RuleSetBuilder::new(provenance.clone());
        builder.add_table(&provenance, text)?;
        Ok(builder.build())
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn rules(&self) -> &[RomanizationRule] {
        &self.rules
    }

    /// Exact lookup by source and scope.
    pub fn lookup(&self, source: &str, scope: Option<ScriptTag>) -> Option<&RomanizationRule> {
        let key = match_key(source);
        let node = self.walk(&key)?;
        self.nodes[node]
            .rules
            .iter()
            .map(|&i| &self.rules[i as usize])
            .find(|r| r.script_scope == scope)
    }

    fn walk(&self, key: &[char]) -> Option<usize> {
        let mut node = 0usize;
        for c in key {
            node = *self.nodes[node].children.get(c)? as usize;
        }
        Some(node)
    }

    /// Longest rule matching `input` at its start: `(chars consumed, rule)`.
    pub(crate) fn longest_match(&self, input: &[char]) -> Option<(usize, &RomanizationRule)> {
        let mut node = 0usize;
        let mut best = None;
        for (depth, c) in input.iter().enumerate() {
            match self.nodes[node].children.get(c) {
                Some(&next) => node = next as usize,
                None => break,
            }
            if let Some(rule) = self.winners[node] {
                best = Some((depth + 1, &self.rules[rule as usize]));
            }
        }
        best
    }
}

/// Accumulates rules from one or more tables, detecting conflicts across all of them.
pub struct RuleSetBuilder {
    provenance: String,
    rules: Vec<RomanizationRule>,
    keys: Vec<Vec<char>>,
    nodes: Vec<TrieNode>,
}

impl RuleSetBuilder {
    pub fn new(provenance: impl Into<String>) -> Self {
        RuleSetBuilder {
            provenance: provenance.into(),
            rules: Vec::new(),
            keys: Vec::new(),
            nodes: vec![TrieNode::default()],
        }
    }

    pub fn add_table(&mut self, table: &str, text: &str) -> Result<&mut Self> {
        for (idx, raw) in text.split('\n').enumerate() {
            let line_no = idx + 1;
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut rule = parse_line(line).map_err(|message| Error::RuleParse {
                table: table.to_owned(),
                line: line_no,
                message,
            })?;
            rule.location = RuleLocation {
                table: table.to_owned(),
                line: line_no,
            };
            self.add_rule(rule)?;
        }
        Ok(self)
    }

    pub fn add_rule(&mut self, rule: RomanizationRule) -> Result<&mut Self> {
        rule.validate().map_err(|message| Error::RuleParse {
            table: rule.location.table.clone(),
            line: rule.location.line,
            message,
        })?;
        let key = match_key(&rule.source);
        let mut node = 0usize;
        for &c in &key {
            let next = self.nodes.len() as u32;
            let child = *self.nodes[node].children.entry(c).or_insert(next);
            if child == next {
                self.nodes.push(TrieNode::default());
            }
            node = child as usize;
        }
        if let Some(&other) = self.nodes[node]
            .rules
            .iter()
            .find(|&&i| self.rules[i as usize].script_scope == rule.script_scope)
        {
            let first = &self.rules[other as usize].location;
            return Err(Error::RuleConflict {
                first_table: first.table.clone(),
                first: first.line,
                second_table: rule.location.table.clone(),
                second: rule.location.line,
            });
        }
        self.nodes[node].rules.push(self.rules.len() as u32);
        self.rules.push(rule);
        self.keys.push(key);
        Ok(self)
    }

    pub fn build(self) -> RuleSet {
        let winners = self
            .nodes
            .iter()
            .map(|node| {
                // Highest priority wins; ties go to the earliest rule.
                node.rules
                    .iter()
                    .copied()
                    .filter(|&i| self.rules[i as usize].can_fire(&self.keys[i as usize]))
                    .fold(None, |best: Option<u32>, i| match best {
                        Some(b) if self.rules[b as usize].priority >= self.rules[i as usize].priority => {
                            Some(b)
                        }
                        _ => Some(i),
                    })
            })
            .collect();
        RuleSet {
            rules: self.rules,
            winners,
            nodes: self.nodes,
            provenance: self.provenance,
        }
    }
}

fn match_key(source: &str) -> Vec<char> {
    unicode::compatibility_decompose(source).collect()
}

fn parse_line(line: &str) -> std::result::Result<RomanizationRule, String> {
    let fields: Vec<&str> = line.split('\t').collect();
    if !(2..=4).contains(&fields.len()) {
        return Err(format!("expected 2 to 4 TAB-separated fields, found {}", fields.len()));
    }
    if fields.iter().any(|f| f.contains("\\t")) {
        return Err("escaped \\t is not allowed inside a field".into());
    }
    let mut rule = RomanizationRule {
        source: fields[0].to_owned(),
        target: fields[1].to_owned(),
        script_scope: None,
        priority: 0,
        location: RuleLocation {
            table: String::new(),
            line: 0,
        },
    };
    let mut seen_prio = false;
    for (pos, field) in fields.iter().enumerate().skip(2) {
        if let Some(name) = field.strip_prefix("scope=") {
            if pos != 2 {
                return Err("scope= must come before prio=".into());
            }
            rule.script_scope = Some(name.parse().map_err(|_| format!("unknown script {name:?}"))?);
        } else if let Some(value) = field.strip_prefix("prio=") {
            if seen_prio {
                return Err("prio= given twice".into());
            }
            seen_prio = true;
            rule.priority = value.parse().map_err(|_| format!("bad priority {value:?}"))?;
        } else {
            return Err(format!("unrecognized field {field:?}"));
        }
    }
    rule.validate()?;
    Ok(rule)
}

/// Parse a rule table from a byte stream.
pub fn load_rules(mut source: impl Read, provenance: impl Into<String>) -> Result<RuleSet> {
    let provenance = provenance.into();
    let mut bytes = Vec::new();
    source
        .read_to_end(&mut bytes)
        .map_err(|e| Error::io(provenance.clone(), e))?;
    let text = unicode::decode_utf8(&bytes)?;
    RuleSet::parse(text, provenance)
}

pub fn load_rules_file(path: &Path, provenance: impl Into<String>) -> Result<RuleSet> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    load_rules(file, provenance)
}
