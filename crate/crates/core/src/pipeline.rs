//! End-to-end runs: sample, optionally transliterate, train, measure and
//! plan embedding reuse, with digests of every intermediate in the report.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::corpus::{self, CorpusFormat, SampleSize, SampleSpec, SentenceStore};
use crate::error::{Error, Result};
use crate::metrics::{compare, MetricsDelta, MetricsReport};
use crate::overlap::{overlap_plan, overlap_report, BaseVocab, OverlapSummary};
use crate::romanizer::{self, RomanizeOptions, RuleSet};
use crate::strategies::{make_strategy_with, Strategy, StrategySpec};
use crate::tokenizer::{train_wordpiece, TokenizerModel, TrainConfig};

pub const DEFAULT_TOP_N: usize = 20;

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    /// Label carried into reports and plot rows.
    pub language: String,
    pub input: PathBuf,
    pub format: CorpusFormat,
    /// `None` trains on the original script.
    pub strategy: Option<StrategySpec>,
    /// Directory of `*.rules` files replacing the embedded universal tables.
    pub table_dir: Option<PathBuf>,
    pub romanize_options: RomanizeOptions,
    pub train: TrainConfig,
    pub sample: SampleSpec,
    pub base_vocab: Option<PathBuf>,
    pub top_n: usize,
    /// Where intermediates are written, if anywhere.
    pub output_dir: Option<PathBuf>,
}

impl PipelineConfig {
    pub fn new(language: impl Into<String>, input: impl Into<PathBuf>) -> Self {
        PipelineConfig {
            language: language.into(),
            input: input.into(),
            format: CorpusFormat::PlainLines,
            strategy: Some(StrategySpec::Universal),
            table_dir: None,
            romanize_options: RomanizeOptions::default(),
            train: TrainConfig::default(),
            sample: SampleSpec::full(),
            base_vocab: None,
            top_n: DEFAULT_TOP_N,
            output_dir: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.sample.validate()?;
        self.train.tokenizer.validate()?;
        self.romanize_options.validate()?;
        if self.train.vocab_size == 0 {
            return Err(Error::Contract("vocab_size must be positive".into()));
        }
        if self.table_dir.is_some() && self.strategy.is_none() {
            return Err(Error::Contract("a table directory needs a transliteration strategy".into()));
        }
        Ok(())
    }

    /// Build the configured strategy, if any.
    pub fn strategy(&self) -> Result<Option<Strategy>> {
        let Some(spec) = &self.strategy else {
            return Ok(None);
        };
        let universal: Arc<RuleSet> = match &self.table_dir {
            Some(dir) => Arc::new(romanizer::load_table_dir(dir)?),
            None => Arc::new(romanizer::default_rules().clone()),
        };
        make_strategy_with(spec, universal, self.romanize_options).map(Some)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportConfig {
    /// `none`, `universal`, `borrow` or `rand`.
    pub strategy: String,
    pub provenance: Option<String>,
    pub vocab_size: usize,
    pub special_tokens: Vec<String>,
    pub sample_size: SampleSize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSection {
    pub format: CorpusFormat,
    pub source_digest: String,
    pub source_sentences: usize,
    pub sample_digest: String,
    pub sample_sentences: usize,
}

/// The text the tokenizer was trained and measured on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TextSection {
    pub transliterated: bool,
    pub digest: String,
    pub sentences: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenizerSection {
    pub digest: String,
    pub vocab_size: usize,
    pub training_corpus_digest: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsSection {
    pub trained: MetricsReport,
    pub base: Option<MetricsReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverlapSection {
    pub base_digest: String,
    #[serde(flatten)]
    pub summary: OverlapSummary,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub tool: String,
    pub version: String,
    /// Unix seconds; the only field that differs between identical runs.
    pub generated_at: u64,
    pub language: String,
    pub config: ReportConfig,
    pub corpus: CorpusSection,
    pub text: TextSection,
    pub tokenizer: TokenizerSection,
    pub metrics: MetricsSection,
    pub overlap: Option<OverlapSection>,
}

impl PipelineReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn stage<T>(name: &'static str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Stage {
        stage: name,
        source: Box::new(e),
    })
}

fn write(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Everything a run produced, for callers that want more than the report.
#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub sample: SentenceStore,
    pub text: SentenceStore,
    pub model: TokenizerModel,
    pub report: PipelineReport,
}

pub fn run_pipeline(config: &PipelineConfig) -> Result<PipelineReport> {
    run_pipeline_full(config).map(|o| o.report)
}

pub fn run_pipeline_full(config: &PipelineConfig) -> Result<PipelineOutput> {
    stage("config", config.validate())?;
    let strategy = stage("config", config.strategy())?;
    let base = match &config.base_vocab {
        Some(path) => Some(stage(
            "config",
            TokenizerModel::load(path).and_then(|m| Ok((BaseVocab::from_tokens(m.tokens().to_vec())?, m))),
        )?),
        None => None,
    };

    let source = stage("ingest", corpus::ingest(&config.input, config.format))?;
    let sample = corpus::sample(&source, &config.sample);
    let text = match &strategy {
        Some(s) => sample.map(format!("{}#{}", sample.source_label(), s.kind()), |x| s.transliterate(x)),
        None => sample.clone(),
    };

    let model = stage("train", train_wordpiece(text.sentences(), &config.train))?;
    let trained = MetricsReport::new(text.sentences(), &model);
    let base_metrics = base.as_ref().map(|(_, m)| MetricsReport::new(text.sentences(), m));
    let overlap = base.as_ref().map(|(vocab, m)| OverlapSection {
        base_digest: m.digest(),
        summary: overlap_report(&overlap_plan(&model, vocab), config.top_n),
    });

    if let Some(dir) = &config.output_dir {
        stage("write", write_intermediates(dir, &sample, strategy.is_some().then_some(&text), &model, base.as_ref().map(|(v, _)| v)))?;
    }

    let report = PipelineReport {
        tool: "romankit".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        generated_at: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        language: config.language.clone(),
        config: ReportConfig {
            strategy: config.strategy.as_ref().map_or("none", |s| s.name()).into(),
            provenance: strategy.as_ref().map(|s| s.provenance()),
            vocab_size: config.train.vocab_size,
            special_tokens: config.train.tokenizer.special_tokens.clone(),
            sample_size: config.sample.size,
            seed: config.sample.seed,
        },
        corpus: CorpusSection {
            format: config.format,
            source_digest: source.digest().into(),
            source_sentences: source.len(),
            sample_digest: sample.digest().into(),
            sample_sentences: sample.len(),
        },
        text: TextSection {
            transliterated: strategy.is_some(),
            digest: text.digest().into(),
            sentences: text.len(),
        },
        tokenizer: TokenizerSection {
            digest: model.digest(),
            vocab_size: model.len(),
            training_corpus_digest: model.corpus_digest().map(str::to_owned),
        },
        metrics: MetricsSection {
            trained,
            base: base_metrics,
        },
        overlap,
    };
    Ok(PipelineOutput {
        sample,
        text,
        model,
        report,
    })
}

fn write_intermediates(
    dir: &Path,
    sample: &SentenceStore,
    text: Option<&SentenceStore>,
    model: &TokenizerModel,
    base: Option<&BaseVocab>,
) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    write(&dir.join("sample.txt"), &sample.to_text())?;
    if let Some(text) = text {
        write(&dir.join("transliterated.txt"), &text.to_text())?;
    }
    model.save(&dir.join("tokenizer.vocab"))?;
    if let Some(base) = base {
        let plan = overlap_plan(model, base);
        let mut json = serde_json::to_string_pretty(&plan)?;
        json.push('\n');
        write(&dir.join("overlap_plan.json"), &json)?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverlapDelta {
    pub before: f64,
    pub after: f64,
    pub delta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub language: String,
    pub sample_digest: String,
    pub before_strategy: String,
    pub after_strategy: String,
    pub trained: MetricsDelta<f64>,
    pub base: Option<MetricsDelta<f64>>,
    pub overlap: Option<OverlapDelta>,
}

/// One plot point: a metric before and after.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlotRow {
    pub language: String,
    pub metric: String,
    pub before: f64,
    pub after: f64,
}

/// Compare two reports over the same sampled corpus.
pub fn compare_reports(before: &PipelineReport, after: &PipelineReport) -> Result<ComparisonReport> {
    if before.corpus.sample_digest != after.corpus.sample_digest {
        return Err(Error::DigestMismatch {
            before: before.corpus.sample_digest.clone(),
            after: after.corpus.sample_digest.clone(),
        });
    }
    let base = match (&before.metrics.base, &after.metrics.base) {
        (Some(b), Some(a)) => Some(compare(&b.metrics, &a.metrics)),
        _ => None,
    };
    let overlap = match (&before.overlap, &after.overlap) {
        (Some(b), Some(a)) => Some(OverlapDelta {
            before: b.summary.overlap_ratio,
            after: a.summary.overlap_ratio,
            delta: a.summary.overlap_ratio - b.summary.overlap_ratio,
        }),
        _ => None,
    };
    Ok(ComparisonReport {
        language: after.language.clone(),
        sample_digest: after.corpus.sample_digest.clone(),
        before_strategy: before.config.strategy.clone(),
        after_strategy: after.config.strategy.clone(),
        trained: compare(&before.metrics.trained.metrics, &after.metrics.trained.metrics),
        base,
        overlap,
    })
}

impl ComparisonReport {
    pub fn plot_rows(&self) -> Vec<PlotRow> {
        let mut rows = Vec::new();
        let mut push = |metric: String, before: f64, after: f64| {
            rows.push(PlotRow {
                language: self.language.clone(),
                metric,
                before,
                after,
            })
        };
        for (group, delta) in [("trained", Some(&self.trained)), ("base", self.base.as_ref())] {
            if let Some(d) = delta {
                for (name, b, a, _) in d.rows() {
                    push(format!("{group}.{name}"), b, a);
                }
            }
        }
        if let Some(o) = &self.overlap {
            push("overlap_ratio".into(), o.before, o.after);
        }
        rows
    }
}
