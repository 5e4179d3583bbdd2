use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::json;

use romankit::corpus::{self, CorpusFormat, SampleSize, SampleSpec, SentenceStore};
use romankit::digest;
use romankit::metrics::MetricsReport;
use romankit::overlap::{overlap_plan, overlap_report, BaseVocab};
use romankit::pipeline::{compare_reports, run_pipeline, PipelineConfig, PipelineReport};
use romankit::romanizer::{self, FallbackPolicy, RomanizeOptions, RuleSet};
use romankit::strategies::{make_strategy_with, RandMap, Strategy, StrategySpec};
use romankit::tokenizer::{train_wordpiece, TokenizerConfig, TokenizerModel, TrainConfig};

use crate::args::{Cli, Command, Format, InputFormat, StrategyArg, StrategyArgs, TokenizerArgs};
use crate::failure::UsageError;

pub fn run(cli: &Cli) -> Result<()> {
    let out = Output {
        format: cli.format,
        quiet: cli.quiet,
    };
    match &cli.command {
        Command::Romanize { input, output, strategy } => {
            let strategy = build_strategy(cli, strategy)?;
            let bytes = std::fs::read(input).map_err(|e| io_error(input, e))?;
            let text = romankit::unicode::decode_utf8(&bytes)
                .map_err(anyhow::Error::from)
                .with_context(|| format!("{}", input.display()))?;
            let result = strategy.transliterate(text);
            write_text(output.as_deref(), &result)?;
            if output.is_some() {
                out.record(&json!({
                    "strategy": strategy.kind(),
                    "provenance": strategy.provenance(),
                    "input_digest": digest::sha256(&bytes),
                    "output_digest": digest::sha256(result.as_bytes()),
                }))?;
            }
        }
        Command::RandMap { input, range, output } => {
            let chars = match input {
                Some(path) => {
                    let bytes = std::fs::read(path).map_err(|e| io_error(path, e))?;
                    let text = romankit::unicode::decode_utf8(&bytes)?;
                    text.chars()
                        .filter(|c| !c.is_ascii() && !c.is_whitespace())
                        .collect::<BTreeSet<char>>()
                        .into_iter()
                        .collect()
                }
                None => parse_range(range)?,
            };
            let map = RandMap::new(cli.seed);
            let rows: Vec<RandRow> = chars
                .into_iter()
                .map(|c| RandRow {
                    codepoint: format!("U+{:04X}", c as u32),
                    character: c.to_string(),
                    letter: map.map(c).to_string(),
                })
                .collect();
            let text = match cli.format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&json!({ "seed": cli.seed, "entries": rows }))?;
                    s.push('\n');
                    s
                }
                Format::Csv => csv_text(&rows)?,
            };
            write_text(output.as_deref(), &text)?;
        }
        Command::TrainTokenizer {
            input,
            input_format,
            output,
            tokenizer,
        } => {
            let store = corpus::ingest(input, corpus_format(*input_format))?;
            let model = train_wordpiece(store.sentences(), &train_config(tokenizer))?;
            model.save(output)?;
            out.record(&json!({
                "vocab_size": model.len(),
                "model_digest": model.digest(),
                "corpus_digest": store.digest(),
                "sentences": store.len(),
            }))?;
        }
        Command::Tokenize {
            vocab,
            input,
            input_format,
            output,
        } => {
            let model = TokenizerModel::load(vocab)?;
            let store = corpus::ingest(input, corpus_format(*input_format))?;
            let mut text = String::new();
            let mut counts = romankit::tokenizer::TokenCounts::default();
            for s in store.sentences() {
                let r = model.encode(s);
                counts = counts + r.counts;
                let line: Vec<&str> = r.words.iter().flatten().map(|&id| model.token(id).unwrap_or_default()).collect();
                text.push_str(&line.join(" "));
                text.push('\n');
            }
            write_text(output.as_deref(), &text)?;
            if output.is_some() {
                out.record(&counts)?;
            }
        }
        Command::Metrics {
            vocab,
            input,
            input_format,
            label,
        } => {
            let model = TokenizerModel::load(vocab)?;
            let store = corpus::ingest(input, corpus_format(*input_format))?;
            let report = MetricsReport::new(store.sentences(), &model);
            match cli.format {
                Format::Json => out.record(&report)?,
                Format::Csv => out.rows(&[report.row(label)])?,
            }
        }
        Command::Overlap { vocab, base, top, plan } => {
            let model = TokenizerModel::load(vocab)?;
            let base = BaseVocab::load(base)?;
            let p = overlap_plan(&model, &base);
            if let Some(path) = plan {
                let mut s = serde_json::to_string_pretty(&p)?;
                s.push('\n');
                write_text(Some(path), &s)?;
            }
            let summary = overlap_report(&p, *top);
            match cli.format {
                Format::Json => out.record(&summary)?,
                Format::Csv => out.rows(&[OverlapRow {
                    vocab_size: summary.vocab_size,
                    specials: summary.specials,
                    copies: summary.copies,
                    randoms: summary.randoms,
                    shared: summary.shared,
                    scored: summary.scored,
                    overlap_ratio: summary.overlap_ratio,
                }])?,
            }
        }
        Command::Sample {
            input,
            input_format,
            size,
            output,
        } => {
            let store = corpus::ingest(input, corpus_format(*input_format))?;
            let spec = sample_spec(size, cli.seed)?;
            let sampled = corpus::sample(&store, &spec);
            write_text(output.as_deref(), &sampled.to_text())?;
            if output.is_some() {
                out.record(&sample_record(&store, &sampled, &spec))?;
            }
        }
        Command::Pipeline {
            input,
            input_format,
            language,
            strategy,
            no_romanize,
            tokenizer,
            sample_size,
            base,
            top,
            out_dir,
            report,
        } => {
            let config = PipelineConfig {
                language: language.clone(),
                input: input.clone(),
                format: corpus_format(*input_format),
                strategy: if *no_romanize {
                    None
                } else {
                    Some(strategy_spec(cli, strategy)?)
                },
                table_dir: if *no_romanize { None } else { cli.table_dir.clone() },
                romanize_options: romanize_options(strategy)?,
                train: train_config(tokenizer),
                sample: sample_spec(sample_size, cli.seed)?,
                base_vocab: base.clone(),
                top_n: *top,
                output_dir: out_dir.clone(),
            };
            let r = run_pipeline(&config)?;
            if let Some(path) = report {
                write_text(Some(path), &r.to_json())?;
            }
            match cli.format {
                Format::Json => out.text(&r.to_json())?,
                Format::Csv => {
                    let mut rows = vec![r.metrics.trained.row(&format!("{language}.trained"))];
                    if let Some(b) = &r.metrics.base {
                        rows.push(b.row(&format!("{language}.base")));
                    }
                    out.rows(&rows)?
                }
            }
        }
        Command::Compare { before, after, plot } => {
            let b = read_report(before)?;
            let a = read_report(after)?;
            let cmp = compare_reports(&b, &a)?;
            let rows = cmp.plot_rows();
            if let Some(path) = plot {
                write_text(Some(path), &csv_text(&rows)?)?;
            }
            match cli.format {
                Format::Json => out.record(&cmp)?,
                Format::Csv => out.rows(&rows)?,
            }
        }
    }
    Ok(())
}

struct Output {
    format: Format,
    quiet: bool,
}

impl Output {
    fn text(&self, s: &str) -> Result<()> {
        if !self.quiet {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(s.as_bytes()).context("writing to stdout")?;
        }
        Ok(())
    }

    /// A single report: JSON as-is, or flattened to one CSV row.
    fn record<T: Serialize>(&self, value: &T) -> Result<()> {
        match self.format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(value)?;
                s.push('\n');
                self.text(&s)
            }
            Format::Csv => {
                let v = serde_json::to_value(value)?;
                let mut flat = Vec::new();
                flatten("", &v, &mut flat);
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(flat.iter().map(|(k, _)| k.as_str()))?;
                w.write_record(flat.iter().map(|(_, v)| v.as_str()))?;
                self.text(&String::from_utf8(w.into_inner()?)?)
            }
        }
    }

    fn rows<T: Serialize>(&self, rows: &[T]) -> Result<()> {
        self.text(&csv_text(rows)?)
    }
}

fn flatten(prefix: &str, v: &serde_json::Value, out: &mut Vec<(String, String)>) {
    match v {
        serde_json::Value::Object(m) => {
            for (k, v) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        serde_json::Value::String(s) => out.push((prefix.to_owned(), s.clone())),
        serde_json::Value::Null => out.push((prefix.to_owned(), String::new())),
        other => out.push((prefix.to_owned(), other.to_string())),
    }
}

fn csv_text<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn io_error(path: &Path, e: std::io::Error) -> anyhow::Error {
    romankit::Error::Io {
        path: path.to_owned(),
        source: e,
    }
    .into()
}

fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| io_error(p, e)),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .context("writing to stdout"),
    }
}

fn corpus_format(f: InputFormat) -> CorpusFormat {
    match f {
        InputFormat::Plain => CorpusFormat::PlainLines,
        InputFormat::Jsonl => CorpusFormat::WikiJsonLines,
    }
}

fn romanize_options(args: &StrategyArgs) -> Result<RomanizeOptions> {
    let options = RomanizeOptions {
        fallback_policy: args.placeholder.map_or(FallbackPolicy::Drop, FallbackPolicy::Placeholder),
        lowercase_output: !args.keep_case,
        map_digits: !args.no_digit_map,
    };
    options.validate()?;
    Ok(options)
}

fn strategy_spec(cli: &Cli, args: &StrategyArgs) -> Result<StrategySpec> {
    Ok(match args.strategy {
        StrategyArg::Universal => StrategySpec::Universal,
        StrategyArg::Borrow => match &args.table {
            Some(t) => StrategySpec::Borrow(t.clone()),
            None => return Err(UsageError("--strategy borrow requires --table".into()).into()),
        },
        StrategyArg::Rand => StrategySpec::Rand { seed: cli.seed },
    })
}

fn universal_rules(cli: &Cli) -> Result<Arc<RuleSet>> {
    Ok(match &cli.table_dir {
        Some(dir) => Arc::new(romanizer::load_table_dir(dir)?),
        None => Arc::new(romanizer::default_rules().clone()),
    })
}

fn build_strategy(cli: &Cli, args: &StrategyArgs) -> Result<Strategy> {
    let spec = strategy_spec(cli, args)?;
    let options = romanize_options(args)?;
    let universal = match spec {
        StrategySpec::Universal => universal_rules(cli)?,
        _ => Arc::new(RuleSet::empty("unused")),
    };
    Ok(make_strategy_with(&spec, universal, options)?)
}

fn train_config(args: &TokenizerArgs) -> TrainConfig {
    TrainConfig {
        vocab_size: args.vocab_size,
        tokenizer: TokenizerConfig {
            unk_token: args.unk_token.clone(),
            special_tokens: args.specials.clone(),
            ..Default::default()
        },
        workers: args.workers,
    }
}

fn sample_spec(size: &str, seed: u64) -> Result<SampleSpec> {
    let size: SampleSize = size.parse().map_err(|e: romankit::Error| UsageError(e.to_string()))?;
    Ok(SampleSpec::new(size, seed)?)
}

fn sample_record(store: &SentenceStore, sampled: &SentenceStore, spec: &SampleSpec) -> serde_json::Value {
    json!({
        "source_digest": store.digest(),
        "source_sentences": store.len(),
        "sample_digest": sampled.digest(),
        "sample_sentences": sampled.len(),
        "size": spec.size.to_string(),
        "seed": spec.seed,
    })
}

fn parse_range(range: &str) -> Result<Vec<char>> {
    let bad = || UsageError(format!("invalid range {range:?}; expected hex bounds like 0900-097F"));
    let (lo, hi) = range.split_once('-').ok_or_else(bad)?;
    let lo = u32::from_str_radix(lo.trim_start_matches("U+"), 16).map_err(|_| bad())?;
    let hi = u32::from_str_radix(hi.trim_start_matches("U+"), 16).map_err(|_| bad())?;
    if lo > hi || hi > 0x10FFFF {
        return Err(bad().into());
    }
    Ok((lo..=hi)
        .filter_map(char::from_u32)
        .filter(|c| !c.is_ascii() && !c.is_whitespace())
        .collect())
}

fn read_report(path: &PathBuf) -> Result<PipelineReport> {
    let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    PipelineReport::from_json(&text).with_context(|| format!("{}: not a pipeline report", path.display()))
}

#[derive(Serialize)]
struct RandRow {
    codepoint: String,
    character: String,
    letter: String,
}

#[derive(Serialize)]
struct OverlapRow {
    vocab_size: usize,
    specials: usize,
    copies: usize,
    randoms: usize,
    shared: usize,
    scored: usize,
    overlap_ratio: f64,
}
