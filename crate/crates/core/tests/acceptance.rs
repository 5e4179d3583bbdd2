//! Acceptance suite: one pass/fail line per criterion with its runtime
//! against the allowed budget. Exits non-zero if any criterion fails.

mod common;

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use romankit::corpus::{self, sample_indices, CorpusFormat, SampleSize, SampleSpec};
use romankit::metrics::{compute_metrics, compute_metrics_as};
use romankit::overlap::{overlap_plan, BaseVocab};
use romankit::pipeline::{run_pipeline, run_pipeline_full, PipelineConfig};
use romankit::romanizer::{default_rules, romanize, RomanizeOptions};
use romankit::strategies::{RandMap, StrategySpec};
use romankit::tokenizer::{train_wordpiece, TokenizerModel, TrainConfig};
use romankit::ExactMetrics;

use common::{random_corpus, random_model, random_word, reference_encode, tally};

const SCRIPTS: [&str; 9] = ["deva", "arab", "cyrl", "geor", "ethi", "thaa", "khmr", "sinh", "tibt"];
const FIXTURE_VOCAB: usize = 2000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn reference_words() -> Outcome {
    let cases = [
        ("जॉर्जियन भासा", "jorjiyan bhaasaa"),
        ("ග්‍රහලෝක", "grahalooka"),
        ("ايران", "ayran"),
        ("សេដ្ឋកិច្ច", "sedtthakicca"),
    ];
    for (input, expected) in cases {
        let got = romanize(input, default_rules(), &RomanizeOptions::default());
        check(got == expected, || format!("{input:?} -> {got:?}, expected {expected:?}"))?;
    }
    Ok(format!("{} words exact", cases.len()))
}

struct FixtureRun {
    script: &'static str,
    unk_before: f64,
    unk_after: f64,
    overlap_before: f64,
    overlap_after: f64,
}

fn fixture_config(script: &str, strategy: Option<StrategySpec>) -> PipelineConfig {
    let mut config = PipelineConfig::new(script, fixtures().join("corpora").join(format!("{script}.txt")));
    config.strategy = strategy;
    config.base_vocab = Some(fixtures().join("base.vocab"));
    config.train.vocab_size = FIXTURE_VOCAB;
    config
}

fn fixture_runs() -> Result<Vec<FixtureRun>, String> {
    SCRIPTS
        .par_iter()
        .map(|&script| {
            let before = run_pipeline(&fixture_config(script, None)).map_err(|e| e.to_string())?;
            let after = run_pipeline(&fixture_config(script, Some(StrategySpec::Universal))).map_err(|e| e.to_string())?;
            check(before.corpus.source_sentences >= 500, || format!("{script}: fewer than 500 sentences"))?;
            let unk = |r: &romankit::pipeline::PipelineReport| r.metrics.base.as_ref().unwrap().metrics.pct_unk;
            let ratio = |r: &romankit::pipeline::PipelineReport| r.overlap.as_ref().unwrap().summary.overlap_ratio;
            Ok(FixtureRun {
                script,
                unk_before: unk(&before),
                unk_after: unk(&after),
                overlap_before: ratio(&before),
                overlap_after: ratio(&after),
            })
        })
        .collect()
}

fn unk_reduction() -> Outcome {
    let runs = fixture_runs()?;
    let mut detail = Vec::new();
    for r in &runs {
        check(r.unk_after < r.unk_before, || {
            format!("{}: pct_unk {:.4} -> {:.4}", r.script, r.unk_before, r.unk_after)
        })?;
        detail.push(format!("{} {:.3}->{:.3}", r.script, r.unk_before, r.unk_after));
    }
    Ok(detail.join(", "))
}

fn metric_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(301);
    let mut worst = 0.0f64;
    for case in 0..100 {
        let size = rng.gen_range(1..120);
        let model = random_model(&mut rng, size);
        let corpus = random_corpus(&mut rng, 1000);
        let c = tally(&model, &corpus);
        let exact: ExactMetrics = compute_metrics_as(&corpus, &model);
        let expect = |n: u64, d: u64| Rational64::new(n as i64, d as i64);
        check(
            exact.counts == c
                && exact.pct_unk == expect(c.unk_count, c.total_subwords)
                && exact.fertility == expect(c.total_subwords, c.total_words)
                && exact.continued_proportion == expect(c.words_split, c.total_words),
            || format!("corpus {case}: exact metrics differ from tally"),
        )?;
        let m = compute_metrics(&corpus, &model);
        for (got, n, d) in [
            (m.pct_unk, c.unk_count, c.total_subwords),
            (m.fertility, c.total_subwords, c.total_words),
            (m.continued_proportion, c.words_split, c.total_words),
        ] {
            worst = worst.max((got - n as f64 / d as f64).abs());
        }
    }
    check(worst < 1e-12, || format!("max float error {worst:e}"))?;
    Ok(format!("100 corpora, exact rationals equal, max float error {worst:e}"))
}

fn encoder_contract() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(401);
    let (mut known, mut unknown) = (0, 0);
    for batch in 0..20 {
        let size = rng.gen_range(5..150);
        let model = random_model(&mut rng, size);
        for _ in 0..500 {
            let word = random_word(&mut rng, 12);
            let got = model.encode_word(&word);
            match reference_encode(&model, &word) {
                Some(expected) => {
                    check(got == expected, || format!("batch {batch}: {word:?} -> {got:?}, reference {expected:?}"))?;
                    let back = model.detokenize_word(&model.encode_word_ids(&word));
                    check(back == word, || format!("roundtrip {word:?} -> {back:?}"))?;
                    known += 1;
                }
                None => {
                    check(got == ["[UNK]"], || format!("{word:?} -> {got:?}, reference UNK"))?;
                    unknown += 1;
                }
            }
        }
    }
    Ok(format!("10000 words ({known} segmented and round-tripped, {unknown} unknown)"))
}

fn rand_map_bytes(seed: u64) -> Vec<u8> {
    let map = RandMap::new(seed);
    (0x80u32..=0xFFFF).filter_map(char::from_u32).map(|c| map.map(c) as u8).collect()
}

fn train_bytes(corpus: &[String], workers: usize, dir: &Path) -> Result<Vec<u8>, String> {
    let model = train_wordpiece(corpus, &TrainConfig {
        vocab_size: 1500,
        workers,
        ..Default::default()
    })
    .map_err(|e| e.to_string())?;
    let path = dir.join(format!("w{workers}.vocab"));
    model.save(&path).map_err(|e| e.to_string())?;
    let mut bytes = std::fs::read(&path).map_err(|e| e.to_string())?;
    bytes.extend(std::fs::read(path.with_extension("vocab.json")).map_err(|e| e.to_string())?);
    Ok(bytes)
}

fn report_bytes(script: &str, workers: usize, dir: &Path) -> Result<Vec<u8>, String> {
    let mut config = fixture_config(script, Some(StrategySpec::Rand { seed: 5 }));
    config.train.workers = workers;
    config.train.vocab_size = 800;
    config.sample = SampleSpec::new(SampleSize::Count(300), 17).map_err(|e| e.to_string())?;
    let out_dir = dir.join(format!("{script}-w{workers}"));
    config.output_dir = Some(out_dir.clone());
    let mut report = run_pipeline_full(&config).map_err(|e| e.to_string())?.report;
    report.generated_at = 0;
    let mut bytes = report.to_json().into_bytes();
    for f in ["sample.txt", "transliterated.txt", "tokenizer.vocab", "tokenizer.vocab.json", "overlap_plan.json"] {
        bytes.extend(std::fs::read(out_dir.join(f)).map_err(|e| format!("{f}: {e}"))?);
    }
    Ok(bytes)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let store = corpus::ingest(&fixtures().join("corpora/deva.txt"), CorpusFormat::PlainLines).map_err(|e| e.to_string())?;
    let mut compared = 0;
    for run in 0..2 {
        for seed in [0u64, 7, 123_456_789] {
            check(rand_map_bytes(seed) == rand_map_bytes(seed), || format!("rand map seed {seed} differs"))?;
            let spec = SampleSpec::new(SampleSize::Count(100), seed).map_err(|e| e.to_string())?;
            check(
                corpus::sample(&store, &spec).to_text() == corpus::sample(&store, &spec).to_text()
                    && sample_indices(store.len(), 100, seed) == sample_indices(store.len(), 100, seed),
                || format!("sample seed {seed} differs"),
            )?;
            compared += 2;
        }
        let run_dir = dir.path().join(format!("run{run}"));
        std::fs::create_dir_all(&run_dir).map_err(|e| e.to_string())?;
        let one = train_bytes(store.sentences(), 1, &run_dir)?;
        let four = train_bytes(store.sentences(), 4, &run_dir)?;
        check(one == four, || "vocab files differ between 1 and 4 workers".into())?;
        for script in ["deva", "khmr"] {
            let a = report_bytes(script, 1, &run_dir)?;
            let b = report_bytes(script, 4, &run_dir)?;
            check(a == b, || format!("{script}: pipeline outputs differ between 1 and 4 workers"))?;
            compared += 1;
        }
        compared += 1;
    }
    let first = std::fs::read(dir.path().join("run0/w1.vocab")).map_err(|e| e.to_string())?;
    let second = std::fs::read(dir.path().join("run1/w1.vocab")).map_err(|e| e.to_string())?;
    check(first == second, || "vocab files differ between runs".into())?;
    let a = std::fs::read(dir.path().join("run0/deva-w1/overlap_plan.json")).map_err(|e| e.to_string())?;
    let b = std::fs::read(dir.path().join("run1/deva-w4/overlap_plan.json")).map_err(|e| e.to_string())?;
    check(a == b, || "pipeline artifacts differ between runs".into())?;
    Ok(format!("{compared} byte comparisons across 2 runs and 1/4 workers"))
}

/// Random strings mixing ASCII, script blocks, marks, joiners, whitespace
/// and arbitrary scalar values.
fn fuzz_string(rng: &mut ChaCha8Rng) -> String {
    let n = rng.gen_range(0..24);
    (0..n)
        .map(|_| match rng.gen_range(0..6) {
            0 => char::from(rng.gen_range(0u8..0x80)),
            1 => char::from_u32(rng.gen_range(0x0900..0x0E00)).unwrap(),
            2 => *[' ', '\n', '\t', '\u{200D}', '\u{200C}', '\u{3000}', '\u{A0}'].get(rng.gen_range(0..7)).unwrap(),
            3 => char::from_u32(rng.gen_range(0x80..0x3000)).unwrap(),
            _ => loop {
                if let Some(c) = char::from_u32(rng.gen_range(0..=0x10FFFF)) {
                    break c;
                }
            },
        })
        .collect()
}

fn totality() -> Outcome {
    const STRINGS: u64 = 1_000_000;
    const CHUNK: u64 = 10_000;
    let opts = RomanizeOptions::default();
    let rules = default_rules();
    let failures: Vec<String> = (0..STRINGS / CHUNK)
        .into_par_iter()
        .filter_map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(600 + chunk);
            for _ in 0..CHUNK {
                let text = fuzz_string(&mut rng);
                let once = romanize(&text, rules, &opts);
                let ok_alphabet = once
                    .chars()
                    .all(|c| (' '..='~').contains(&c) || (c.is_whitespace() && text.contains(c)));
                if !ok_alphabet {
                    return Some(format!("{text:?} -> {once:?} leaves the output alphabet"));
                }
                let twice = romanize(&once, rules, &opts);
                if twice != once {
                    return Some(format!("{text:?}: {once:?} then {twice:?}"));
                }
            }
            None
        })
        .collect();
    match failures.first() {
        Some(f) => Err(f.clone()),
        None => Ok(format!("{STRINGS} strings total, in alphabet and idempotent")),
    }
}

fn overlap_properties() -> Outcome {
    let tokens: Vec<String> = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]", "a", "b", "##b", "ab"]
        .map(String::from)
        .to_vec();
    let model = TokenizerModel::from_tokens(tokens.clone(), Default::default()).map_err(|e| e.to_string())?;
    let same = overlap_plan(&model, &BaseVocab::from_tokens(tokens).map_err(|e| e.to_string())?);
    check(same.overlap_ratio == 1.0, || format!("identity ratio {}", same.overlap_ratio))?;
    let disjoint = BaseVocab::from_tokens(["[PAD]", "[UNK]", "x", "##y"].map(String::from).to_vec()).map_err(|e| e.to_string())?;
    let none = overlap_plan(&model, &disjoint);
    check(none.overlap_ratio == 0.0, || format!("disjoint ratio {}", none.overlap_ratio))?;

    let runs = fixture_runs()?;
    let mut detail = Vec::new();
    for r in &runs {
        check(r.overlap_after > r.overlap_before, || {
            format!("{}: overlap {:.4} -> {:.4}", r.script, r.overlap_before, r.overlap_after)
        })?;
        detail.push(format!("{} {:.3}->{:.3}", r.script, r.overlap_before, r.overlap_after));
    }
    Ok(format!("identity 1, disjoint 0; {}", detail.join(", ")))
}

/// Identifiers that would indicate model training or downstream evaluation.
const NEURAL_MARKERS: [&str; 12] = [
    "tch", "torch", "candle", "onnx", "ort", "tensorflow", "burn", "mbert", "adapter", "macro_f1", "uas", "las",
];

fn non_reproduction() -> Outcome {
    let root = workspace_root();
    let readme = std::fs::read_to_string(root.join("README.md")).map_err(|e| format!("README.md: {e}"))?;
    let lower = readme.replace('*', "").split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase();
    check(
        lower.contains("not reproduced") && readme.contains("NER") && readme.contains("UAS") && readme.contains("LAS"),
        || "README lacks the statement that NER/UAS/LAS results are not reproduced".into(),
    )?;

    let mut files = Vec::new();
    for krate in ["crates/core", "crates/cli"] {
        files.push(root.join(krate).join("Cargo.toml"));
        collect_rs(&root.join(krate).join("src"), &mut files);
    }
    files.push(root.join("Cargo.toml"));
    for path in &files {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?.to_lowercase();
        let words: Vec<&str> = text.split(|c: char| !c.is_ascii_alphanumeric() && c != '_').collect();
        if let Some(m) = NEURAL_MARKERS.iter().find(|m| words.contains(m)) {
            return Err(format!("{} mentions {m:?}", path.display()));
        }
    }
    let lock = std::fs::read_to_string(root.join("Cargo.lock")).map_err(|e| format!("Cargo.lock: {e}"))?;
    for line in lock.lines().filter_map(|l| l.strip_prefix("name = ")) {
        let name = line.trim_matches('"');
        check(!NEURAL_MARKERS.contains(&name), || format!("dependency {name} is a neural-network crate"))?;
    }
    Ok(format!("README statement present; {} source files and Cargo.lock free of neural code", files.len()))
}

fn collect_rs(dir: &Path, out: &mut Vec<PathBuf>) {
    let Ok(entries) = std::fs::read_dir(dir) else {
        return;
    };
    for entry in entries.flatten() {
        let p = entry.path();
        if p.is_dir() {
            collect_rs(&p, out);
        } else if p.extension().is_some_and(|e| e == "rs") {
            out.push(p);
        }
    }
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("reference romanization words", Duration::from_secs(1), reference_words),
        ("UNK reduction on fixture corpora", Duration::from_secs(30), unk_reduction),
        ("metric oracle equivalence", Duration::from_secs(60), metric_oracle),
        ("tokenizer encode contract", Duration::from_secs(60), encoder_contract),
        ("determinism", Duration::from_secs(120), determinism),
        ("romanizer totality and idempotence", Duration::from_secs(300), totality),
        ("overlap properties", Duration::from_secs(30), overlap_properties),
        ("non-reproduction statement", Duration::from_secs(5), non_reproduction),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= *budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("over time budget; {d}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {}: {status} {name} [{:.2}s / {}s] {detail}",
            i + 1,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
