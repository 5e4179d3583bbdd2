use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "romankit", version, about = "Universal romanization and tokenizer analysis")]
pub struct Cli {
    /// Seed for the rand strategy and for sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Report format written to stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Suppress reports on stdout; errors are still written to stderr.
    #[arg(long, short, global = true)]
    pub quiet: bool,

    /// Directory of *.rules files replacing the embedded universal tables.
    #[arg(long, global = true, env = "ROMANKIT_TABLE_DIR")]
    pub table_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Universal,
    Borrow,
    Rand,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Plain,
    Jsonl,
}

#[derive(Args, Debug, Clone)]
pub struct StrategyArgs {
    #[arg(long, value_enum, default_value_t = StrategyArg::Universal)]
    pub strategy: StrategyArg,

    /// Rule table for the borrow strategy.
    #[arg(long)]
    pub table: Option<PathBuf>,

    /// Emit this character for codepoints nothing can romanize (default: drop them).
    #[arg(long)]
    pub placeholder: Option<char>,

    /// Keep the case of rule and fallback output.
    #[arg(long)]
    pub keep_case: bool,

    /// Leave non-ASCII decimal digits to the other fallbacks.
    #[arg(long)]
    pub no_digit_map: bool,
}

#[derive(Args, Debug, Clone)]
pub struct TokenizerArgs {
    #[arg(long, default_value_t = romankit::tokenizer::DEFAULT_VOCAB_SIZE)]
    pub vocab_size: usize,

    /// Comma-separated special tokens, in id order.
    #[arg(long, value_delimiter = ',', default_values_t = romankit::tokenizer::DEFAULT_SPECIALS.map(String::from))]
    pub specials: Vec<String>,

    #[arg(long, default_value = romankit::tokenizer::DEFAULT_UNK)]
    pub unk_token: String,

    /// Threads for word counting; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Transliterate a file to Latin script.
    Romanize {
        #[arg(long, short)]
        input: PathBuf,
        /// Defaults to stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[command(flatten)]
        strategy: StrategyArgs,
    },
    /// Dump the seeded random map for a codepoint range or a corpus's characters.
    RandMap {
        /// Map every non-ASCII character occurring in this file.
        #[arg(long, short, conflicts_with = "range")]
        input: Option<PathBuf>,
        /// Codepoint range in hex, e.g. 0900-097F.
        #[arg(long, default_value = "0080-FFFF")]
        range: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Train a WordPiece vocabulary.
    TrainTokenizer {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = InputFormat::Plain)]
        input_format: InputFormat,
        /// Vocabulary file; the metadata sidecar is written next to it.
        #[arg(long, short)]
        output: PathBuf,
        #[command(flatten)]
        tokenizer: TokenizerArgs,
    },
    /// Tokenize a corpus, one line of space-separated tokens per sentence.
    Tokenize {
        #[arg(long)]
        vocab: PathBuf,
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = InputFormat::Plain)]
        input_format: InputFormat,
        /// Defaults to stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Unknown-token rate, fertility and continued-word share.
    Metrics {
        #[arg(long)]
        vocab: PathBuf,
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = InputFormat::Plain)]
        input_format: InputFormat,
        /// Label for the CSV row.
        #[arg(long, default_value = "")]
        label: String,
    },
    /// Lexical overlap with a base vocabulary and the embedding plan.
    Overlap {
        #[arg(long)]
        vocab: PathBuf,
        #[arg(long)]
        base: PathBuf,
        #[arg(long, default_value_t = romankit::pipeline::DEFAULT_TOP_N)]
        top: usize,
        /// Write the per-token plan as JSON.
        #[arg(long)]
        plan: Option<PathBuf>,
    },
    /// Draw a seeded sample of sentences.
    Sample {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = InputFormat::Plain)]
        input_format: InputFormat,
        /// A sentence count or "full".
        #[arg(long)]
        size: String,
        /// Defaults to stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Sample, transliterate, train, measure and plan in one run.
    Pipeline {
        #[arg(long, short)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = InputFormat::Plain)]
        input_format: InputFormat,
        /// Label used in reports and plot rows.
        #[arg(long)]
        language: String,
        #[command(flatten)]
        strategy: StrategyArgs,
        /// Train on the original script.
        #[arg(long)]
        no_romanize: bool,
        #[command(flatten)]
        tokenizer: TokenizerArgs,
        /// A sentence count or "full".
        #[arg(long, default_value = "full")]
        sample_size: String,
        /// Base vocabulary for metrics and overlap.
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long, default_value_t = romankit::pipeline::DEFAULT_TOP_N)]
        top: usize,
        /// Directory for intermediate artifacts.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Also write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Compare a before and an after pipeline report.
    Compare {
        #[arg(long)]
        before: PathBuf,
        #[arg(long)]
        after: PathBuf,
        /// Write plot rows (language, metric, before, after) as CSV.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
}
