//! Regenerate the shipped fixtures from the word lists:
//!
//!     cargo run -p romankit --example make_fixtures
//!
//! Writes `fixtures/corpora/<script>.txt` (600 seeded sentences each),
//! `fixtures/base.vocab` (a Latin-only WordPiece vocabulary trained on
//! `wordlists/english.txt`, plus every printable ASCII character in both
//! positions) and `fixtures/golden/deva.universal.txt`.

use std::fs;
use std::path::Path;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use romankit::romanizer::{default_rules, romanize, RomanizeOptions};
use romankit::tokenizer::{train_wordpiece, TrainConfig};

const SENTENCES: usize = 600;
const BASE_VOCAB_SIZE: usize = 1500;

/// How a script lays out words: separated by spaces, or run together into
/// space-separated phrases with an optional joiner.
enum Layout {
    Spaced { end: &'static str },
    Phrases { joiner: &'static str, sep: &'static str, end: &'static str },
}

const SCRIPTS: &[(&str, Layout)] = &[
    ("deva", Layout::Spaced { end: " ।" }),
    ("arab", Layout::Spaced { end: "." }),
    ("cyrl", Layout::Spaced { end: "." }),
    ("geor", Layout::Spaced { end: "." }),
    ("ethi", Layout::Spaced { end: "።" }),
    ("thaa", Layout::Spaced { end: "." }),
    ("khmr", Layout::Phrases { joiner: "", sep: " ", end: "។" }),
    ("sinh", Layout::Spaced { end: "." }),
    ("tibt", Layout::Phrases { joiner: "་", sep: "། ", end: "།" }),
];

fn pick(rng: &mut ChaCha8Rng, n: usize) -> usize {
    (rng.next_u64() % n as u64) as usize
}

fn sentence(rng: &mut ChaCha8Rng, words: &[&str], layout: &Layout) -> String {
    match layout {
        Layout::Spaced { end } => {
            let n = 4 + pick(rng, 9);
            let mut s: Vec<&str> = (0..n).map(|_| words[pick(rng, words.len())]).collect();
            if pick(rng, 4) == 0 {
                s.push("2024");
            }
            format!("{}{end}", s.join(" "))
        }
        Layout::Phrases { joiner, sep, end } => {
            let phrases = 1 + pick(rng, 3);
            let p: Vec<String> = (0..phrases)
                .map(|_| {
                    let n = 2 + pick(rng, 3);
                    (0..n).map(|_| words[pick(rng, words.len())]).collect::<Vec<_>>().join(joiner)
                })
                .collect();
            format!("{}{end}", p.join(sep))
        }
    }
}

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    fs::create_dir_all(root.join("corpora")).unwrap();
    fs::create_dir_all(root.join("golden")).unwrap();

    for (i, (script, layout)) in SCRIPTS.iter().enumerate() {
        let list = fs::read_to_string(root.join("wordlists").join(format!("{script}.txt"))).unwrap();
        let words: Vec<&str> = list.split_whitespace().collect();
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + i as u64);
        let mut text = String::new();
        for _ in 0..SENTENCES {
            text.push_str(&sentence(&mut rng, &words, layout));
            text.push('\n');
        }
        fs::write(root.join("corpora").join(format!("{script}.txt")), &text).unwrap();
        if *script == "deva" {
            let golden = romanize(&text, default_rules(), &RomanizeOptions::default());
            fs::write(root.join("golden").join("deva.universal.txt"), golden).unwrap();
        }
    }

    let english = fs::read_to_string(root.join("wordlists").join("english.txt")).unwrap();
    let mut corpus: Vec<String> = english.lines().map(str::to_owned).collect();
    corpus.extend(english.lines().map(str::to_lowercase));
    let model = train_wordpiece(&corpus, &TrainConfig {
        vocab_size: BASE_VOCAB_SIZE,
        ..Default::default()
    })
    .unwrap();
    let mut tokens = model.tokens().to_vec();
    for c in '!'..='~' {
        for t in [c.to_string(), format!("##{c}")] {
            if !tokens.contains(&t) {
                tokens.push(t);
            }
        }
    }
    let mut out = tokens.join("\n");
    out.push('\n');
    fs::write(root.join("base.vocab"), out).unwrap();
    println!("wrote fixtures to {}", root.display());
}
