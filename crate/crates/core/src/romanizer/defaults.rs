use std::path::Path;
use std::sync::OnceLock;

use super::rules::{RuleSet, RuleSetBuilder};
use crate::error::{Error, Result};

pub const DEFAULT_PROVENANCE: &str = "universal-default";

macro_rules! table {
    ($name:literal) => {
        (
            concat!($name, ".rules"),
            include_str!(concat!("../../tables/", $name, ".rules")),
        )
    };
}

static TABLES: &[(&str, &str)] = &[
    table!("common"),
    table!("latin"),
    table!("greek"),
    table!("cyrillic"),
    table!("georgian"),
    table!("arabic"),
    table!("thaana"),
    table!("devanagari"),
    table!("sinhala"),
    table!("khmer"),
    table!("tibetan"),
    table!("ethiopic"),
    table!("han"),
];

/// The embedded default tables as `(file name, contents)`.
pub fn default_tables() -> &'static [(&'static str, &'static str)] {
    TABLES
}

/// The universal rule set built from the embedded tables.
pub fn default_rules() -> &'static RuleSet {
    static RULES: OnceLock<RuleSet> = OnceLock::new();
    RULES.get_or_init(|| {
        let mut builder = RuleSetBuilder::new(DEFAULT_PROVENANCE);
        for (name, text) in TABLES {
            builder
                .add_table(name, text)
                .unwrap_or_else(|e| panic!("embedded table is invalid: {e}"));
        }
        builder.build()
    })
}

/// Build one rule set from every `*.rules` file in `dir`, in file-name order.
pub fn load_table_dir(dir: &Path) -> Result<RuleSet> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "rules"))
        .collect();
    paths.sort();
    let mut builder = RuleSetBuilder::new(format!("dir:{}", dir.display()));
    for path in paths {
        let bytes = std::fs::read(&path).map_err(|e| Error::io(&path, e))?;
        let text = crate::unicode::decode_utf8(&bytes)?;
        let name = path.file_name().unwrap_or_default().to_string_lossy();
        builder.add_table(&name, text)?;
    }
    Ok(builder.build())
}
