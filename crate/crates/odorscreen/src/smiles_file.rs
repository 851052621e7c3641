//! The plain SMILES text handoff: one molecule per line, an optional name
//! after the first whitespace. Blank lines and `#` comments are skipped.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{io_err, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmilesLine {
    /// 1-based line number in the source file.
    pub line: usize,
    pub smiles: String,
    pub name: Option<String>,
}

pub fn parse_smiles_text(text: &str) -> Vec<SmilesLine> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                return None;
            }
            let (smiles, name) = match trimmed.split_once(char::is_whitespace) {
                Some((s, rest)) => (s, Some(rest.trim().to_owned()).filter(|n| !n.is_empty())),
                None => (trimmed, None),
            };
            Some(SmilesLine {
                line: i + 1,
                smiles: smiles.to_owned(),
                name,
            })
        })
        .collect()
}

/// Reads a SMILES file; an empty one is an error.
pub fn read_smiles_file(path: &Path) -> Result<Vec<SmilesLine>> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let lines = parse_smiles_text(&text);
    if lines.is_empty() {
        return Err(Error::EmptyInput { path: path.to_owned() });
    }
    Ok(lines)
}

pub fn write_smiles_file<S: AsRef<str>>(path: &Path, smiles: &[S]) -> Result<()> {
    let mut f = fs::File::create(path).map_err(io_err(path))?;
    for s in smiles {
        writeln!(f, "{}", s.as_ref()).map_err(io_err(path))?;
    }
    Ok(())
}
