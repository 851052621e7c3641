//! Labelled odorant CSV ingestion.

use std::collections::{BTreeSet, HashSet};
use std::path::Path;

use log::{info, warn};
use odorscreen_core::descriptors::{descriptor_vector, FeatureSchema};
use odorscreen_core::likeliness::Matrix;
use odorscreen_core::smiles::parse_canonical;
use odorscreen_core::Molecule;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LabelFormat {
    /// One 0/1 column per label. `None` takes every column other than the
    /// SMILES column whose values are all 0 or 1.
    OneHot { columns: Option<Vec<String>> },
    /// A single column of labels joined by `separator`.
    Delimited { column: String, separator: char },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetConfig {
    pub smiles_column: String,
    pub labels: LabelFormat,
    /// A label marking a molecule as odorless. Never kept in label sets.
    pub odorless_marker: String,
}

impl Default for DatasetConfig {
    fn default() -> Self {
        DatasetConfig {
            smiles_column: "nonStereoSMILES".into(),
            labels: LabelFormat::Delimited {
                column: "descriptors".into(),
                separator: ';',
            },
            odorless_marker: "odorless".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetEntry {
    /// 1-based data row in the source file (header excluded).
    pub row: usize,
    pub canonical: String,
    pub molecule: Molecule,
    pub labels: BTreeSet<String>,
    pub odorous: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Dataset {
    pub entries: Vec<DatasetEntry>,
    pub dropped_invalid: usize,
    pub dropped_duplicate: usize,
}

impl Dataset {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn canonical_set(&self) -> HashSet<&str> {
        self.entries.iter().map(|e| e.canonical.as_str()).collect()
    }

    pub fn vocabulary(&self) -> BTreeSet<&str> {
        self.entries
            .iter()
            .flat_map(|e| e.labels.iter().map(String::as_str))
            .collect()
    }

    /// Raw descriptor rows under `schema` and 0/1 odorous labels.
    pub fn feature_matrix(&self, schema: &FeatureSchema) -> Result<(Matrix, Vec<u8>)> {
        let rows: Vec<Vec<f64>> = self
            .entries
            .par_iter()
            .map(|e| descriptor_vector(&e.molecule, schema).values)
            .collect();
        let labels = self.entries.iter().map(|e| u8::from(e.odorous)).collect();
        Ok((Matrix::from_rows(&rows)?, labels))
    }
}

fn column(headers: &csv::StringRecord, name: &str, path: &Path) -> Result<usize> {
    headers.iter().position(|h| h == name).ok_or_else(|| Error::MissingColumn {
        path: path.to_owned(),
        column: name.to_owned(),
    })
}

fn is_flag(v: &str) -> bool {
    matches!(v.trim(), "0" | "1" | "0.0" | "1.0")
}

fn flag_set(v: &str) -> bool {
    matches!(v.trim(), "1" | "1.0")
}

/// Loads a CSV dataset. Rows that fail parsing or sanitization are dropped,
/// as are later repeats of a canonical SMILES; both are counted.
pub fn load_dataset(path: &Path, config: &DatasetConfig) -> Result<Dataset> {
    let csv_err = |source| Error::Csv {
        path: path.to_owned(),
        source,
    };
    let mut reader = csv::ReaderBuilder::new().flexible(false).from_path(path).map_err(csv_err)?;
    let headers = reader.headers().map_err(csv_err)?.clone();
    let smiles_col = column(&headers, &config.smiles_column, path)?;
    let records: Vec<csv::StringRecord> = reader.records().collect::<Result<_, _>>().map_err(csv_err)?;
    if records.is_empty() {
        return Err(Error::EmptyDataset { path: path.to_owned() });
    }

    enum Resolved {
        OneHot(Vec<(usize, String)>),
        Delimited(usize, char),
    }
    let resolved = match &config.labels {
        LabelFormat::OneHot { columns: Some(names) } => Resolved::OneHot(
            names
                .iter()
                .map(|n| Ok((column(&headers, n, path)?, n.clone())))
                .collect::<Result<_>>()?,
        ),
        LabelFormat::OneHot { columns: None } => Resolved::OneHot(
            headers
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != smiles_col && records.iter().all(|r| is_flag(&r[j])))
                .map(|(j, h)| (j, h.to_owned()))
                .collect(),
        ),
        LabelFormat::Delimited { column: c, separator } => Resolved::Delimited(column(&headers, c, path)?, *separator),
    };

    let marker = config.odorless_marker.as_str();
    let parsed: Vec<Option<DatasetEntry>> = records
        .par_iter()
        .enumerate()
        .map(|(i, rec)| {
            let (molecule, canonical) = parse_canonical(rec[smiles_col].trim()).ok()?;
            let raw: Vec<String> = match &resolved {
                Resolved::OneHot(cols) => cols
                    .iter()
                    .filter(|(j, _)| flag_set(&rec[*j]))
                    .map(|(_, n)| n.clone())
                    .collect(),
                Resolved::Delimited(j, sep) => rec[*j]
                    .split(*sep)
                    .map(str::trim)
                    .filter(|l| !l.is_empty())
                    .map(str::to_owned)
                    .collect(),
            };
            let odorless = raw.iter().any(|l| l == marker);
            let labels: BTreeSet<String> = raw.into_iter().filter(|l| l != marker).collect();
            Some(DatasetEntry {
                row: i + 1,
                canonical,
                molecule,
                odorous: !odorless && !labels.is_empty(),
                labels,
            })
        })
        .collect();

    let mut out = Dataset::default();
    let mut seen = HashSet::new();
    for entry in parsed {
        match entry {
            None => out.dropped_invalid += 1,
            Some(e) if !seen.insert(e.canonical.clone()) => out.dropped_duplicate += 1,
            Some(e) => out.entries.push(e),
        }
    }
    if out.dropped_invalid > 0 {
        warn!("{}: dropped {} rows that failed parsing or sanitization", path.display(), out.dropped_invalid);
    }
    info!(
        "{}: {} molecules ({} odorous), {} duplicates collapsed",
        path.display(),
        out.len(),
        out.entries.iter().filter(|e| e.odorous).count(),
        out.dropped_duplicate
    );
    if out.is_empty() {
        return Err(Error::EmptyDataset { path: path.to_owned() });
    }
    Ok(out)
}
