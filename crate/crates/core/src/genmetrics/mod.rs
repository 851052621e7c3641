//! Set-level metrics for generated molecules: validity, uniqueness,
//! novelty, diversity, nearest-neighbour and scaffold similarity, and
//! per-descriptor KS tests.

mod ks;
mod similarity;

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

pub use ks::{kolmogorov_sf, ks_pvalue, ks_statistic};
pub use similarity::{internal_diversity, scaffold_similarity, snn, tanimoto};

use crate::descriptors::{descriptor_vector, ecfp4, FeatureSchema, Fingerprint};
use crate::mol::Molecule;
use crate::molgraph::murcko_scaffold;
use crate::smiles::parse_canonical;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenMetricsError {
    #[error("empty input set")]
    EmptyInput,
    #[error("need at least 2 molecules, got {0}")]
    TooFewMolecules(usize),
    #[error("fingerprint widths differ: {0} vs {1}")]
    WidthMismatch(usize, usize),
}

/// A molecule that passed parsing and sanitization.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidMolecule {
    /// Position in the input list.
    pub index: usize,
    pub canonical: String,
    pub molecule: Molecule,
}

/// Parses, prepares and sanitizes every entry; returns the valid fraction
/// and the valid entries in input order.
pub fn validity<S: AsRef<str>>(smiles: &[S]) -> Result<(f64, Vec<ValidMolecule>), GenMetricsError> {
    if smiles.is_empty() {
        return Err(GenMetricsError::EmptyInput);
    }
    let valid: Vec<ValidMolecule> = smiles
        .iter()
        .enumerate()
        .filter_map(|(index, s)| {
            parse_canonical(s.as_ref().trim()).ok().map(|(molecule, canonical)| ValidMolecule {
                index,
                canonical,
                molecule,
            })
        })
        .collect();
    Ok((valid.len() as f64 / smiles.len() as f64, valid))
}

/// Distinct fraction of a canonical list.
pub fn uniqueness<S: AsRef<str>>(canonical: &[S]) -> Result<f64, GenMetricsError> {
    if canonical.is_empty() {
        return Err(GenMetricsError::EmptyInput);
    }
    let distinct: BTreeSet<&str> = canonical.iter().map(AsRef::as_ref).collect();
    Ok(distinct.len() as f64 / canonical.len() as f64)
}

/// Fraction of distinct generated strings absent from `training`.
pub fn novelty<S: AsRef<str>, T: AsRef<str>>(generated: &[S], training: &[T]) -> Result<f64, GenMetricsError> {
    if generated.is_empty() {
        return Err(GenMetricsError::EmptyInput);
    }
    let train: BTreeSet<&str> = training.iter().map(AsRef::as_ref).collect();
    let distinct: BTreeSet<&str> = generated.iter().map(AsRef::as_ref).collect();
    let novel = distinct.iter().filter(|g| !train.contains(*g)).count();
    Ok(novel as f64 / distinct.len() as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KsResult {
    pub descriptor: String,
    pub statistic: f64,
    pub p_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkReport {
    pub schema_version: u32,
    pub total: usize,
    pub valid: usize,
    pub unique: usize,
    pub novel: usize,
    pub validity: f64,
    pub uniqueness: f64,
    pub novelty: f64,
    /// `None` when fewer than two generated molecules are valid.
    pub diversity: Option<f64>,
    pub snn: f64,
    pub scaff: f64,
    pub ks: Vec<KsResult>,
}

struct Prepared {
    canonical: Vec<String>,
    fps: Vec<Fingerprint>,
    scaffolds: Vec<String>,
    descriptors: Vec<Vec<f64>>,
}

fn prepare_set(valid: &[ValidMolecule], schema: &FeatureSchema) -> Prepared {
    Prepared {
        canonical: valid.iter().map(|v| v.canonical.clone()).collect(),
        fps: valid.iter().map(|v| ecfp4(&v.molecule)).collect(),
        scaffolds: valid.iter().map(|v| murcko_scaffold(&v.molecule).smiles()).collect(),
        descriptors: valid
            .iter()
            .map(|v| descriptor_vector(&v.molecule, schema).values)
            .collect(),
    }
}

/// Scores a generated list against a training list. Invalid training
/// entries are skipped; metrics needing valid generated molecules fail
/// with `EmptyInput` when there are none.
pub fn benchmark<S: AsRef<str>, T: AsRef<str>>(generated: &[S], training: &[T]) -> Result<BenchmarkReport, GenMetricsError> {
    let (validity_ratio, gen_valid) = validity(generated)?;
    let (_, train_valid) = validity(training)?;
    if gen_valid.is_empty() || train_valid.is_empty() {
        return Err(GenMetricsError::EmptyInput);
    }
    let schema = FeatureSchema::eq4();
    let g = prepare_set(&gen_valid, &schema);
    let t = prepare_set(&train_valid, &schema);

    let distinct: BTreeSet<&str> = g.canonical.iter().map(String::as_str).collect();
    let train_set: BTreeSet<&str> = t.canonical.iter().map(String::as_str).collect();
    let novel = distinct.iter().filter(|c| !train_set.contains(*c)).count();

    let diversity = if g.fps.len() >= 2 {
        Some(internal_diversity(&g.fps)?)
    } else {
        None
    };
    let ks = schema
        .names()
        .into_iter()
        .enumerate()
        .map(|(j, name)| {
            let a: Vec<f64> = g.descriptors.iter().map(|r| r[j]).collect();
            let b: Vec<f64> = t.descriptors.iter().map(|r| r[j]).collect();
            let statistic = ks_statistic(&a, &b)?;
            Ok(KsResult {
                descriptor: name.to_string(),
                statistic,
                p_value: ks_pvalue(statistic, a.len(), b.len()),
            })
        })
        .collect::<Result<Vec<_>, GenMetricsError>>()?;

    Ok(BenchmarkReport {
        schema_version: REPORT_SCHEMA_VERSION,
        total: generated.len(),
        valid: gen_valid.len(),
        unique: distinct.len(),
        novel,
        validity: validity_ratio,
        uniqueness: uniqueness(&g.canonical)?,
        novelty: novelty(&g.canonical, &t.canonical)?,
        diversity,
        snn: snn(&g.fps, &t.fps)?,
        scaff: scaffold_similarity(&g.scaffolds, &t.scaffolds)?,
        ks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_ratios() {
        let (v, valid) = validity(&["CCO", "C1CC", "c1ccccc1", "xyz"]).unwrap();
        assert_eq!(v, 0.5);
        assert_eq!(valid.iter().map(|m| m.index).collect::<Vec<_>>(), [0, 2]);
        assert!(validity::<&str>(&[]).is_err());
        assert_eq!(uniqueness(&["CCO"; 10]).unwrap(), 0.1);
        assert_eq!(novelty(&["a", "b"], &["b", "c"]).unwrap(), 0.5);
        assert_eq!(novelty(&["a"], &["a"]).unwrap(), 0.0);
    }

    #[test]
    fn canonical_collapse() {
        let (_, valid) = validity(&["CCO", "OCC"]).unwrap();
        let canon: Vec<&str> = valid.iter().map(|v| v.canonical.as_str()).collect();
        assert_eq!(uniqueness(&canon).unwrap(), 0.5);
    }

    #[test]
    fn self_benchmark() {
        let set = ["CCO", "c1ccccc1C", "CC(=O)OCC", "O=C1CCCCC1", "CCCCCC=O"];
        let r = benchmark(&set, &set).unwrap();
        assert_eq!((r.validity, r.novelty, r.snn, r.scaff), (1.0, 0.0, 1.0, 1.0));
        assert!(r.ks.iter().all(|k| k.statistic == 0.0));
        assert_eq!(r.ks.len(), 5);
        assert!(benchmark::<&str, &str>(&[], &set).is_err());
    }
}
