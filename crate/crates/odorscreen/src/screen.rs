//! The screen: sanitize → canonicalize → dedupe → novelty → likeliness →
//! label suggestion, plus the PubChem existence check.

use std::collections::HashMap;

use odorscreen_core::likeliness::{evaluate_criteria, CriteriaResult};
use odorscreen_core::molgraph::{prepare, sanitize};
use odorscreen_core::smiles::{canonicalize_unchecked, parse_smiles};
use odorscreen_core::Molecule;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::knn::{LabelIndex, LabelSuggestion};
use crate::model::{Score, ScoringModel};
use crate::pubchem::{PubChemClient, PubChemStatus};
use crate::smiles_file::SmilesLine;

pub const SCREEN_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone)]
pub struct ScreenOptions {
    /// Neighbours consulted for label suggestions.
    pub knn_k: usize,
}

impl Default for ScreenOptions {
    fn default() -> Self {
        ScreenOptions { knn_k: 5 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SanitizeOutcome {
    pub ok: bool,
    /// Parse error, or the failed sanitization check ids.
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScreenRecord {
    pub line: usize,
    pub input: String,
    pub name: Option<String>,
    pub sanitize: SanitizeOutcome,
    pub canonical: Option<String>,
    /// Line of the first record with the same canonical SMILES.
    pub duplicate_of: Option<usize>,
    pub novel: Option<bool>,
    pub criteria: Option<CriteriaResult>,
    pub likeliness: Option<Score>,
    pub suggested_labels: Option<Vec<LabelSuggestion>>,
    pub pubchem: Option<PubChemStatus>,
}

impl ScreenRecord {
    /// Unique, valid and absent from the dataset: what the percentages count.
    pub fn counts_as_novel(&self) -> bool {
        self.novel == Some(true)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScreenSummary {
    pub total: usize,
    pub valid: usize,
    pub unique: usize,
    pub novel: usize,
    /// Percentages over the novel molecules; `None` when there are none.
    pub gdb17_percent: Option<f64>,
    pub rule_of_three_percent: Option<f64>,
    pub fl_property_percent: Option<f64>,
    pub logistic_percent: Option<f64>,
    pub labelled: usize,
    pub pubchem_known: usize,
    pub pubchem_unknown: usize,
    pub pubchem_unavailable: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScreenReport {
    pub schema_version: u32,
    pub model: String,
    pub records: Vec<ScreenRecord>,
    pub summary: ScreenSummary,
}

fn percent(hits: usize, of: usize) -> Option<f64> {
    (of > 0).then(|| 100.0 * hits as f64 / of as f64)
}

impl ScreenSummary {
    /// Tallies a summary from the records alone.
    pub fn tally(records: &[ScreenRecord]) -> ScreenSummary {
        let novel: Vec<&ScreenRecord> = records.iter().filter(|r| r.counts_as_novel()).collect();
        let count = |f: &dyn Fn(&CriteriaResult) -> bool| novel.iter().filter(|r| r.criteria.as_ref().is_some_and(f)).count();
        let pub_count = |s| records.iter().filter(|r| r.pubchem == Some(s)).count();
        ScreenSummary {
            total: records.len(),
            valid: records.iter().filter(|r| r.sanitize.ok).count(),
            unique: records.iter().filter(|r| r.sanitize.ok && r.duplicate_of.is_none()).count(),
            novel: novel.len(),
            gdb17_percent: percent(count(&|c| c.gdb17), novel.len()),
            rule_of_three_percent: percent(count(&|c| c.rule_of_three), novel.len()),
            fl_property_percent: percent(count(&|c| c.fl_property), novel.len()),
            logistic_percent: percent(
                novel.iter().filter(|r| r.likeliness.is_some_and(|s| s.odorous)).count(),
                novel.len(),
            ),
            labelled: records.iter().filter(|r| r.suggested_labels.is_some()).count(),
            pubchem_known: pub_count(PubChemStatus::Known),
            pubchem_unknown: pub_count(PubChemStatus::Unknown),
            pubchem_unavailable: pub_count(PubChemStatus::Unavailable),
        }
    }
}

struct Parsed {
    molecule: Option<Molecule>,
    sanitize: SanitizeOutcome,
    canonical: Option<String>,
}

fn parse_line(text: &str) -> Parsed {
    let mut mol = match parse_smiles(text) {
        Ok(m) => m,
        Err(e) => {
            return Parsed {
                molecule: None,
                sanitize: SanitizeOutcome {
                    ok: false,
                    errors: vec![format!("parse: {e}")],
                },
                canonical: None,
            }
        }
    };
    prepare(&mut mol);
    let report = sanitize(&mol);
    if !report.valid {
        let mut errors: Vec<String> = report.failures.iter().map(|f| f.check.as_str().to_owned()).collect();
        errors.dedup();
        return Parsed {
            molecule: None,
            sanitize: SanitizeOutcome { ok: false, errors },
            canonical: None,
        };
    }
    let canonical = canonicalize_unchecked(&mol);
    Parsed {
        molecule: Some(mol),
        sanitize: SanitizeOutcome {
            ok: true,
            errors: Vec::new(),
        },
        canonical: Some(canonical),
    }
}

/// Screens `lines` against `dataset` with `model`. Label suggestions need
/// `labels`; the PubChem check runs only when a client is given.
///
/// Per-molecule work runs in parallel; PubChem queries are issued one at a
/// time in record order so the cache and rate limit see a fixed sequence.
pub fn screen(
    lines: &[SmilesLine],
    dataset: &Dataset,
    model: &ScoringModel,
    labels: Option<&LabelIndex>,
    pubchem: Option<&PubChemClient>,
    options: &ScreenOptions,
) -> ScreenReport {
    let parsed: Vec<Parsed> = lines.par_iter().map(|l| parse_line(&l.smiles)).collect();

    let known = dataset.canonical_set();
    let mut first_seen: HashMap<&str, usize> = HashMap::new();
    let mut records: Vec<ScreenRecord> = Vec::with_capacity(lines.len());
    let mut unique: Vec<(usize, &Molecule)> = Vec::new();
    for (l, p) in lines.iter().zip(&parsed) {
        let mut rec = ScreenRecord {
            line: l.line,
            input: l.smiles.clone(),
            name: l.name.clone(),
            sanitize: p.sanitize.clone(),
            canonical: p.canonical.clone(),
            duplicate_of: None,
            novel: None,
            criteria: None,
            likeliness: None,
            suggested_labels: None,
            pubchem: None,
        };
        if let (Some(c), Some(m)) = (&p.canonical, &p.molecule) {
            match first_seen.get(c.as_str()) {
                Some(&line) => rec.duplicate_of = Some(line),
                None => {
                    first_seen.insert(c, l.line);
                    rec.novel = Some(!known.contains(c.as_str()));
                    unique.push((records.len(), m));
                }
            }
        }
        records.push(rec);
    }

    let scored: Vec<(CriteriaResult, Score, Option<Vec<LabelSuggestion>>)> = unique
        .par_iter()
        .map(|&(_, m)| {
            let score = model.score(m);
            let suggestions = match labels {
                Some(index) if score.odorous => Some(index.suggest(m, options.knn_k)),
                _ => None,
            };
            (evaluate_criteria(m), score, suggestions)
        })
        .collect();
    for (&(i, _), (criteria, score, suggestions)) in unique.iter().zip(scored) {
        let rec = &mut records[i];
        rec.criteria = Some(criteria);
        rec.likeliness = Some(score);
        rec.suggested_labels = suggestions;
    }

    if let Some(client) = pubchem {
        for &(i, _) in &unique {
            let canonical = records[i].canonical.clone().expect("unique records are valid");
            records[i].pubchem = Some(client.lookup(&canonical));
        }
    }

    let summary = ScreenSummary::tally(&records);
    ScreenReport {
        schema_version: SCREEN_SCHEMA_VERSION,
        model: model.id.clone(),
        records,
        summary,
    }
}
