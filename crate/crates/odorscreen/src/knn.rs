//! Nearest-neighbour odor label suggestions.

use std::collections::BTreeMap;

use odorscreen_core::descriptors::{ecfp4, Fingerprint};
use odorscreen_core::genmetrics::tanimoto;
use odorscreen_core::Molecule;
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelSuggestion {
    pub label: String,
    /// Sum of Tanimoto similarities of the neighbours carrying the label.
    pub score: f64,
}

/// Fingerprints of the labelled dataset molecules, built once.
pub struct LabelIndex {
    fps: Vec<Fingerprint>,
    labels: Vec<Vec<String>>,
}

impl LabelIndex {
    /// Indexes every dataset molecule with at least one label.
    pub fn new(dataset: &Dataset) -> Result<LabelIndex> {
        let labelled: Vec<_> = dataset.entries.iter().filter(|e| !e.labels.is_empty()).collect();
        if labelled.is_empty() {
            return Err(Error::NoLabels);
        }
        Ok(LabelIndex {
            fps: labelled.iter().map(|e| ecfp4(&e.molecule)).collect(),
            labels: labelled.iter().map(|e| e.labels.iter().cloned().collect()).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.fps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fps.is_empty()
    }

    /// Labels of the `k` most similar indexed molecules (ties to the earlier
    /// one), ranked by similarity-weighted count, then by name.
    pub fn suggest(&self, mol: &Molecule, k: usize) -> Vec<LabelSuggestion> {
        self.suggest_fp(&ecfp4(mol), k)
    }

    pub fn suggest_fp(&self, fp: &Fingerprint, k: usize) -> Vec<LabelSuggestion> {
        let mut sims: Vec<(f64, usize)> = self
            .fps
            .iter()
            .enumerate()
            .map(|(i, f)| (tanimoto(fp, f).expect("ECFP4 widths are fixed"), i))
            .collect();
        sims.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut tally: BTreeMap<&str, f64> = BTreeMap::new();
        for &(s, i) in sims.iter().take(k) {
            for l in &self.labels[i] {
                *tally.entry(l).or_default() += s;
            }
        }
        let mut out: Vec<LabelSuggestion> = tally
            .into_iter()
            .map(|(label, score)| LabelSuggestion {
                label: label.to_owned(),
                score,
            })
            .collect();
        // Stable sort keeps the BTreeMap's name order among equal scores.
        out.sort_by(|a, b| b.score.total_cmp(&a.score));
        out
    }
}
