mod common;

use std::collections::{BTreeMap, BTreeSet};

use odorscreen::dataset::{load_dataset, DatasetConfig};
use odorscreen::knn::LabelIndex;
use odorscreen::Error;
use odorscreen_core::descriptors::ecfp4;
use odorscreen_core::smiles::parse_canonical;

const TOY: &str = "nonStereoSMILES,descriptors
CCO,odorless
CCCCCC(=O)OCC,fruity;sweet
CC(=O)OCC,fruity
CCCCCCO,green;fatty
c1ccccc1O,phenolic
CCCCC=O,green;aldehydic
";

fn toy() -> (tempfile::TempDir, std::path::PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("toy.csv");
    std::fs::write(&path, TOY).unwrap();
    (dir, path)
}

fn set_tanimoto(a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> f64 {
    let union = a.union(b).count();
    if union == 0 {
        return 1.0;
    }
    a.intersection(b).count() as f64 / union as f64
}

#[test]
fn matches_brute_force_tally() {
    let (_dir, path) = toy();
    let data = load_dataset(&path, &DatasetConfig::default()).unwrap();
    let index = LabelIndex::new(&data).unwrap();
    assert_eq!(index.len(), 5);
    let labelled: Vec<_> = data.entries.iter().filter(|e| !e.labels.is_empty()).collect();
    let bits: Vec<BTreeSet<usize>> = labelled.iter().map(|e| ecfp4(&e.molecule).ones().collect()).collect();

    for query in ["CCCCCCC(=O)OC", "CCCC=O", "Cc1ccccc1O", "CCCCO", "CCCCCC(=O)OCC"] {
        let mol = parse_canonical(query).unwrap().0;
        let q: BTreeSet<usize> = ecfp4(&mol).ones().collect();
        let mut sims: Vec<(f64, usize)> = bits.iter().enumerate().map(|(i, b)| (set_tanimoto(&q, b), i)).collect();
        sims.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
        for k in 1..=5 {
            let mut want: BTreeMap<String, f64> = BTreeMap::new();
            for &(s, i) in &sims[..k] {
                for l in &labelled[i].labels {
                    *want.entry(l.clone()).or_default() += s;
                }
            }
            let got = index.suggest(&mol, k);
            assert_eq!(got.len(), want.len(), "{query} k={k}");
            for g in &got {
                assert!((want[&g.label] - g.score).abs() < 1e-12, "{query} k={k} {}", g.label);
            }
            assert!(got.windows(2).all(|w| w[0].score > w[1].score || (w[0].score == w[1].score && w[0].label < w[1].label)));
        }
    }
}

#[test]
fn dataset_member_is_its_own_neighbour() {
    let (_dir, path) = toy();
    let data = load_dataset(&path, &DatasetConfig::default()).unwrap();
    let index = LabelIndex::new(&data).unwrap();
    for e in data.entries.iter().filter(|e| !e.labels.is_empty()) {
        let got = index.suggest(&e.molecule, 1);
        let labels: BTreeSet<String> = got.iter().map(|s| s.label.clone()).collect();
        assert_eq!(labels, e.labels);
        assert!(got.iter().all(|s| s.score == 1.0));
    }
}

#[test]
fn k_beyond_index_uses_everything() {
    let (_dir, path) = toy();
    let data = load_dataset(&path, &DatasetConfig::default()).unwrap();
    let index = LabelIndex::new(&data).unwrap();
    let mol = parse_canonical("CCO").unwrap().0;
    assert_eq!(index.suggest(&mol, 50), index.suggest(&mol, 5));
    assert_eq!(index.suggest(&mol, 50).len(), data.vocabulary().len());
    assert!(index.suggest(&mol, 0).is_empty());
}

#[test]
fn unlabelled_dataset_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("none.csv");
    std::fs::write(&path, "nonStereoSMILES,descriptors\nCCO,odorless\nCCC,odorless\n").unwrap();
    let data = load_dataset(&path, &DatasetConfig::default()).unwrap();
    assert!(matches!(LabelIndex::new(&data), Err(Error::NoLabels)));
}

#[test]
fn synthetic_labels_are_in_vocabulary() {
    let data = common::synthetic_dataset();
    let vocab = data.vocabulary();
    let index = LabelIndex::new(&data).unwrap();
    for l in common::lines("screen_100.smi").iter().take(20) {
        if let Ok((m, _)) = parse_canonical(&l.smiles) {
            assert!(index.suggest(&m, 5).iter().all(|s| vocab.contains(s.label.as_str()) && s.score > 0.0));
        }
    }
}
