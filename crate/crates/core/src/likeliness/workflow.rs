//! Split, standardize, oversample, prune, fit, select, refit, evaluate.

use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    evaluate, prune_correlated, prune_vif, roc_curve, select_top_shap, smote, train_logistic, LikelinessError,
    LogisticModel, Matrix, MetricsReport, Scaler, TrainConfig,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorkflowConfig {
    pub seed: u64,
    pub test_fraction: f64,
    pub smote_k: usize,
    pub correlation_threshold: f64,
    pub vif_threshold: f64,
    pub top_n: usize,
    pub train: TrainConfig,
}

impl Default for WorkflowConfig {
    fn default() -> Self {
        WorkflowConfig {
            seed: 42,
            test_fraction: 0.2,
            smote_k: 5,
            correlation_threshold: 0.75,
            vif_threshold: 5.0,
            top_n: 5,
            train: TrainConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorkflowReport {
    pub initial_features: Vec<String>,
    /// Constant on the training split, so dropped before scaling.
    pub constant_features: Vec<String>,
    pub after_correlation: Vec<String>,
    pub after_vif: Vec<String>,
    /// Mean |SHAP| of the features kept for the final fit, largest first.
    pub top_shap: Vec<(String, f64)>,
    pub model: LogisticModel,
    pub converged: bool,
    pub iterations: usize,
    pub train_rows: usize,
    pub synthetic_rows: usize,
    pub test_rows: usize,
    pub test_metrics: MetricsReport,
    pub roc: Vec<(f64, f64)>,
}

/// Stratified split; returns (train, test) row indices, each sorted.
pub fn stratified_split(labels: &[u8], test_fraction: f64, seed: u64) -> (Vec<usize>, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train = Vec::new();
    let mut test = Vec::new();
    for class in [0u8, 1] {
        let mut idx: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        idx.shuffle(&mut rng);
        let n_test = libm::round(idx.len() as f64 * test_fraction) as usize;
        test.extend_from_slice(&idx[..n_test]);
        train.extend_from_slice(&idx[n_test..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    (train, test)
}

fn positions(all: &[String], keep: &[String]) -> Vec<usize> {
    keep.iter()
        .map(|k| all.iter().position(|a| a == k).expect("kept name comes from the list"))
        .collect()
}

/// Runs the full training protocol on raw descriptor rows.
pub fn run_workflow(
    raw: &Matrix,
    labels: &[u8],
    names: &[String],
    config: &WorkflowConfig,
) -> Result<WorkflowReport, LikelinessError> {
    if raw.rows() == 0 || raw.cols() == 0 {
        return Err(LikelinessError::EmptyMatrix);
    }
    if labels.len() != raw.rows() || names.len() != raw.cols() {
        return Err(LikelinessError::LengthMismatch);
    }
    let (train_idx, test_idx) = stratified_split(labels, config.test_fraction, config.seed);
    let train_raw = raw.select_rows(&train_idx);
    let train_y: Vec<u8> = train_idx.iter().map(|&i| labels[i]).collect();
    let test_y: Vec<u8> = test_idx.iter().map(|&i| labels[i]).collect();

    let mut varying = Vec::new();
    let mut constant_features = Vec::new();
    for j in 0..raw.cols() {
        let col = train_raw.column(j);
        if col.iter().all(|v| *v == col[0]) {
            constant_features.push(names[j].clone());
        } else {
            varying.push(j);
        }
    }
    let varying_names: Vec<String> = varying.iter().map(|&j| names[j].clone()).collect();
    let scaler = Scaler::fit(&train_raw.select_columns(&varying))?;
    let train_z = scaler.transform(&train_raw.select_columns(&varying));

    let balanced = smote(&train_z, &train_y, config.smote_k, config.seed)?;
    let synthetic_rows = balanced.matrix.rows() - train_z.rows();

    let after_correlation = prune_correlated(&balanced.matrix, &varying_names, config.correlation_threshold);
    let corr_cols = positions(&varying_names, &after_correlation);
    let after_vif = prune_vif(
        &balanced.matrix.select_columns(&corr_cols),
        &after_correlation,
        config.vif_threshold,
    );
    let vif_cols = positions(&varying_names, &after_vif);
    let x_vif = balanced.matrix.select_columns(&vif_cols);
    let first = train_logistic(&x_vif, &balanced.labels, &after_vif, &config.train)?;

    let top_shap = select_top_shap(&first.model, &x_vif, config.top_n.min(after_vif.len()))?;
    let top_names: Vec<String> = top_shap.iter().map(|t| t.0.clone()).collect();
    let top_cols = positions(&varying_names, &top_names);
    let x_top = balanced.matrix.select_columns(&top_cols);
    let refit = train_logistic(&x_top, &balanced.labels, &top_names, &config.train)?;
    let mut model = refit.model;
    model.scaler = Some(scaler.select(&top_cols));

    let all_top = positions(names, &top_names);
    let probs: Vec<f64> = test_idx
        .iter()
        .map(|&i| {
            let row: Vec<f64> = all_top.iter().map(|&j| raw.get(i, j)).collect();
            model.predict_raw(&row)
        })
        .collect();
    let test_metrics = evaluate(&probs, &test_y, 0.5)?;
    let roc = roc_curve(&probs, &test_y)?;

    Ok(WorkflowReport {
        initial_features: names.to_vec(),
        constant_features,
        after_correlation,
        after_vif,
        top_shap,
        model,
        converged: refit.converged,
        iterations: refit.iterations,
        train_rows: train_idx.len(),
        synthetic_rows,
        test_rows: test_idx.len(),
        test_metrics,
        roc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use rand::Rng;

    #[test]
    fn split_is_stratified() {
        let labels: Vec<u8> = (0..100).map(|i| u8::from(i % 4 == 0)).collect();
        let (train, test) = stratified_split(&labels, 0.2, 3);
        assert_eq!(test.len(), 20);
        assert_eq!(test.iter().filter(|&&i| labels[i] == 1).count(), 5);
        assert_eq!(train.len() + test.len(), 100);
        assert_eq!(stratified_split(&labels, 0.2, 3), (train, test));
    }

    #[test]
    fn recovers_signal_features() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for _ in 0..300 {
            let a: f64 = rng.random::<f64>() * 4.0 - 2.0;
            let b: f64 = rng.random::<f64>() * 4.0 - 2.0;
            let noise: f64 = rng.random::<f64>();
            let dup = a * 2.0 + 0.01 * noise;
            let c: f64 = rng.random::<f64>();
            labels.push(u8::from(2.0 * a - b + 0.3 * (noise - 0.5) > 1.0));
            rows.push([a, b, dup, c, 1.0]);
        }
        let names: Vec<String> = (0..5).map(|i| format!("f{i}")).collect();
        let cfg = WorkflowConfig {
            top_n: 2,
            ..Default::default()
        };
        let r = run_workflow(&Matrix::from_rows(&rows).unwrap(), &labels, &names, &cfg).unwrap();
        assert_eq!(r.constant_features, ["f4"]);
        assert_eq!(r.after_correlation.len(), 3);
        assert!(r.test_metrics.roc_auc > 0.95);
        assert_eq!(r.model.feature_names.len(), 2);
        assert!(r.model.feature_names.contains(&String::from("f1")));
    }
}
