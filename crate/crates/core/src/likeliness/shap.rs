//! Exact Shapley attributions for the linear logit.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{LikelinessError, LogisticModel, Matrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapExplanation {
    /// Logit at the background point.
    pub base_value: f64,
    pub contributions: Vec<(String, f64)>,
    pub prediction_logit: f64,
}

impl ShapExplanation {
    pub fn total(&self) -> f64 {
        self.base_value + self.contributions.iter().map(|c| c.1).sum::<f64>()
    }
}

/// With independent features the Shapley value of feature i for a linear
/// logit is βᵢ(xᵢ − E[xᵢ]). `x` is in model space.
pub fn linear_shap(model: &LogisticModel, x: &[f64]) -> ShapExplanation {
    let contributions = model
        .feature_names
        .iter()
        .zip(&model.coefficients)
        .zip(x.iter().zip(&model.background))
        .map(|((name, b), (v, m))| (name.clone(), b * (v - m)))
        .collect();
    ShapExplanation {
        base_value: model.logit(&model.background),
        contributions,
        prediction_logit: model.logit(x),
    }
}

/// Mean |SHAP| of every feature over the rows of `x`, in feature order.
pub fn mean_abs_shap(model: &LogisticModel, x: &Matrix) -> Vec<(String, f64)> {
    let n = x.rows().max(1) as f64;
    model
        .feature_names
        .iter()
        .enumerate()
        .map(|(j, name)| {
            let b = model.coefficients[j];
            let m = model.background[j];
            let s: f64 = x.iter_rows().map(|r| (b * (r[j] - m)).abs()).sum();
            (name.clone(), s / n)
        })
        .collect()
}

/// The `n` features with the largest mean |SHAP|, ties broken by name.
pub fn select_top_shap(model: &LogisticModel, x: &Matrix, n: usize) -> Result<Vec<(String, f64)>, LikelinessError> {
    let features = model.feature_names.len();
    if n > features {
        return Err(LikelinessError::TopNTooLarge { n, features });
    }
    let mut ranked = mean_abs_shap(model, x);
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranked.truncate(n);
    Ok(ranked)
}
