//! Odor-likeliness: literature criteria, the logistic workflow, the fixed
//! five-feature scorer, linear SHAP and classification metrics.

mod criteria;
mod eq4;
mod logistic;
mod matrix;
mod metrics;
mod prune;
mod scaler;
mod shap;
mod smote;
mod workflow;

use alloc::string::String;

pub use criteria::{evaluate_criteria, fl_property, gdb17_criterion, rule_of_three, CriteriaResult};
pub use eq4::{eq4_model, eq4_score, eq4_score_standardized, Eq4Score, EQ4_COEFFICIENTS, EQ4_INTERCEPT};
pub use logistic::{loss_and_gradient, sigmoid, train_logistic, LogisticModel, TrainConfig, TrainOutcome};
pub use matrix::Matrix;
pub use metrics::{evaluate, roc_auc, roc_curve, MetricsReport};
pub use prune::{pearson, prune_correlated, prune_vif, vif_values};
pub use scaler::{standardize, Scaler};
pub use shap::{linear_shap, mean_abs_shap, select_top_shap, ShapExplanation};
pub use smote::{smote, SmoteOutput, SyntheticOrigin};
pub use workflow::{run_workflow, stratified_split, WorkflowConfig, WorkflowReport};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LikelinessError {
    #[error("empty feature matrix")]
    EmptyMatrix,
    #[error("rows have different lengths")]
    RaggedRows,
    #[error("feature column {0} is constant")]
    ConstantColumn(usize),
    #[error("need at least 2 rows, got {0}")]
    TooFewRows(usize),
    #[error("labels contain a single class")]
    SingleClass,
    #[error("minority class has {minority} rows; SMOTE with k = {k} needs at least k + 1")]
    MinorityTooSmall { minority: usize, k: usize },
    #[error("inputs have mismatched lengths")]
    LengthMismatch,
    #[error("asked for top {n} of {features} features")]
    TopNTooLarge { n: usize, features: usize },
    #[error("scoring needs a fitted scaler")]
    MissingScaler,
    #[error("unknown feature {0:?}")]
    UnknownFeature(String),
    #[error("feature schema does not match the model")]
    SchemaMismatch,
    #[error("model file: {0}")]
    ModelFormat(String),
}
