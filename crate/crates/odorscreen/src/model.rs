//! Scoring models: the shipped five-feature model or a fitted model file.

use std::fs;
use std::path::Path;

use odorscreen_core::descriptors::{descriptor_vector, FeatureSchema, FeatureVector};
use odorscreen_core::likeliness::{sigmoid, LogisticModel};
use odorscreen_core::Molecule;
use serde::{Deserialize, Serialize};

use crate::error::{io_err, Error, Result};

/// The published coefficients with a scaler fitted on the fixture corpus.
pub const SHIPPED_EQ4: &str = include_str!("../data/eq4_model.tsv");
pub const SHIPPED_ID: &str = "eq4-shipped";

#[derive(Debug, Clone, PartialEq)]
pub struct ScoringModel {
    pub id: String,
    pub model: LogisticModel,
    pub schema: FeatureSchema,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Score {
    pub logit: f64,
    pub probability: f64,
    pub odorous: bool,
}

impl ScoringModel {
    pub fn shipped_eq4() -> ScoringModel {
        let model = LogisticModel::from_text(SHIPPED_EQ4).expect("shipped model parses");
        ScoringModel::new(SHIPPED_ID, model).expect("shipped model is consistent")
    }

    pub fn load(path: &Path) -> Result<ScoringModel> {
        let text = fs::read_to_string(path).map_err(io_err(path))?;
        let model = LogisticModel::from_text(&text)?;
        let id = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
        ScoringModel::new(&id, model)
    }

    /// Checks that every feature is implemented and every vector lines up.
    pub fn new(id: &str, model: LogisticModel) -> Result<ScoringModel> {
        let p = model.feature_names.len();
        if p == 0 {
            return Err(Error::Model("no features".into()));
        }
        if model.coefficients.len() != p || model.background.len() != p {
            return Err(Error::Model("coefficient and background counts differ from feature count".into()));
        }
        if let Some(s) = &model.scaler {
            if s.len() != p {
                return Err(Error::Model("scaler length differs from feature count".into()));
            }
            if s.stddevs.iter().any(|&sd| !(sd > 0.0 && sd.is_finite())) {
                return Err(Error::Model("scaler standard deviations must be positive".into()));
            }
        }
        let finite = std::iter::once(model.intercept)
            .chain(model.coefficients.iter().copied())
            .all(f64::is_finite);
        if !finite {
            return Err(Error::Model("non-finite coefficient".into()));
        }
        let schema = FeatureSchema::new(id, &model.feature_names)?;
        Ok(ScoringModel {
            id: id.to_owned(),
            model,
            schema,
        })
    }

    pub fn features(&self, mol: &Molecule) -> FeatureVector {
        descriptor_vector(mol, &self.schema)
    }

    pub fn score_features(&self, raw: &[f64]) -> Score {
        let logit = self.model.logit(&self.model.prepare_row(raw));
        let probability = sigmoid(logit);
        Score {
            logit,
            probability,
            odorous: probability >= 0.5,
        }
    }

    pub fn score(&self, mol: &Molecule) -> Score {
        self.score_features(&self.features(mol).values)
    }
}
