//! The published five-feature odor-likeliness logit.

use alloc::string::ToString;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{sigmoid, LikelinessError, LogisticModel, Scaler};
use crate::descriptors::EQ4_FEATURES;

pub const EQ4_INTERCEPT: f64 = -3.6592;
/// Coefficients in `EQ4_FEATURES` order: logP, MW, SlogP_VSA3, Fraction Sp2, FCFP4 count.
pub const EQ4_COEFFICIENTS: [f64; 5] = [7.0771, -6.2811, 1.1403, 0.5869, 1.9262];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eq4Score {
    pub logit: f64,
    pub probability: f64,
    pub odorous: bool,
}

/// Scores already standardized features.
pub fn eq4_score_standardized(z: &[f64; 5]) -> Eq4Score {
    let logit = EQ4_INTERCEPT + EQ4_COEFFICIENTS.iter().zip(z).map(|(b, x)| b * x).sum::<f64>();
    let probability = sigmoid(logit);
    Eq4Score {
        logit,
        probability,
        odorous: probability >= 0.5,
    }
}

/// Scores raw descriptor values. The coefficients are only meaningful on
/// z-scored inputs, so a scaler is required.
pub fn eq4_score(raw: &[f64; 5], scaler: Option<&Scaler>) -> Result<Eq4Score, LikelinessError> {
    let scaler = scaler.ok_or(LikelinessError::MissingScaler)?;
    if scaler.len() != 5 {
        return Err(LikelinessError::SchemaMismatch);
    }
    let z = scaler.transform_row(raw);
    Ok(eq4_score_standardized(&[z[0], z[1], z[2], z[3], z[4]]))
}

/// The published coefficients wrapped as a model; `background` defaults
/// to the scaler's origin (all zeros in standardized space).
pub fn eq4_model(scaler: Scaler) -> Result<LogisticModel, LikelinessError> {
    if scaler.len() != 5 {
        return Err(LikelinessError::SchemaMismatch);
    }
    Ok(LogisticModel {
        feature_names: EQ4_FEATURES.iter().map(|s| s.to_string()).collect(),
        intercept: EQ4_INTERCEPT,
        coefficients: EQ4_COEFFICIENTS.to_vec(),
        scaler: Some(scaler),
        background: Vec::from([0.0; 5]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_vectors() {
        let s = eq4_score_standardized(&[0.0; 5]);
        assert!((s.logit + 3.6592).abs() < 1e-12);
        assert!((s.probability - 0.0251).abs() < 1e-4);
        assert!(!s.odorous);
        let s = eq4_score_standardized(&[1.0, 0.0, 0.0, 0.0, 0.0]);
        assert!((s.logit - 3.4179).abs() < 1e-12);
        assert!(s.odorous);
        let s = eq4_score_standardized(&[0.0, 1.0, 0.0, 0.0, 0.0]);
        assert!((s.logit + 9.9403).abs() < 1e-12);
    }

    #[test]
    fn scaler_is_required() {
        assert_eq!(eq4_score(&[0.0; 5], None).unwrap_err(), LikelinessError::MissingScaler);
        let s = Scaler {
            means: [1.0; 5].to_vec(),
            stddevs: [2.0; 5].to_vec(),
        };
        let out = eq4_score(&[3.0, 1.0, 1.0, 1.0, 1.0], Some(&s)).unwrap();
        assert!((out.logit - 3.4179).abs() < 1e-12);
    }
}
