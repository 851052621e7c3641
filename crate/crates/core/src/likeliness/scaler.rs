use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{LikelinessError, Matrix};

/// Per-feature z-scoring with population standard deviations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scaler {
    pub means: Vec<f64>,
    pub stddevs: Vec<f64>,
}

impl Scaler {
    pub fn fit(m: &Matrix) -> Result<Scaler, LikelinessError> {
        if m.rows() < 2 {
            return Err(LikelinessError::TooFewRows(m.rows()));
        }
        let n = m.rows() as f64;
        let mut means = Vec::with_capacity(m.cols());
        let mut stddevs = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            let col = m.column(j);
            let mean = col.iter().sum::<f64>() / n;
            let var = col.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
            let sd = libm::sqrt(var);
            let scale = col.iter().fold(0.0f64, |a, x| a.max(x.abs())).max(1.0);
            if !sd.is_finite() || sd <= 1e-12 * scale {
                return Err(LikelinessError::ConstantColumn(j));
            }
            means.push(mean);
            stddevs.push(sd);
        }
        Ok(Scaler { means, stddevs })
    }

    pub fn len(&self) -> usize {
        self.means.len()
    }

    pub fn is_empty(&self) -> bool {
        self.means.is_empty()
    }

    pub fn transform_row(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(self.means.iter().zip(&self.stddevs))
            .map(|(v, (m, s))| (v - m) / s)
            .collect()
    }

    pub fn transform(&self, m: &Matrix) -> Matrix {
        let mut out = m.clone();
        for i in 0..m.rows() {
            let z = self.transform_row(m.row(i));
            out.row_mut(i).copy_from_slice(&z);
        }
        out
    }

    /// The scaler restricted to the given columns.
    pub fn select(&self, cols: &[usize]) -> Scaler {
        Scaler {
            means: cols.iter().map(|&j| self.means[j]).collect(),
            stddevs: cols.iter().map(|&j| self.stddevs[j]).collect(),
        }
    }
}

/// Z-scores every column; returns the scaled matrix and the fitted scaler.
pub fn standardize(m: &Matrix) -> Result<(Matrix, Scaler), LikelinessError> {
    let scaler = Scaler::fit(m)?;
    Ok((scaler.transform(m), scaler))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_two_three() {
        let m = Matrix::from_columns(&[[1.0, 2.0, 3.0]]).unwrap();
        let (z, s) = standardize(&m).unwrap();
        let k = libm::sqrt(1.5);
        assert!((z.get(0, 0) + k).abs() < 1e-12);
        assert_eq!(z.get(1, 0), 0.0);
        assert!((z.get(2, 0) - k).abs() < 1e-12);
        assert!((z.get(0, 0) + 1.2247).abs() < 1e-4);
        assert_eq!(s.means, [2.0]);
    }

    #[test]
    fn idempotent_on_standardized_input() {
        let m = Matrix::from_columns(&[[4.0, -1.0, 2.5, 7.0, 0.0]]).unwrap();
        let (z, _) = standardize(&m).unwrap();
        let (zz, s) = standardize(&z).unwrap();
        for i in 0..5 {
            assert!((z.get(i, 0) - zz.get(i, 0)).abs() < 1e-12);
        }
        assert!(s.means[0].abs() < 1e-12 && (s.stddevs[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_column_is_rejected() {
        let m = Matrix::from_columns(&[[1.0, 2.0, 3.0], [5.0, 5.0, 5.0]]).unwrap();
        assert_eq!(standardize(&m).unwrap_err(), LikelinessError::ConstantColumn(1));
    }
}
