use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{LikelinessError, Matrix};

/// Where a synthetic SMOTE row came from: `x + u (neighbor - x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticOrigin {
    pub base: usize,
    pub neighbor: usize,
    pub u: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmoteOutput {
    pub matrix: Matrix,
    pub labels: Vec<u8>,
    /// `None` for original rows, which keep their positions at the front.
    pub origins: Vec<Option<SyntheticOrigin>>,
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Oversamples the minority class to parity by interpolating between a
/// minority row and one of its `k` nearest minority neighbours.
///
/// Labels must be 0 or 1. Balanced input comes back unchanged.
pub fn smote(m: &Matrix, labels: &[u8], k: usize, seed: u64) -> Result<SmoteOutput, LikelinessError> {
    if labels.len() != m.rows() {
        return Err(LikelinessError::LengthMismatch);
    }
    let ones = labels.iter().filter(|&&l| l == 1).count();
    let zeros = labels.len() - ones;
    if ones == 0 || zeros == 0 {
        return Err(LikelinessError::SingleClass);
    }
    let mut out = SmoteOutput {
        matrix: m.clone(),
        labels: labels.to_vec(),
        origins: alloc::vec![None; m.rows()],
    };
    if ones == zeros {
        return Ok(out);
    }
    let minority_label = u8::from(ones < zeros);
    let minority: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == minority_label).collect();
    if minority.len() < k + 1 {
        return Err(LikelinessError::MinorityTooSmall {
            minority: minority.len(),
            k,
        });
    }

    // k nearest minority neighbours of every minority row; ties by index.
    let neighbours: Vec<Vec<usize>> = minority
        .iter()
        .map(|&i| {
            let mut d: Vec<(f64, usize)> = minority
                .iter()
                .filter(|&&j| j != i)
                .map(|&j| (sq_dist(m.row(i), m.row(j)), j))
                .collect();
            d.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            d.truncate(k);
            d.into_iter().map(|(_, j)| j).collect()
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let needed = ones.max(zeros) - minority.len();
    let mut row = alloc::vec![0.0; m.cols()];
    for _ in 0..needed {
        let pick = rng.random_range(0..minority.len());
        let base = minority[pick];
        let neighbor = neighbours[pick][rng.random_range(0..k)];
        let u: f64 = rng.random();
        for (j, v) in row.iter_mut().enumerate() {
            let x = m.get(base, j);
            *v = x + u * (m.get(neighbor, j) - x);
        }
        out.matrix.push_row(&row)?;
        out.labels.push(minority_label);
        out.origins.push(Some(SyntheticOrigin { base, neighbor, u }));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(minority: usize, majority: usize) -> (Matrix, Vec<u8>) {
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for i in 0..minority {
            rows.push([i as f64, (i * i) as f64 * 0.1]);
            labels.push(1);
        }
        for i in 0..majority {
            rows.push([-(i as f64), 3.0 + i as f64 * 0.5]);
            labels.push(0);
        }
        (Matrix::from_rows(&rows).unwrap(), labels)
    }

    #[test]
    fn balances_to_parity() {
        let (m, l) = data(10, 90);
        let out = smote(&m, &l, 5, 7).unwrap();
        assert_eq!(out.labels.iter().filter(|&&x| x == 1).count(), 90);
        assert_eq!(out.labels.iter().filter(|&&x| x == 0).count(), 90);
        assert_eq!(out.matrix.rows(), 180);
    }

    #[test]
    fn balanced_input_is_unchanged() {
        let (m, l) = data(6, 6);
        let out = smote(&m, &l, 5, 1).unwrap();
        assert_eq!(out.matrix, m);
        assert_eq!(out.labels, l);
    }

    #[test]
    fn deterministic_under_seed() {
        let (m, l) = data(8, 20);
        assert_eq!(smote(&m, &l, 3, 11).unwrap(), smote(&m, &l, 3, 11).unwrap());
    }

    #[test]
    fn small_minority_is_an_error() {
        let (m, l) = data(5, 20);
        assert_eq!(
            smote(&m, &l, 5, 0).unwrap_err(),
            LikelinessError::MinorityTooSmall { minority: 5, k: 5 }
        );
    }
}
