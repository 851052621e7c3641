//! Correlation and variance-inflation feature pruning.

use alloc::string::String;
use alloc::vec::Vec;

use super::Matrix;

/// Pearson correlation of two equal-length samples; 0 if either is constant.
pub fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        sab += (x - ma) * (y - mb);
        saa += (x - ma) * (x - ma);
        sbb += (y - mb) * (y - mb);
    }
    if saa == 0.0 || sbb == 0.0 {
        return 0.0;
    }
    sab / libm::sqrt(saa * sbb)
}

/// Drops features until no pair has |r| above `threshold`.
///
/// The worst pair is handled first; of its two members the one with the
/// larger mean |r| to the other surviving features goes, the later column
/// on ties. Returns surviving names in input order.
pub fn prune_correlated(m: &Matrix, names: &[String], threshold: f64) -> Vec<String> {
    let p = m.cols();
    let cols: Vec<Vec<f64>> = (0..p).map(|j| m.column(j)).collect();
    let mut r = alloc::vec![0.0; p * p];
    for i in 0..p {
        for j in i + 1..p {
            let v = pearson(&cols[i], &cols[j]).abs();
            r[i * p + j] = v;
            r[j * p + i] = v;
        }
    }
    let mut alive = alloc::vec![true; p];
    loop {
        let mut worst: Option<(f64, usize, usize)> = None;
        for i in 0..p {
            for j in i + 1..p {
                if alive[i] && alive[j] && r[i * p + j] > threshold && worst.is_none_or(|(w, _, _)| r[i * p + j] > w) {
                    worst = Some((r[i * p + j], i, j));
                }
            }
        }
        let Some((_, i, j)) = worst else {
            break;
        };
        let mean_abs = |a: usize| {
            let others: Vec<usize> = (0..p).filter(|&b| b != a && alive[b]).collect();
            others.iter().map(|&b| r[a * p + b]).sum::<f64>() / others.len() as f64
        };
        let drop = if mean_abs(i) > mean_abs(j) { i } else { j };
        alive[drop] = false;
    }
    (0..p).filter(|&j| alive[j]).map(|j| names[j].clone()).collect()
}

/// Variance inflation factor of every column: 1 / (1 − R²) from a least
/// squares fit (with intercept) of the column on all others. Exactly
/// dependent columns get +∞.
pub fn vif_values(m: &Matrix) -> Vec<f64> {
    let p = m.cols();
    let cols: Vec<Vec<f64>> = (0..p).map(|j| m.column(j)).collect();
    (0..p)
        .map(|target| {
            let others: Vec<&[f64]> = (0..p).filter(|&j| j != target).map(|j| cols[j].as_slice()).collect();
            vif_of(&cols[target], &others)
        })
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Regresses `y` on `[1, xs...]` by modified Gram–Schmidt.
fn vif_of(y: &[f64], xs: &[&[f64]]) -> f64 {
    let n = y.len();
    let mean = y.iter().sum::<f64>() / n as f64;
    let tss: f64 = y.iter().map(|v| (v - mean) * (v - mean)).sum();
    if tss == 0.0 {
        return f64::INFINITY;
    }
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let ones = alloc::vec![1.0 / libm::sqrt(n as f64); n];
    basis.push(ones);
    for x in xs {
        let mut v = x.to_vec();
        let norm0 = libm::sqrt(dot(&v, &v));
        for q in &basis {
            let c = dot(&v, q);
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= c * qi;
            }
        }
        let norm = libm::sqrt(dot(&v, &v));
        // Skip columns already in the span of earlier ones.
        if norm <= 1e-10 * norm0.max(1e-300) {
            continue;
        }
        for vi in v.iter_mut() {
            *vi /= norm;
        }
        basis.push(v);
    }
    let mut resid = y.to_vec();
    for q in &basis {
        let c = dot(&resid, q);
        for (ri, qi) in resid.iter_mut().zip(q) {
            *ri -= c * qi;
        }
    }
    let rss = dot(&resid, &resid);
    if rss <= 1e-12 * tss {
        return f64::INFINITY;
    }
    tss / rss
}

/// Repeatedly drops the column with the largest VIF while it exceeds
/// `threshold` (the later column on ties). Returns surviving names in
/// input order.
pub fn prune_vif(m: &Matrix, names: &[String], threshold: f64) -> Vec<String> {
    let mut keep: Vec<usize> = (0..m.cols()).collect();
    while keep.len() > 1 {
        let vifs = vif_values(&m.select_columns(&keep));
        let (pos, &max) = vifs
            .iter()
            .enumerate()
            .fold(None::<(usize, &f64)>, |best, (k, v)| match best {
                Some((_, b)) if v < b => best,
                _ => Some((k, v)),
            })
            .expect("at least two columns");
        if max <= threshold {
            break;
        }
        keep.remove(pos);
    }
    keep.into_iter().map(|j| names[j].clone()).collect()
}
