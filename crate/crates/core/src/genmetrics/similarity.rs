use alloc::collections::BTreeMap;
use alloc::string::String;

use super::GenMetricsError;
use crate::descriptors::Fingerprint;

/// |a ∧ b| / |a ∨ b|, with two empty fingerprints counting as identical.
pub fn tanimoto(a: &Fingerprint, b: &Fingerprint) -> Result<f64, GenMetricsError> {
    if a.width() != b.width() {
        return Err(GenMetricsError::WidthMismatch(a.width(), b.width()));
    }
    let (mut both, mut either) = (0u32, 0u32);
    for (x, y) in a.words().iter().zip(b.words()) {
        both += (x & y).count_ones();
        either += (x | y).count_ones();
    }
    Ok(if either == 0 { 1.0 } else { f64::from(both) / f64::from(either) })
}

/// 1 − mean pairwise Tanimoto over all unordered pairs.
pub fn internal_diversity(fps: &[Fingerprint]) -> Result<f64, GenMetricsError> {
    let n = fps.len();
    if n < 2 {
        return Err(GenMetricsError::TooFewMolecules(n));
    }
    let mut sum = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            sum += tanimoto(&fps[i], &fps[j])?;
        }
    }
    let pairs = (n * (n - 1) / 2) as f64;
    Ok(1.0 - sum / pairs)
}

/// Mean over `generated` of the highest Tanimoto to any `reference` entry.
pub fn snn(generated: &[Fingerprint], reference: &[Fingerprint]) -> Result<f64, GenMetricsError> {
    if generated.is_empty() || reference.is_empty() {
        return Err(GenMetricsError::EmptyInput);
    }
    let mut sum = 0.0;
    for g in generated {
        let mut best = 0.0f64;
        for r in reference {
            best = best.max(tanimoto(g, r)?);
        }
        sum += best;
    }
    Ok(sum / generated.len() as f64)
}

/// Cosine similarity of scaffold count vectors keyed by canonical scaffold
/// SMILES ("" for acyclic molecules).
pub fn scaffold_similarity<S: AsRef<str>>(generated: &[S], reference: &[S]) -> Result<f64, GenMetricsError> {
    if generated.is_empty() || reference.is_empty() {
        return Err(GenMetricsError::EmptyInput);
    }
    let count = |xs: &[S]| {
        let mut m: BTreeMap<String, f64> = BTreeMap::new();
        for x in xs {
            *m.entry(String::from(x.as_ref())).or_default() += 1.0;
        }
        m
    };
    let a = count(generated);
    let b = count(reference);
    let dot: f64 = a.iter().filter_map(|(k, v)| b.get(k).map(|w| v * w)).sum();
    let na: f64 = a.values().map(|v| v * v).sum();
    let nb: f64 = b.values().map(|v| v * v).sum();
    Ok(dot / libm::sqrt(na * nb))
}
