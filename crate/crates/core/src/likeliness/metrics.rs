use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::LikelinessError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub roc_auc: f64,
    pub recall: f64,
    pub precision: f64,
    pub accuracy: f64,
    pub f1: f64,
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
}

fn ratio(a: usize, b: usize) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

/// Area under the ROC curve via the Mann–Whitney statistic with midranks.
pub fn roc_auc(scores: &[f64], labels: &[u8]) -> Result<f64, LikelinessError> {
    if scores.len() != labels.len() {
        return Err(LikelinessError::LengthMismatch);
    }
    let pos = labels.iter().filter(|&&l| l == 1).count();
    let neg = labels.len() - pos;
    if pos == 0 || neg == 0 {
        return Err(LikelinessError::SingleClass);
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));
    let mut rank_sum = 0.0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && scores[order[j + 1]] == scores[order[i]] {
            j += 1;
        }
        // Ranks are 1-based; the tie group i..=j shares their average.
        let mid = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            if labels[k] == 1 {
                rank_sum += mid;
            }
        }
        i = j + 1;
    }
    let u = rank_sum - (pos * (pos + 1)) as f64 / 2.0;
    Ok(u / (pos as f64 * neg as f64))
}

/// ROC points (fpr, tpr) from (0,0) to (1,1); tied scores form one step.
pub fn roc_curve(scores: &[f64], labels: &[u8]) -> Result<Vec<(f64, f64)>, LikelinessError> {
    if scores.len() != labels.len() {
        return Err(LikelinessError::LengthMismatch);
    }
    let pos = labels.iter().filter(|&&l| l == 1).count();
    let neg = labels.len() - pos;
    if pos == 0 || neg == 0 {
        return Err(LikelinessError::SingleClass);
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    let mut pts = alloc::vec![(0.0, 0.0)];
    let (mut tp, mut fp) = (0usize, 0usize);
    let mut i = 0;
    while i < order.len() {
        let s = scores[order[i]];
        while i < order.len() && scores[order[i]] == s {
            if labels[order[i]] == 1 {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        pts.push((ratio(fp, neg), ratio(tp, pos)));
    }
    Ok(pts)
}

/// Threshold metrics at `p >= threshold` plus ROC AUC.
pub fn evaluate(probabilities: &[f64], labels: &[u8], threshold: f64) -> Result<MetricsReport, LikelinessError> {
    let roc_auc = roc_auc(probabilities, labels)?;
    let (mut tp, mut fp, mut tn, mut fn_) = (0, 0, 0, 0);
    for (&p, &l) in probabilities.iter().zip(labels) {
        match (p >= threshold, l == 1) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, false) => tn += 1,
            (false, true) => fn_ += 1,
        }
    }
    let recall = ratio(tp, tp + fn_);
    let precision = ratio(tp, tp + fp);
    let f1 = if recall + precision == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    Ok(MetricsReport {
        roc_auc,
        recall,
        precision,
        accuracy: ratio(tp + tn, labels.len()),
        f1,
        tp,
        fp,
        tn,
        fn_,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_and_inverted() {
        assert_eq!(roc_auc(&[0.1, 0.2, 0.8, 0.9], &[0, 0, 1, 1]).unwrap(), 1.0);
        assert_eq!(roc_auc(&[0.9, 0.8, 0.2, 0.1], &[0, 0, 1, 1]).unwrap(), 0.0);
        assert_eq!(roc_auc(&[0.5; 4], &[0, 1, 0, 1]).unwrap(), 0.5);
    }

    #[test]
    fn hand_counted() {
        // Positives 0.35 and 0.8 beat 3 of the 4 (pos, neg) pairs.
        let auc = roc_auc(&[0.1, 0.4, 0.35, 0.8], &[0, 0, 1, 1]).unwrap();
        assert!((auc - 0.75).abs() < 1e-15);
    }

    #[test]
    fn one_negative() {
        let auc = roc_auc(&[0.9, 0.8, 0.3, 0.1], &[1, 1, 0, 1]).unwrap();
        assert!((auc - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn curve_endpoints() {
        let c = roc_curve(&[0.1, 0.4, 0.35, 0.8], &[0, 0, 1, 1]).unwrap();
        assert_eq!(c.first(), Some(&(0.0, 0.0)));
        assert_eq!(c.last(), Some(&(1.0, 1.0)));
        assert_eq!(c.len(), 5);
    }

    #[test]
    fn confusion() {
        let r = evaluate(&[0.9, 0.6, 0.4, 0.2], &[1, 0, 1, 0], 0.5).unwrap();
        assert_eq!((r.tp, r.fp, r.tn, r.fn_), (1, 1, 1, 1));
        assert_eq!(r.f1, 0.5);
        assert!(evaluate(&[0.1], &[1], 0.5).is_err());
    }
}
