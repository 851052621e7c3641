//! Report files: JSON documents, per-record CSV and figure data.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use odorscreen_core::genmetrics::BenchmarkReport;
use odorscreen_core::likeliness::{linear_shap, LogisticModel, Matrix};
use serde::{Deserialize, Serialize};

use crate::error::{io_err, Error, Result};
use crate::screen::ScreenReport;

/// Pretty JSON with a trailing newline. Output is byte-stable for equal values.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    fs::write(path, to_json(value)).map_err(io_err(path))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.to_owned(),
        source,
    })
}

fn csv_writer(path: &Path) -> Result<csv::Writer<fs::File>> {
    csv::Writer::from_path(path).map_err(|source| Error::Csv {
        path: path.to_owned(),
        source,
    })
}

fn csv_result<T>(path: &Path, r: Result<T, csv::Error>) -> Result<T> {
    r.map_err(|source| Error::Csv {
        path: path.to_owned(),
        source,
    })
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub const SCREEN_CSV_HEADER: [&str; 15] = [
    "line",
    "input",
    "name",
    "valid",
    "errors",
    "canonical",
    "duplicate_of",
    "novel",
    "gdb17",
    "rule_of_three",
    "fl_property",
    "logit",
    "probability",
    "labels",
    "pubchem",
];

/// One CSV row per screen record.
pub fn write_screen_csv(path: &Path, report: &ScreenReport) -> Result<()> {
    let mut w = csv_writer(path)?;
    csv_result(path, w.write_record(SCREEN_CSV_HEADER))?;
    for r in &report.records {
        let labels = r
            .suggested_labels
            .as_ref()
            .map(|ls| ls.iter().map(|l| l.label.as_str()).collect::<Vec<_>>().join(";"));
        let row = [
            r.line.to_string(),
            r.input.clone(),
            r.name.clone().unwrap_or_default(),
            r.sanitize.ok.to_string(),
            r.sanitize.errors.join(";"),
            r.canonical.clone().unwrap_or_default(),
            opt(r.duplicate_of),
            opt(r.novel),
            opt(r.criteria.map(|c| c.gdb17)),
            opt(r.criteria.map(|c| c.rule_of_three)),
            opt(r.criteria.map(|c| c.fl_property)),
            opt(r.likeliness.map(|s| s.logit)),
            opt(r.likeliness.map(|s| s.probability)),
            labels.unwrap_or_default(),
            opt(r.pubchem.map(|p| p.as_str())),
        ];
        csv_result(path, w.write_record(&row))?;
    }
    csv_result(path, w.flush().map_err(csv::Error::from))
}

pub fn write_roc_csv(path: &Path, points: &[(f64, f64)]) -> Result<()> {
    let mut w = csv_writer(path)?;
    csv_result(path, w.write_record(["fpr", "tpr"]))?;
    for (x, y) in points {
        csv_result(path, w.write_record([x.to_string(), y.to_string()]))?;
    }
    csv_result(path, w.flush().map_err(csv::Error::from))
}

/// A bare ROC plot: curve, chance diagonal, axes and the AUC.
pub fn roc_svg(points: &[(f64, f64)], auc: f64) -> String {
    const SIZE: f64 = 400.0;
    const PAD: f64 = 40.0;
    let px = |x: f64| PAD + x * SIZE;
    let py = |y: f64| PAD + (1.0 - y) * SIZE;
    let mut path = String::new();
    for (i, (x, y)) in points.iter().enumerate() {
        let _ = write!(path, "{}{:.2},{:.2}", if i == 0 { "M" } else { " L" }, px(*x), py(*y));
    }
    let full = SIZE + 2.0 * PAD;
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{full}\" height=\"{full}\" viewBox=\"0 0 {full} {full}\">\n",
            "  <rect x=\"{p}\" y=\"{p}\" width=\"{s}\" height=\"{s}\" fill=\"none\" stroke=\"black\"/>\n",
            "  <path d=\"M{p},{e} L{e},{p}\" stroke=\"gray\" stroke-dasharray=\"4 4\" fill=\"none\"/>\n",
            "  <path d=\"{path}\" stroke=\"steelblue\" stroke-width=\"2\" fill=\"none\"/>\n",
            "  <text x=\"{mid}\" y=\"{xl}\" text-anchor=\"middle\" font-size=\"14\">False positive rate</text>\n",
            "  <text x=\"14\" y=\"{mid}\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 14 {mid})\">True positive rate</text>\n",
            "  <text x=\"{ax}\" y=\"{ay}\" text-anchor=\"end\" font-size=\"14\">AUC = {auc:.4}</text>\n",
            "</svg>\n"
        ),
        full = full,
        p = PAD,
        s = SIZE,
        e = PAD + SIZE,
        path = path,
        mid = PAD + SIZE / 2.0,
        xl = full - 8.0,
        ax = PAD + SIZE - 10.0,
        ay = PAD + SIZE - 10.0,
        auc = auc,
    )
}

pub fn write_roc_svg(path: &Path, points: &[(f64, f64)], auc: f64) -> Result<()> {
    fs::write(path, roc_svg(points, auc)).map_err(io_err(path))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapPoint {
    pub feature: String,
    pub row: usize,
    /// Feature value in model space.
    pub value: f64,
    pub contribution: f64,
}

/// Per-feature (value, contribution) pairs for a beeswarm-style summary.
pub fn shap_points(model: &LogisticModel, x: &Matrix) -> Vec<ShapPoint> {
    let mut out = Vec::with_capacity(x.rows() * x.cols());
    for (row, values) in x.iter_rows().enumerate() {
        let e = linear_shap(model, values);
        for (j, (feature, contribution)) in e.contributions.into_iter().enumerate() {
            out.push(ShapPoint {
                feature,
                row,
                value: values[j],
                contribution,
            });
        }
    }
    out
}

pub fn write_shap_csv(path: &Path, points: &[ShapPoint]) -> Result<()> {
    let mut w = csv_writer(path)?;
    for p in points {
        csv_result(path, w.serialize(p))?;
    }
    csv_result(path, w.flush().map_err(csv::Error::from))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub descriptor: String,
    pub lower: f64,
    pub upper: f64,
    /// Fraction of each sample in the bin.
    pub generated: f64,
    pub training: f64,
}

/// Shared-edge histograms of one descriptor per column for two samples.
pub fn descriptor_histograms(names: &[&str], generated: &[Vec<f64>], training: &[Vec<f64>], bins: usize) -> Vec<HistogramBin> {
    let bins = bins.max(1);
    let mut out = Vec::new();
    for (j, name) in names.iter().enumerate() {
        let all = generated.iter().chain(training).map(|r| r[j]);
        let (lo, hi) = all.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
        if !lo.is_finite() {
            continue;
        }
        let width = if hi > lo { (hi - lo) / bins as f64 } else { 1.0 };
        let fractions = |rows: &[Vec<f64>]| {
            let mut counts = vec![0usize; bins];
            for r in rows {
                let k = (((r[j] - lo) / width) as usize).min(bins - 1);
                counts[k] += 1;
            }
            let n = rows.len().max(1) as f64;
            counts.into_iter().map(|c| c as f64 / n).collect::<Vec<_>>()
        };
        let (g, t) = (fractions(generated), fractions(training));
        for k in 0..bins {
            out.push(HistogramBin {
                descriptor: (*name).to_owned(),
                lower: lo + width * k as f64,
                upper: lo + width * (k + 1) as f64,
                generated: g[k],
                training: t[k],
            });
        }
    }
    out
}

pub fn write_histograms_csv(path: &Path, bins: &[HistogramBin]) -> Result<()> {
    let mut w = csv_writer(path)?;
    for b in bins {
        csv_result(path, w.serialize(b))?;
    }
    csv_result(path, w.flush().map_err(csv::Error::from))
}

/// `metric,value` rows of a benchmark report, KS statistics included.
pub fn write_benchmark_csv(path: &Path, r: &BenchmarkReport) -> Result<()> {
    let mut w = csv_writer(path)?;
    csv_result(path, w.write_record(["metric", "value"]))?;
    let mut rows: Vec<(String, String)> = vec![
        ("validity".into(), r.validity.to_string()),
        ("uniqueness".into(), r.uniqueness.to_string()),
        ("novelty".into(), r.novelty.to_string()),
        ("diversity".into(), opt(r.diversity)),
        ("snn".into(), r.snn.to_string()),
        ("scaff".into(), r.scaff.to_string()),
    ];
    for k in &r.ks {
        rows.push((format!("ks_{}", k.descriptor), k.statistic.to_string()));
        rows.push((format!("ks_p_{}", k.descriptor), k.p_value.to_string()));
    }
    for (m, v) in rows {
        csv_result(path, w.write_record([m, v]))?;
    }
    csv_result(path, w.flush().map_err(csv::Error::from))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histograms_sum_to_one() {
        let g = vec![vec![1.0, 5.0], vec![2.0, 5.0], vec![3.0, 5.0]];
        let t = vec![vec![0.0, 5.0], vec![4.0, 5.0]];
        let bins = descriptor_histograms(&["a", "b"], &g, &t, 4);
        assert_eq!(bins.len(), 8);
        for name in ["a", "b"] {
            let (sg, st) = bins
                .iter()
                .filter(|b| b.descriptor == name)
                .fold((0.0, 0.0), |(x, y), b| (x + b.generated, y + b.training));
            assert!((sg - 1.0f64).abs() < 1e-12 && (st - 1.0f64).abs() < 1e-12);
        }
        assert_eq!((bins[0].lower, bins[3].upper), (0.0, 4.0));
    }

    #[test]
    fn svg_mentions_auc() {
        let svg = roc_svg(&[(0.0, 0.0), (0.5, 1.0), (1.0, 1.0)], 0.75);
        assert!(svg.starts_with("<svg") && svg.contains("AUC = 0.7500"));
    }
}
