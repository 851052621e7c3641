//! L2-regularized logistic regression trained by gradient descent.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::{LikelinessError, Matrix, Scaler};

pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + libm::exp(-z))
    } else {
        let e = libm::exp(z);
        e / (1.0 + e)
    }
}

/// ln(1 + e^z) without overflow.
fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + libm::log1p(libm::exp(-z))
    } else {
        libm::log1p(libm::exp(z))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    /// Weight of the (l2 / 2)·‖w‖² penalty; the intercept is not penalized.
    pub l2: f64,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            l2: 0.0,
            tol: 1e-6,
            max_iter: 10_000,
        }
    }
}

/// Mean binary cross-entropy plus penalty, and its gradient.
///
/// `params` is `[intercept, w_1, .., w_p]`; the gradient has the same layout.
pub fn loss_and_gradient(x: &Matrix, y: &[u8], params: &[f64], l2: f64) -> (f64, Vec<f64>) {
    let n = x.rows() as f64;
    let mut loss = 0.0;
    let mut grad = alloc::vec![0.0; params.len()];
    for (row, &label) in x.iter_rows().zip(y) {
        let z = params[0] + row.iter().zip(&params[1..]).map(|(a, b)| a * b).sum::<f64>();
        let t = f64::from(label);
        // -[t ln σ(z) + (1-t) ln(1-σ(z))] = softplus(z) - t z
        loss += softplus(z) - t * z;
        let r = sigmoid(z) - t;
        grad[0] += r;
        for (g, v) in grad[1..].iter_mut().zip(row) {
            *g += r * v;
        }
    }
    loss /= n;
    for g in grad.iter_mut() {
        *g /= n;
    }
    for (g, w) in grad[1..].iter_mut().zip(&params[1..]) {
        *g += l2 * w;
        loss += 0.5 * l2 * w * w;
    }
    (loss, grad)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogisticModel {
    pub feature_names: Vec<String>,
    pub intercept: f64,
    pub coefficients: Vec<f64>,
    /// Maps raw descriptors to the space the coefficients live in.
    pub scaler: Option<Scaler>,
    /// Reference point for SHAP, in the model's input space.
    pub background: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainOutcome {
    pub model: LogisticModel,
    pub converged: bool,
    pub iterations: usize,
    pub loss_history: Vec<f64>,
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |a, x| a.max(x.abs()))
}

/// Fits on `x` (already in model space). Barzilai–Borwein step sizes with
/// Armijo backtracking, so the loss never increases.
pub fn train_logistic(
    x: &Matrix,
    y: &[u8],
    feature_names: &[String],
    config: &TrainConfig,
) -> Result<TrainOutcome, LikelinessError> {
    if x.rows() == 0 {
        return Err(LikelinessError::EmptyMatrix);
    }
    if y.len() != x.rows() || feature_names.len() != x.cols() {
        return Err(LikelinessError::LengthMismatch);
    }
    if y.iter().all(|&l| l == y[0]) {
        return Err(LikelinessError::SingleClass);
    }
    let mut params = alloc::vec![0.0; x.cols() + 1];
    let (mut loss, mut grad) = loss_and_gradient(x, y, &params, config.l2);
    let mut history = alloc::vec![loss];
    let mut step = 1.0;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < config.max_iter {
        iterations += 1;
        let g2: f64 = grad.iter().map(|g| g * g).sum();
        let mut t = step;
        let (next, next_loss, next_grad) = loop {
            let cand: Vec<f64> = params.iter().zip(&grad).map(|(p, g)| p - t * g).collect();
            let (l, g) = loss_and_gradient(x, y, &cand, config.l2);
            if l <= loss - 1e-4 * t * g2 || t < 1e-20 {
                break (cand, l, g);
            }
            t *= 0.5;
        };
        if next_loss > loss {
            // Step collapsed; nothing more to gain along the gradient.
            converged = inf_norm(&grad) < 1e-5;
            break;
        }
        let s: Vec<f64> = next.iter().zip(&params).map(|(a, b)| a - b).collect();
        let d: Vec<f64> = next_grad.iter().zip(&grad).map(|(a, b)| a - b).collect();
        let sd: f64 = s.iter().zip(&d).map(|(a, b)| a * b).sum();
        let ss: f64 = s.iter().map(|a| a * a).sum();
        step = if sd > 0.0 { (ss / sd).clamp(1e-10, 1e10) } else { t * 2.0 };
        let delta = loss - next_loss;
        params = next;
        loss = next_loss;
        grad = next_grad;
        history.push(loss);
        if delta < config.tol && inf_norm(&grad) < 1e-5 {
            converged = true;
            break;
        }
    }
    let background = (0..x.cols())
        .map(|j| x.column(j).iter().sum::<f64>() / x.rows() as f64)
        .collect();
    Ok(TrainOutcome {
        model: LogisticModel {
            feature_names: feature_names.to_vec(),
            intercept: params[0],
            coefficients: params[1..].to_vec(),
            scaler: None,
            background,
        },
        converged,
        iterations,
        loss_history: history,
    })
}

impl LogisticModel {
    /// Maps a raw descriptor row into model space.
    pub fn prepare_row(&self, raw: &[f64]) -> Vec<f64> {
        match &self.scaler {
            Some(s) => s.transform_row(raw),
            None => raw.to_vec(),
        }
    }

    /// Logit of a row already in model space.
    pub fn logit(&self, x: &[f64]) -> f64 {
        self.intercept + self.coefficients.iter().zip(x).map(|(b, v)| b * v).sum::<f64>()
    }

    pub fn predict_proba(&self, x: &[f64]) -> f64 {
        sigmoid(self.logit(x))
    }

    /// Probability for a raw (unscaled) descriptor row.
    pub fn predict_raw(&self, raw: &[f64]) -> f64 {
        self.predict_proba(&self.prepare_row(raw))
    }

    pub fn predict_matrix(&self, x: &Matrix) -> Vec<f64> {
        x.iter_rows().map(|r| self.predict_proba(r)).collect()
    }

    /// Tab-separated text form; floats round-trip exactly. `#` lines are
    /// comments when reading.
    pub fn to_text(&self) -> String {
        let mut out = String::from("format_version\t1\n");
        out += &format!("intercept\t{}\n", self.intercept);
        for (j, name) in self.feature_names.iter().enumerate() {
            let (mean, sd) = match &self.scaler {
                Some(s) => (s.means[j].to_string(), s.stddevs[j].to_string()),
                None => ("none".to_string(), "none".to_string()),
            };
            out += &format!(
                "feature\t{}\t{}\t{}\t{}\t{}\n",
                name, self.coefficients[j], mean, sd, self.background[j]
            );
        }
        out
    }

    pub fn from_text(text: &str) -> Result<LogisticModel, LikelinessError> {
        let bad = |msg: &str| LikelinessError::ModelFormat(msg.to_string());
        let num = |s: &str| s.parse::<f64>().map_err(|_| LikelinessError::ModelFormat(format!("bad number {s:?}")));
        let mut lines = text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#'));
        if lines.next().map(str::trim_end) != Some("format_version\t1") {
            return Err(bad("missing format_version 1 header"));
        }
        let intercept = match lines.next().and_then(|l| l.strip_prefix("intercept\t")) {
            Some(v) => num(v.trim_end())?,
            None => return Err(bad("missing intercept")),
        };
        let mut names = Vec::new();
        let mut coefficients = Vec::new();
        let mut means = Vec::new();
        let mut sds = Vec::new();
        let mut background = Vec::new();
        let mut scaled: Option<bool> = None;
        for line in lines {
            let f: Vec<&str> = line.trim_end().split('\t').collect();
            if f.len() != 6 || f[0] != "feature" {
                return Err(bad("feature rows need 6 tab-separated fields"));
            }
            names.push(f[1].to_string());
            coefficients.push(num(f[2])?);
            let has = f[3] != "none";
            if *scaled.get_or_insert(has) != has || (f[4] != "none") != has {
                return Err(bad("scaler given for some features only"));
            }
            if has {
                means.push(num(f[3])?);
                sds.push(num(f[4])?);
            }
            background.push(num(f[5])?);
        }
        let scaler = (scaled == Some(true)).then_some(Scaler { means, stddevs: sds });
        Ok(LogisticModel {
            feature_names: names,
            intercept,
            coefficients,
            scaler,
            background,
        })
    }
}
