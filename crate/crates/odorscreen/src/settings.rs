//! Run settings from defaults, a `key = value` config file, then flags.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use odorscreen_core::likeliness::WorkflowConfig;

use crate::dataset::{DatasetConfig, LabelFormat};
use crate::error::{io_err, Error, Result};
use crate::pubchem::{PubChemConfig, DEFAULT_BASE_URL, MIN_INTERVAL};

#[derive(Debug, Clone)]
pub struct Settings {
    pub seed: u64,
    pub threads: Option<usize>,
    pub offline: bool,
    pub cache_dir: Option<PathBuf>,
    pub pubchem_url: String,
    pub pubchem_interval: Duration,
    pub knn_k: usize,
    pub dataset: DatasetConfig,
    pub workflow: WorkflowConfig,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            seed: 42,
            threads: None,
            offline: false,
            cache_dir: None,
            pubchem_url: std::env::var(crate::pubchem::BASE_URL_ENV).unwrap_or_else(|_| DEFAULT_BASE_URL.to_owned()),
            pubchem_interval: MIN_INTERVAL,
            knn_k: 5,
            dataset: DatasetConfig::default(),
            workflow: WorkflowConfig::default(),
        }
    }
}

pub const KEYS: &[&str] = &[
    "seed",
    "threads",
    "offline",
    "cache_dir",
    "pubchem_url",
    "pubchem_interval_ms",
    "knn_k",
    "smiles_column",
    "label_format",
    "label_column",
    "label_separator",
    "label_columns",
    "odorless_marker",
    "test_fraction",
    "smote_k",
    "correlation_threshold",
    "vif_threshold",
    "top_n",
    "l2",
    "tol",
    "max_iter",
];

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e: T::Err| Error::Setting {
        key: key.to_owned(),
        value: value.to_owned(),
        message: e.to_string(),
    })
}

fn setting_err(key: &str, value: &str, message: &str) -> Error {
    Error::Setting {
        key: key.to_owned(),
        value: value.to_owned(),
        message: message.to_owned(),
    }
}

impl Settings {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key {
            "seed" => self.seed = parse(key, v)?,
            "threads" => self.threads = Some(parse(key, v)?).filter(|&n: &usize| n > 0),
            "offline" => self.offline = parse(key, v)?,
            "cache_dir" => self.cache_dir = Some(PathBuf::from(v)),
            "pubchem_url" => self.pubchem_url = v.to_owned(),
            "pubchem_interval_ms" => self.pubchem_interval = Duration::from_millis(parse(key, v)?),
            "knn_k" => {
                self.knn_k = parse(key, v)?;
                if self.knn_k == 0 {
                    return Err(setting_err(key, v, "must be at least 1"));
                }
            }
            "smiles_column" => self.dataset.smiles_column = v.to_owned(),
            "label_format" => {
                self.dataset.labels = match v {
                    "onehot" => LabelFormat::OneHot { columns: None },
                    "delimited" => LabelFormat::Delimited {
                        column: "descriptors".into(),
                        separator: ';',
                    },
                    _ => return Err(setting_err(key, v, "expected onehot or delimited")),
                }
            }
            "label_column" | "label_separator" => {
                let LabelFormat::Delimited { column, separator } = &mut self.dataset.labels else {
                    return Err(setting_err(key, v, "only applies to label_format = delimited"));
                };
                if key == "label_column" {
                    *column = v.to_owned();
                } else {
                    let mut chars = value.chars();
                    match (chars.next(), chars.next()) {
                        (Some(c), None) => *separator = c,
                        _ => return Err(setting_err(key, value, "expected a single character")),
                    }
                }
            }
            "label_columns" => {
                let LabelFormat::OneHot { columns } = &mut self.dataset.labels else {
                    return Err(setting_err(key, v, "only applies to label_format = onehot"));
                };
                *columns = Some(v.split(',').map(|c| c.trim().to_owned()).filter(|c| !c.is_empty()).collect());
            }
            "odorless_marker" => self.dataset.odorless_marker = v.to_owned(),
            "test_fraction" => {
                let f: f64 = parse(key, v)?;
                if !(0.0 < f && f < 1.0) {
                    return Err(setting_err(key, v, "must lie strictly between 0 and 1"));
                }
                self.workflow.test_fraction = f;
            }
            "smote_k" => self.workflow.smote_k = parse(key, v)?,
            "correlation_threshold" => self.workflow.correlation_threshold = parse(key, v)?,
            "vif_threshold" => self.workflow.vif_threshold = parse(key, v)?,
            "top_n" => self.workflow.top_n = parse(key, v)?,
            "l2" => self.workflow.train.l2 = parse(key, v)?,
            "tol" => self.workflow.train.tol = parse(key, v)?,
            "max_iter" => self.workflow.train.max_iter = parse(key, v)?,
            _ => return Err(setting_err(key, v, &format!("unknown key; known keys: {}", KEYS.join(", ")))),
        }
        Ok(())
    }

    /// Applies a config file: `key = value` lines, `#` comments.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Config {
                line: i + 1,
                message: format!("expected key = value, got {line:?}"),
            })?;
            self.set(k.trim(), v).map_err(|e| Error::Config {
                line: i + 1,
                message: e.to_string(),
            })?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path).map_err(io_err(path))?;
        self.apply_text(&text)
    }

    /// `key=value` override from the command line.
    pub fn apply_override(&mut self, pair: &str) -> Result<()> {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| setting_err(pair, "", "expected key=value"))?;
        self.set(k.trim(), v)
    }

    pub fn pubchem(&self) -> PubChemConfig {
        PubChemConfig {
            base_url: self.pubchem_url.clone(),
            cache_dir: self.cache_dir.clone(),
            offline: self.offline,
            min_interval: self.pubchem_interval,
            ..PubChemConfig::default()
        }
    }

    pub fn workflow(&self) -> WorkflowConfig {
        WorkflowConfig {
            seed: self.seed,
            ..self.workflow.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_override() {
        let mut s = Settings::default();
        s.apply_text("# run config\nseed = 7\nlabel_format = onehot\nlabel_columns = fruity, green\nknn_k=3\n")
            .unwrap();
        s.apply_override("seed=9").unwrap();
        assert_eq!((s.seed, s.knn_k, s.workflow().seed), (9, 3, 9));
        assert_eq!(
            s.dataset.labels,
            LabelFormat::OneHot {
                columns: Some(vec!["fruity".into(), "green".into()])
            }
        );
    }

    #[test]
    fn rejects_bad_lines() {
        let mut s = Settings::default();
        assert!(matches!(s.apply_text("seed 7"), Err(Error::Config { line: 1, .. })));
        assert!(s.apply_text("\nnope = 1").is_err());
        assert!(s.apply_override("knn_k=0").is_err());
        assert!(s.apply_override("label_columns=a").is_err());
        assert!(s.apply_override("test_fraction=1.5").is_err());
    }
}
