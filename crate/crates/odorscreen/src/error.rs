use std::path::PathBuf;

use odorscreen_core::descriptors::SchemaError;
use odorscreen_core::genmetrics::GenMetricsError;
use odorscreen_core::likeliness::LikelinessError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{}: no column named {column:?}", path.display())]
    MissingColumn { path: PathBuf, column: String },
    #[error("{}: no usable rows", path.display())]
    EmptyDataset { path: PathBuf },
    #[error("{}: no SMILES lines", path.display())]
    EmptyInput { path: PathBuf },
    #[error("dataset has no labelled molecules to suggest from")]
    NoLabels,
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("invalid setting {key}={value:?}: {message}")]
    Setting { key: String, value: String, message: String },
    #[error("model: {0}")]
    Model(String),
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error(transparent)]
    Likeliness(#[from] LikelinessError),
    #[error(transparent)]
    GenMetrics(#[from] GenMetricsError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Error {
    let path = path.into();
    move |source| Error::Io { path, source }
}
