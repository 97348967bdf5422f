//! JSON model and DAG files.

use std::fs;
use std::path::{Path, PathBuf};

use dtcheck_core::dag::AugmentedDag;
use dtcheck_core::MultiRegimeModel;
use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<T, FormatError> {
    let text = fs::read_to_string(path).map_err(|source| FormatError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| FormatError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn save<T: Serialize>(path: &Path, value: &T) -> Result<(), FormatError> {
    let text = serde_json::to_string_pretty(value).expect("serializable value");
    fs::write(path, text + "\n").map_err(|source| FormatError::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads a model file: `variables`, `targets` and `regimes`, where each
/// regime maps target names to a value label or `null` (idle).
pub fn load_model(path: &Path) -> Result<MultiRegimeModel, FormatError> {
    load(path)
}

pub fn save_model(path: &Path, model: &MultiRegimeModel) -> Result<(), FormatError> {
    save(path, model)
}

/// Reads a DAG file: `nodes`, `targets`, `edges` as `[from, to]` pairs and
/// `order`. Indicator endpoints are written `F(T)`.
pub fn load_dag(path: &Path) -> Result<AugmentedDag, FormatError> {
    load(path)
}

pub fn save_dag(path: &Path, dag: &AugmentedDag) -> Result<(), FormatError> {
    save(path, dag)
}
