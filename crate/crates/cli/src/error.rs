use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed CSV: {0}")]
    Csv(String),
    #[error("malformed header: {0}")]
    Header(String),
    #[error("no input column (`in_` prefix)")]
    NoInputColumn,
    #[error("no output column (`out_` prefix)")]
    NoOutputColumn,
    #[error("DMU {id}, column {column}: `{value}` is not an unsigned decimal")]
    NonNumeric {
        id: String,
        column: String,
        value: String,
    },
    #[error("DMU {id}: {value} has no finite decimal form")]
    NotDecimal { id: String, value: String },
    #[error("{0}")]
    Core(#[from] dea_facets_core::Error),
}
