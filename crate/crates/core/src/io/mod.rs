//! b-file ingestion, cross-validation, the term cache and JSON documents.

mod bfile;
mod cache;
mod doc;

pub use bfile::{cross_validate, parse_bfile, BFile, BFileError};
pub use cache::{cache_path, cache_terms, definition_hash, load_cached, CacheLoad};
pub use doc::{
    builtin_certificate_json, parse_certificate_doc, parse_sequence_doc, sequence_doc_json, CertificateDoc,
    KindTag, RunReport, SequenceDoc, SequenceRef,
};

use thiserror::Error;

use crate::certify::CertifyError;
use crate::sequences::SequenceError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("{0}")]
    Io(String),
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("invalid document: {0}")]
    InvalidDocument(String),
    #[error("cache was written for another definition (expected hash {expected}, found {found})")]
    HashMismatch { expected: String, found: String },
    #[error("corrupt cache at line {line}: {reason}")]
    CorruptCache { line: usize, reason: String },
    #[error(transparent)]
    BFile(#[from] BFileError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
}
