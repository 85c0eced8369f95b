use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum WcError {
    #[error(transparent)]
    Core(#[from] wcindex_core::Error),
    #[error("i/o error")]
    Io(#[from] io::Error),
    #[error("not an index file (bad magic)")]
    BadMagic,
    #[error("unsupported index format version {found} (expected {expected})")]
    Version { found: u32, expected: u32 },
    #[error("section {tag}: checksum mismatch")]
    Checksum { tag: String },
    #[error("expected section {expected}, found {found}")]
    Section { expected: String, found: String },
    #[error("section {tag}: {source}")]
    Decode {
        tag: String,
        #[source]
        source: bincode::Error,
    },
    #[error("enumeration needs {required} concrete patterns, budget is {budget}")]
    Budget { required: u128, budget: u64 },
}

pub type Result<T> = std::result::Result<T, WcError>;
