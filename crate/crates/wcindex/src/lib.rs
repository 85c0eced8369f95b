//! Index files, reference oracles, reports and the verification harness
//! around `wcindex-core`.

pub mod bench;
pub mod error;
pub mod format;
pub mod oracle;
pub mod report;
pub mod verify;

pub use error::{Result, WcError};
