//! File formats, caching and the command line for `ncc-core`.

pub mod batch;
pub mod cache;
pub mod cli;
pub mod error;
pub mod groupfile;
pub mod report;
pub mod tower;

pub use error::{Error, Result};
pub use groupfile::GroupSpecFile;
pub use report::{GroupReport, Invariant};
