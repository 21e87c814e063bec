//! Batch CLI for the `cep-core` pricing engine: CSV ingestion, the
//! technology × scenario × maturity grids, and deterministic reports.

pub mod analysis;
pub mod commands;
pub mod config;
pub mod data;
pub mod error;
pub mod report;

pub use analysis::Market;
pub use config::{Format, RunConfig};
pub use error::{CliError, Result};
