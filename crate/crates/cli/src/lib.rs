//! Command implementations behind the `rbccr` binary.

pub mod benchmark;
pub mod config;
pub mod error;
pub mod records;
pub mod report;
pub mod resample;

pub use error::CliError;
