//! Command-line experiments over the `weyl_billiard` library.

pub mod config;
pub mod experiments;
pub mod output;

pub use config::{CliError, Command, ExperimentConfig, Format};
pub use experiments::run;
pub use output::{write_report, Report, Table};
