//! Verification suite for the planar exponential Choquard bubble: runs the
//! identity, spectral and quadrature checks, writes JSON reports and exports
//! curves as CSV.

pub mod check;
pub mod config;
pub mod csv;
pub mod report;
pub mod suite;

pub use check::{CheckMode, CheckResult};
pub use config::{ConfigError, SuiteConfig};
pub use report::{run_group, run_suite, Report, Summary};
pub use suite::Group;
