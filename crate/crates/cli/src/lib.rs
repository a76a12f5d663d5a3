//! Batch runner for the builtin verification scenarios.

pub mod report;
pub mod scenarios;

pub use report::{Check, Format, Report, SCHEMA_VERSION};
pub use scenarios::{run, Config, ScenarioId};
