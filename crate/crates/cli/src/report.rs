use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `residual < tol`, so a zero tolerance always fails.
    pub fn new(name: &str, anchor: &str, residual: f64, tol: f64) -> Self {
        Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            residual,
            tol,
            pass: residual < tol,
        }
    }

    /// Residual `0` when `ok`, `1` otherwise.
    pub fn flag(name: &str, anchor: &str, ok: bool) -> Self {
        Check::new(name, anchor, if ok { 0.0 } else { 1.0 }, 0.5)
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self.pass = self.residual < tol;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub scenario: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub elapsed_ms: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Md,
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("unknown report format `{0}`")]
    UnknownFormat(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl std::str::FromStr for Format {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, ReportError> {
        match s {
            "json" => Ok(Format::Json),
            "md" | "markdown" => Ok(Format::Md),
            other => Err(ReportError::UnknownFormat(other.to_string())),
        }
    }
}

impl Report {
    pub fn new(scenario: &str, seed: u64, checks: Vec<Check>, elapsed_ms: u64) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            scenario: scenario.to_string(),
            seed,
            pass: checks.iter().all(|c| c.pass),
            checks,
            elapsed_ms,
        }
    }

    pub fn emit(&self, format: Format) -> Result<String, ReportError> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(self)? + "\n"),
            Format::Md => Ok(self.markdown()),
        }
    }

    pub fn parse(json: &str) -> Result<Report, ReportError> {
        Ok(serde_json::from_str(json)?)
    }

    fn markdown(&self) -> String {
        let mut s = String::new();
        let verdict = if self.pass { "pass" } else { "FAIL" };
        let _ = writeln!(s, "# {} (seed {}): {verdict}\n", self.scenario, self.seed);
        let _ = writeln!(s, "| check | anchor | residual | tol | pass |");
        let _ = writeln!(s, "|---|---|---|---|---|");
        for c in &self.checks {
            let _ = writeln!(
                s,
                "| {} | {} | {:.3e} | {:.1e} | {} |",
                c.name,
                c.anchor,
                c.residual,
                c.tol,
                if c.pass { "yes" } else { "**no**" }
            );
        }
        let _ = writeln!(s, "\nelapsed: {} ms", self.elapsed_ms);
        s
    }
}
