use std::time::Instant;

use serde::Serialize;

use crate::check::CheckResult;
use crate::config::{ConfigEcho, SuiteConfig};
use crate::suite::{run_checks, Group};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub runtime_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub config: ConfigEcho,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
    pub timestamp: String,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Runs every check.
pub fn run_suite(cfg: &SuiteConfig) -> Report {
    run_group(cfg, Group::All)
}

pub fn run_group(cfg: &SuiteConfig, group: Group) -> Report {
    let start = Instant::now();
    let checks = run_checks(cfg, group);
    let passed = checks.iter().filter(|c| c.pass).count();
    let summary = Summary { passed, failed: checks.len() - passed, runtime_ms: start.elapsed().as_millis() as u64 };
    Report {
        config: ConfigEcho::from(cfg),
        checks,
        summary,
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
    }
}
