use std::path::Path;

use serde::{Deserialize, Serialize};

use super::FieldIoError;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunStatus {
    Passed,
    Failed,
    ConfigInvalid,
}

impl RunStatus {
    /// Process exit code: 0 pass, 1 check failure, 2 config error.
    pub fn exit_code(self) -> i32 {
        match self {
            RunStatus::Passed => 0,
            RunStatus::Failed => 1,
            RunStatus::ConfigInvalid => 2,
        }
    }
}

/// Whether the measured value must stay below or above the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    Max,
    Min,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// Measured value; NaN is written as `nan` when the computation failed.
    pub measured: f64,
    pub threshold: f64,
    pub bound: Bound,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    /// Passes when `measured <= threshold`.
    pub fn at_most(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            threshold,
            bound: Bound::Max,
            passed: measured <= threshold,
            detail: String::new(),
        }
    }

    /// Passes when `measured >= threshold`.
    pub fn at_least(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            threshold,
            bound: Bound::Min,
            passed: measured >= threshold,
            detail: String::new(),
        }
    }

    /// Passes when `measured > 0`.
    pub fn positive(name: impl Into<String>, measured: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            threshold: 0.0,
            bound: Bound::Min,
            passed: measured > 0.0,
            detail: "strictly positive".into(),
        }
    }

    /// A check that could not be evaluated.
    pub fn error(name: impl Into<String>, threshold: f64, error: impl std::fmt::Display) -> Self {
        Self {
            name: name.into(),
            measured: f64::NAN,
            threshold,
            bound: Bound::Max,
            passed: false,
            detail: error.to_string(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

/// Where a report was produced. Contains nothing that varies between runs
/// of the same build on the same platform.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub package: String,
    pub version: String,
    pub os: String,
    pub arch: String,
}

impl Fingerprint {
    pub fn current() -> Self {
        Self {
            package: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            os: std::env::consts::OS.into(),
            arch: std::env::consts::ARCH.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub scenario: String,
    pub status: RunStatus,
    pub rng_seed: u64,
    pub fingerprint: Fingerprint,
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn new(scenario: impl Into<String>, rng_seed: u64, checks: Vec<Check>) -> Self {
        let status = if !checks.is_empty() && checks.iter().all(|c| c.passed) {
            RunStatus::Passed
        } else {
            RunStatus::Failed
        };
        Self {
            schema_version: REPORT_SCHEMA_VERSION,
            scenario: scenario.into(),
            status,
            rng_seed,
            fingerprint: Fingerprint::current(),
            checks,
        }
    }

    /// Report for a configuration that was rejected before anything ran.
    pub fn config_invalid(scenario: impl Into<String>, rng_seed: u64, error: impl std::fmt::Display) -> Self {
        let mut report = Self::new(scenario, rng_seed, vec![Check::error("config", 0.0, error)]);
        report.status = RunStatus::ConfigInvalid;
        report
    }

    pub fn passed(&self) -> bool {
        self.status == RunStatus::Passed
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("report is always serializable")
    }

    pub fn from_toml_str(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn write(&self, path: &Path) -> Result<(), FieldIoError> {
        std::fs::write(path, self.to_toml_string()).map_err(|source| FieldIoError::Io {
            path: path.display().to_string(),
            source,
        })
    }
}

/// Wall-clock time per phase, kept out of [`RunReport`] so that reports of
/// identical runs stay byte-identical.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub phases: Vec<Phase>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Phase {
    pub name: String,
    pub seconds: f64,
}

impl Timings {
    pub fn record(&mut self, name: impl Into<String>, seconds: f64) {
        self.phases.push(Phase {
            name: name.into(),
            seconds,
        });
    }

    pub fn total(&self) -> f64 {
        self.phases.iter().map(|p| p.seconds).sum()
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("timings are always serializable")
    }
}
