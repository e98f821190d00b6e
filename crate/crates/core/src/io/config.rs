use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::FieldFormat;
use crate::exact::{ConstantPair, PlaneWaveTerm, SampleBox};
use crate::heat::DomainBox;
use crate::jets::MAX_JET_ORDER;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse config: {0}")]
    Parse(String),
    #[error("invalid config: {0}")]
    Invalid(String),
}

/// Plane-wave terms of the seed `φ = 1 + Σ a·exp(kx + ly + ωt)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedSpec {
    pub terms: Vec<PlaneWaveTerm>,
}

impl Default for SeedSpec {
    fn default() -> Self {
        Self {
            terms: vec![PlaneWaveTerm::new(1.0, 1.0, 1.0)],
        }
    }
}

/// A named initial-data profile and the base point of the line integral.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSpec {
    pub profile: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    #[serde(default)]
    pub base_point: [f64; 2],
}

impl Default for InitialSpec {
    fn default() -> Self {
        Self {
            profile: "tanh-pair".into(),
            params: BTreeMap::new(),
            base_point: [0.0, 0.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplingSpec {
    pub count: usize,
    pub rng_seed: u64,
    #[serde(default)]
    pub region: SampleBox,
}

impl Default for SamplingSpec {
    fn default() -> Self {
        Self {
            count: 100,
            rng_seed: 20_240_611,
            region: SampleBox::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IvpSpec {
    /// Evolution time `t − t₀`.
    pub tau: f64,
    pub propagator: String,
    /// Grid sizes of the finite-difference convergence study.
    pub fd_resolutions: Vec<usize>,
    /// Evolution times compared by the oracle scenario.
    pub oracle_taus: Vec<f64>,
}

impl Default for IvpSpec {
    fn default() -> Self {
        Self {
            tau: 0.1,
            propagator: "spectral".into(),
            fd_resolutions: vec![64, 128, 256],
            oracle_taus: vec![0.01, 0.1, 1.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub dir: PathBuf,
    pub format: FieldFormat,
    pub write_fields: bool,
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("out"),
            format: FieldFormat::Csv,
            write_fields: true,
        }
    }
}

/// Thresholds of every check a scenario can run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Burgers residual of exact pairs.
    pub residual: f64,
    /// `|u_y − v_x|` of exact pairs.
    pub compatibility: f64,
    /// Residual of the linear equation for the seed.
    pub heat_residual: f64,
    /// Recurrence step versus the general lift with `φ = u + v`.
    pub lift_consistency: f64,
    /// Relative spread of `f/φ` for data with a known `φ`.
    pub ratio_spread: f64,
    /// Difference between the two line-integral paths.
    pub path_independence: f64,
    /// Curl of the recovered fields.
    pub recovered_curl: f64,
    /// Pipeline versus the exact pair.
    pub ivp_error: f64,
    /// Pipeline versus the finite-difference reference.
    pub cross_validation: f64,
    /// Lower bound on the observed finite-difference order.
    pub convergence_order: f64,
    /// Curl drift of the finite-difference solution.
    pub fd_curl: f64,
    /// Spectral solver versus kernel quadrature.
    pub oracle: f64,
    /// Spectral solver versus the shifted closed form.
    pub translation: f64,
    /// Two-step versus one-step spectral evolution.
    pub semigroup: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            residual: 1e-8,
            compatibility: 1e-8,
            heat_residual: 1e-10,
            lift_consistency: 1e-10,
            ratio_spread: 1e-8,
            path_independence: 1e-8,
            recovered_curl: 1e-8,
            ivp_error: 1e-6,
            cross_validation: 5e-3,
            convergence_order: 1.9,
            fd_curl: 1e-4,
            oracle: 1e-6,
            translation: 1e-8,
            semigroup: 1e-12,
        }
    }
}

impl Tolerances {
    fn entries(&self) -> [(&'static str, f64); 14] {
        [
            ("residual", self.residual),
            ("compatibility", self.compatibility),
            ("heat_residual", self.heat_residual),
            ("lift_consistency", self.lift_consistency),
            ("ratio_spread", self.ratio_spread),
            ("path_independence", self.path_independence),
            ("recovered_curl", self.recovered_curl),
            ("ivp_error", self.ivp_error),
            ("cross_validation", self.cross_validation),
            ("convergence_order", self.convergence_order),
            ("fd_curl", self.fd_curl),
            ("oracle", self.oracle),
            ("translation", self.translation),
            ("semigroup", self.semigroup),
        ]
    }
}

/// One experiment, as read from a TOML document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Registered scenario name (`exact`, `ivp`, `xval`, `oracle`).
    pub scenario: String,
    /// Grid; each scenario supplies its own default when absent.
    #[serde(rename = "box", default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainBox>,
    #[serde(default)]
    pub background: ConstantPair,
    #[serde(default)]
    pub seed: SeedSpec,
    #[serde(default)]
    pub initial: InitialSpec,
    /// Recurrence depth `N`.
    #[serde(default)]
    pub depth: usize,
    #[serde(default)]
    pub sampling: SamplingSpec,
    #[serde(default)]
    pub ivp: IvpSpec,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub tolerances: Tolerances,
}

impl ScenarioConfig {
    pub fn for_scenario(name: &str) -> Self {
        Self {
            scenario: name.to_string(),
            domain: None,
            background: ConstantPair::ZERO,
            seed: SeedSpec::default(),
            initial: InitialSpec::default(),
            depth: 0,
            sampling: SamplingSpec::default(),
            ivp: IvpSpec::default(),
            output: OutputSpec::default(),
            tolerances: Tolerances::default(),
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config is always serializable")
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml_str(&text)
    }

    /// Checks that do not depend on the chosen scenario.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |msg: String| Err(ConfigError::Invalid(msg));
        if let Some(d) = &self.domain {
            d.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        }
        for (name, v) in self.tolerances.entries() {
            if !(v.is_finite() && v > 0.0) {
                return invalid(format!("tolerance `{name}` = {v} must be positive"));
            }
        }
        if !(self.background.u0.is_finite() && self.background.v0.is_finite()) {
            return invalid("background must be finite".into());
        }
        if self.depth + 2 > MAX_JET_ORDER {
            return invalid(format!(
                "depth {} needs jets of order {}, above the maximum {MAX_JET_ORDER}",
                self.depth,
                self.depth + 2
            ));
        }
        if self.sampling.count == 0 {
            return invalid("sampling.count must be positive".into());
        }
        let r = &self.sampling.region;
        for (axis, [lo, hi]) in [("x", r.x), ("y", r.y), ("t", r.t)] {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return invalid(format!("sampling.region.{axis} = [{lo}, {hi}] is not an interval"));
            }
        }
        if let Some(t) = self.seed.terms.iter().find(|t| !(t.a.is_finite() && t.k.is_finite() && t.l.is_finite())) {
            return invalid(format!("seed term {t:?} is not finite"));
        }
        if !(self.ivp.tau.is_finite() && self.ivp.tau >= 0.0) {
            return invalid(format!("ivp.tau = {} must be non-negative", self.ivp.tau));
        }
        if let Some(t) = self.ivp.oracle_taus.iter().find(|t| !(t.is_finite() && **t > 0.0)) {
            return invalid(format!("oracle tau {t} must be positive"));
        }
        if let Some(n) = self.ivp.fd_resolutions.iter().find(|n| **n < 8 || !n.is_power_of_two()) {
            return invalid(format!("fd resolution {n} must be a power of two >= 8"));
        }
        if self.initial.base_point.iter().any(|v| !v.is_finite()) {
            return invalid("initial.base_point must be finite".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document_gets_defaults() {
        let cfg = ScenarioConfig::from_toml_str("scenario = \"exact\"\n").unwrap();
        assert_eq!(cfg, ScenarioConfig::for_scenario("exact"));
        cfg.validate().unwrap();
    }

    #[test]
    fn full_round_trip() {
        let mut cfg = ScenarioConfig::for_scenario("ivp");
        cfg.domain = Some(DomainBox::new(16.0, 12.0, 64, 32, 0.1).unwrap());
        cfg.background = ConstantPair::new(0.1 + 0.2, -1.0 / 3.0);
        cfg.initial.params.insert("a".into(), 2.5);
        cfg.seed.terms.push(PlaneWaveTerm::new(0.3, -1.0, 2.0));
        cfg.tolerances.oracle = 1.234_567_890_123_456_7e-7;
        cfg.output.format = FieldFormat::Bin;
        let text = cfg.to_toml_string();
        assert_eq!(ScenarioConfig::from_toml_str(&text).unwrap(), cfg);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(ScenarioConfig::from_toml_str("scenario = \"exact\"\nbogus = 1\n").is_err());
    }

    #[test]
    fn nonpositive_tolerance_rejected() {
        let mut cfg = ScenarioConfig::for_scenario("exact");
        cfg.tolerances.residual = 0.0;
        assert!(matches!(cfg.validate(), Err(ConfigError::Invalid(_))));
    }
}
