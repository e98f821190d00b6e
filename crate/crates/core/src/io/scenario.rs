use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use super::{write_field, Check, ConfigError, FieldFormat, FieldIoError, RunReport, ScenarioConfig, Timings};
use crate::exact::{
    backlund_lift, cole_hopf_lift, make_plane_wave_seed, max_pair_defects, sample_points, validate_bt_premises,
    PairSum, SampleBox, SolutionPair, SpaceTimePoint,
};
use crate::fd::{discrete_curl, fd_integrate, FDState};
use crate::heat::{
    build_initial_data, path_independence_check, recover_burgers, recovered_curl, solve_heat_spectral,
    ExpCosSolution, InitialData, InitialProfile, KernelPropagator, PropagatorRegistry, DomainBox, ProfileRegistry,
    Region, ScalarField2D,
};

/// A completed run: the report, the emitted fields and per-phase timings.
#[derive(Debug, Clone)]
pub struct RunBundle {
    pub report: RunReport,
    pub fields: Vec<(String, ScalarField2D)>,
    pub timings: Timings,
}

impl RunBundle {
    pub fn field(&self, name: &str) -> Option<&ScalarField2D> {
        self.fields.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn exit_code(&self) -> i32 {
        self.report.status.exit_code()
    }
}

/// Collects checks, fields and timings while a scenario runs.
#[derive(Default)]
pub struct RunOutput {
    checks: Vec<Check>,
    fields: Vec<(String, ScalarField2D)>,
    timings: Timings,
}

impl RunOutput {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Unwraps `result`, turning an error into a failed check named `name`.
    pub fn record<T, E: Display>(&mut self, name: &str, threshold: f64, result: Result<T, E>) -> Option<T> {
        match result {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks.push(Check::error(name, threshold, e));
                None
            }
        }
    }

    pub fn emit(&mut self, name: impl Into<String>, field: ScalarField2D) {
        self.fields.push((name.into(), field));
    }

    pub fn timed<T>(&mut self, phase: &str, f: impl FnOnce(&mut Self) -> T) -> T {
        let start = Instant::now();
        let out = f(self);
        self.timings.record(phase, start.elapsed().as_secs_f64());
        out
    }
}

/// A runnable experiment selected by name.
pub trait Scenario: Send + Sync {
    fn name(&self) -> &'static str;

    /// Longer names accepted in configuration files.
    fn aliases(&self) -> &'static [&'static str] {
        &[]
    }

    /// Grid used when the configuration has no `[box]` table.
    fn default_domain(&self) -> DomainBox;

    /// Scenario-specific validation beyond [`ScenarioConfig::validate`].
    fn validate(&self, _config: &ScenarioConfig) -> Result<(), ConfigError> {
        Ok(())
    }

    fn run(&self, config: &ScenarioConfig, domain: &DomainBox, out: &mut RunOutput);
}

pub struct ScenarioRegistry {
    entries: BTreeMap<&'static str, Arc<dyn Scenario>>,
}

impl Default for ScenarioRegistry {
    fn default() -> Self {
        let mut reg = Self {
            entries: BTreeMap::new(),
        };
        reg.register(Arc::new(ExactScenario));
        reg.register(Arc::new(IvpScenario));
        reg.register(Arc::new(CrossValidateScenario));
        reg.register(Arc::new(OracleScenario));
        reg
    }
}

impl ScenarioRegistry {
    pub fn register(&mut self, scenario: Arc<dyn Scenario>) {
        self.entries.insert(scenario.name(), scenario);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn Scenario>, ConfigError> {
        self.entries
            .values()
            .find(|s| s.name() == name || s.aliases().contains(&name))
            .cloned()
            .ok_or_else(|| {
                ConfigError::Invalid(format!(
                    "unknown scenario `{name}` (known: {})",
                    self.names().join(", ")
                ))
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }
}

/// Runs the configured scenario. Invalid configurations and failures inside
/// the numerical modules both end up as failed checks in the report.
pub fn run_scenario(config: &ScenarioConfig) -> RunBundle {
    run_with_registry(&ScenarioRegistry::default(), config)
}

pub fn run_with_registry(registry: &ScenarioRegistry, config: &ScenarioConfig) -> RunBundle {
    let rng_seed = config.sampling.rng_seed;
    let invalid = |e: ConfigError| RunBundle {
        report: RunReport::config_invalid(config.scenario.clone(), rng_seed, e),
        fields: Vec::new(),
        timings: Timings::default(),
    };
    let scenario = match registry.get(&config.scenario) {
        Ok(s) => s,
        Err(e) => return invalid(e),
    };
    if let Err(e) = config.validate().and_then(|_| scenario.validate(config)) {
        return invalid(e);
    }
    let domain = config.domain.unwrap_or_else(|| scenario.default_domain());
    let mut out = RunOutput::default();
    scenario.run(config, &domain, &mut out);
    RunBundle {
        report: RunReport::new(scenario.name(), rng_seed, out.checks),
        fields: out.fields,
        timings: out.timings,
    }
}

/// Parses and runs a TOML document; parse errors become a config-invalid report.
pub fn run_config_text(text: &str) -> RunBundle {
    match ScenarioConfig::from_toml_str(text) {
        Ok(cfg) => run_scenario(&cfg),
        Err(e) => RunBundle {
            report: RunReport::config_invalid("unknown", 0, e),
            fields: Vec::new(),
            timings: Timings::default(),
        },
    }
}

/// Writes every field of the bundle as `<name>.<ext>` into `dir`.
pub fn emit_fields(bundle: &RunBundle, dir: &Path, format: FieldFormat) -> Result<Vec<PathBuf>, FieldIoError> {
    std::fs::create_dir_all(dir).map_err(|source| FieldIoError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let mut written = Vec::new();
    for (name, field) in &bundle.fields {
        let path = dir.join(format!("{name}.{}", format.extension()));
        write_field(field, &path, format)?;
        written.push(path);
    }
    Ok(written)
}

/// Writes `report.toml`, `timings.toml` and, if `fields` is set, the fields.
pub fn write_bundle(
    bundle: &RunBundle,
    dir: &Path,
    format: FieldFormat,
    fields: bool,
) -> Result<Vec<PathBuf>, FieldIoError> {
    let mut written = if fields {
        emit_fields(bundle, dir, format)?
    } else {
        std::fs::create_dir_all(dir).map_err(|source| FieldIoError::Io {
            path: dir.display().to_string(),
            source,
        })?;
        Vec::new()
    };
    let report = dir.join("report.toml");
    bundle.report.write(&report)?;
    written.push(report);
    let timings = dir.join("timings.toml");
    std::fs::write(&timings, bundle.timings.to_toml_string()).map_err(|source| FieldIoError::Io {
        path: timings.display().to_string(),
        source,
    })?;
    written.push(timings);
    Ok(written)
}

/// `(u, v)` of an exact pair sampled on the grid at time `t`.
pub fn pair_on_grid(
    pair: &SolutionPair,
    domain: &DomainBox,
    t: f64,
) -> Result<(ScalarField2D, ScalarField2D), crate::exact::ExactError> {
    let mut u = Vec::with_capacity(domain.len());
    let mut v = Vec::with_capacity(domain.len());
    for iy in 0..domain.ny {
        for ix in 0..domain.nx {
            let (a, b) = pair.value(SpaceTimePoint::new(domain.x(ix), domain.y(iy), t))?;
            u.push(a);
            v.push(b);
        }
    }
    let u = ScalarField2D::new(*domain, t, u).expect("grid-sized");
    let v = ScalarField2D::new(*domain, t, v).expect("grid-sized");
    Ok((u, v))
}

fn max_interior(field: &ScalarField2D) -> f64 {
    field
        .region_iter(Region::InteriorHalf)
        .map(|(_, _, v)| v.abs())
        .fold(0.0, f64::max)
}

fn interior_box(domain: &DomainBox, t: f64) -> SampleBox {
    SampleBox {
        x: [-domain.lx / 4.0, domain.lx / 4.0],
        y: [-domain.ly / 4.0, domain.ly / 4.0],
        t: [t, t],
    }
}

fn build_profile(config: &ScenarioConfig, t0: f64) -> Result<Arc<dyn InitialProfile>, ConfigError> {
    ProfileRegistry::default()
        .build(&config.initial.profile, &config.initial.params, config.background, t0)
        .map_err(|e| ConfigError::Invalid(e.to_string()))
}

fn validate_ivp(config: &ScenarioConfig, default_t0: f64) -> Result<(), ConfigError> {
    let t0 = config.domain.map_or(default_t0, |d| d.t0);
    build_profile(config, t0)?;
    PropagatorRegistry::default()
        .get(&config.ivp.propagator)
        .map_err(|e| ConfigError::Invalid(e.to_string()))?;
    Ok(())
}

/// Exact pairs from a plane-wave seed: premises of the lift, residual and
/// curl at every recurrence depth, and agreement of each recurrence step
/// with the general lift.
pub struct ExactScenario;

impl Scenario for ExactScenario {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn aliases(&self) -> &'static [&'static str] {
        &["exact-recurrence"]
    }

    fn default_domain(&self) -> DomainBox {
        DomainBox::new(4.0, 4.0, 32, 32, 0.5).expect("valid default box")
    }

    fn run(&self, cfg: &ScenarioConfig, domain: &DomainBox, out: &mut RunOutput) {
        let tol = &cfg.tolerances;
        let bg = cfg.background;
        let Some(seed) = out.record("seed", tol.heat_residual, make_plane_wave_seed(bg, &cfg.seed.terms)) else {
            return;
        };
        let points = sample_points(&cfg.sampling.region, cfg.sampling.count, cfg.sampling.rng_seed);

        let background = SolutionPair::constant(bg);
        let premises = out.timed("premises", |_| validate_bt_premises(&seed, &background, &points));
        out.push(Check::at_most("premises.heat_residual", premises.max_heat_residual, tol.heat_residual));
        out.push(Check::positive("premises.min_phi", premises.min_phi));
        if let Some(first) = premises.failures.first() {
            out.push(Check::error("premises.evaluation", 0.0, first));
        }

        let mut pair = cole_hopf_lift(&seed, bg);
        for depth in 0..=cfg.depth {
            let defects = out.timed(&format!("depth{depth}"), |_| max_pair_defects(&pair, &points));
            let Some(defects) = out.record(&format!("depth{depth}.residual"), tol.residual, defects) else {
                return;
            };
            out.push(Check::at_most(format!("depth{depth}.residual"), defects.max_residual(), tol.residual));
            out.push(Check::at_most(format!("depth{depth}.curl"), defects.max_curl, tol.compatibility));
            if depth == cfg.depth {
                break;
            }
            let name = format!("depth{}.lift_consistency", depth + 1);
            let Some(next) = out.record(&name, tol.lift_consistency, crate::exact::recurrence_step(&pair)) else {
                return;
            };
            let general = backlund_lift(Arc::new(PairSum(pair.clone())), &pair);
            let gap = out.timed(&name, |_| max_gap(&next, &general, &points));
            let Some(gap) = out.record(&name, tol.lift_consistency, gap) else {
                return;
            };
            out.push(Check::at_most(name, gap, tol.lift_consistency));
            pair = next;
        }

        let t = domain.t0;
        if let Some((u, v)) = out.record("fields", 0.0, pair_on_grid(&pair, domain, t)) {
            out.emit("u", u);
            out.emit("v", v);
        }
    }
}

fn max_gap(a: &SolutionPair, b: &SolutionPair, points: &[SpaceTimePoint]) -> Result<f64, crate::exact::ExactError> {
    let mut gap = 0.0f64;
    for &p in points {
        let (ua, va) = a.value(p)?;
        let (ub, vb) = b.value(p)?;
        gap = gap.max((ua - ub).abs()).max((va - vb).abs());
    }
    Ok(gap)
}

/// Result of the Cole-Hopf/Fourier pipeline on one grid.
struct Pipeline {
    f: ScalarField2D,
    phi: ScalarField2D,
    u: ScalarField2D,
    v: ScalarField2D,
}

/// Runs the pipeline, recording the positivity checks and any module
/// error under `prefix`.
fn run_pipeline(
    cfg: &ScenarioConfig,
    data: &InitialData,
    domain: &DomainBox,
    prefix: &str,
    out: &mut RunOutput,
) -> Option<Pipeline> {
    let t_end = domain.t0 + cfg.ivp.tau;
    let f = out.timed(&format!("{prefix}initial_data"), |_| build_initial_data(data, domain));
    let f = out.record(&format!("{prefix}initial_data"), 0.0, f)?;
    out.push(Check::positive(format!("{prefix}positivity.f"), f.min()));
    let registry = PropagatorRegistry::default();
    let propagator = out.record("propagator", 0.0, registry.get(&cfg.ivp.propagator))?;
    let phi = out.timed(&format!("{prefix}propagate"), |_| propagator.propagate(&f, cfg.background, t_end));
    let phi = out.record(&format!("{prefix}propagate"), 0.0, phi)?;
    out.push(Check::positive(format!("{prefix}positivity.phi"), phi.min()));
    let (u, v) = out.record(&format!("{prefix}recover"), 0.0, recover_burgers(&phi, cfg.background))?;
    Some(Pipeline { f, phi, u, v })
}

/// The initial-value pipeline on data drawn from a named profile, compared
/// with the exact pair behind the profile when there is one.
pub struct IvpScenario;

impl IvpScenario {
    fn default_box() -> DomainBox {
        DomainBox::new(16.0, 16.0, 128, 128, 0.0).expect("valid default box")
    }
}

impl Scenario for IvpScenario {
    fn name(&self) -> &'static str {
        "ivp"
    }

    fn aliases(&self) -> &'static [&'static str] {
        &["ivp-pipeline"]
    }

    fn default_domain(&self) -> DomainBox {
        Self::default_box()
    }

    fn validate(&self, config: &ScenarioConfig) -> Result<(), ConfigError> {
        validate_ivp(config, Self::default_box().t0)
    }

    fn run(&self, cfg: &ScenarioConfig, domain: &DomainBox, out: &mut RunOutput) {
        let tol = &cfg.tolerances;
        let Some(profile) = out.record("profile", 0.0, build_profile(cfg, domain.t0)) else {
            return;
        };
        let (bx, by) = (cfg.initial.base_point[0], cfg.initial.base_point[1]);
        let data = InitialData::new(profile.clone(), (bx, by), cfg.background);

        let probes = sample_points(&interior_box(domain, domain.t0), cfg.sampling.count, cfg.sampling.rng_seed);
        let path = probes.iter().try_fold(0.0f64, |acc, p| {
            path_independence_check(&data, (p.x, p.y)).map(|d| acc.max(d))
        });
        if let Some(path) = out.record("path_independence", tol.path_independence, path) {
            out.push(Check::at_most("path_independence", path, tol.path_independence));
        }

        let Some(run) = run_pipeline(cfg, &data, domain, "", out) else {
            return;
        };

        if let Some(seed) = profile.exact_phi() {
            let ratios = run.f.region_iter(Region::Full).try_fold((f64::INFINITY, 0.0f64), |(lo, hi), (ix, iy, v)| {
                seed.value(SpaceTimePoint::new(domain.x(ix), domain.y(iy), domain.t0))
                    .map(|p| (lo.min(v / p), hi.max(v / p)))
            });
            if let Some((lo, hi)) = out.record("ratio_spread", tol.ratio_spread, ratios) {
                out.push(Check::at_most("ratio_spread", (hi - lo) / lo, tol.ratio_spread));
            }
        }

        if let Some(curl) = out.record("recovered_curl", tol.recovered_curl, recovered_curl(&run.phi)) {
            out.push(
                Check::at_most("recovered_curl", max_interior(&curl), tol.recovered_curl)
                    .with_detail("interior half"),
            );
        }

        if let Some(pair) = profile.exact_pair() {
            let t_end = domain.t0 + cfg.ivp.tau;
            if let Some((eu, ev)) = out.record("ivp_error", tol.ivp_error, pair_on_grid(&pair, domain, t_end)) {
                for (name, got, want) in [("ivp_error.u", &run.u, &eu), ("ivp_error.v", &run.v, &ev)] {
                    let err = got.max_abs_diff(want, Region::InteriorHalf);
                    if let Some(err) = out.record(name, tol.ivp_error, err) {
                        out.push(Check::at_most(name, err, tol.ivp_error).with_detail("interior half"));
                    }
                }
            }
        }

        out.emit("f", run.f);
        out.emit("phi", run.phi);
        out.emit("u", run.u);
        out.emit("v", run.v);
    }
}

/// The pipeline against the explicit finite-difference integrator, plus the
/// observed convergence order of the latter.
pub struct CrossValidateScenario;

impl Scenario for CrossValidateScenario {
    fn name(&self) -> &'static str {
        "xval"
    }

    fn aliases(&self) -> &'static [&'static str] {
        &["cross-validate"]
    }

    fn default_domain(&self) -> DomainBox {
        IvpScenario::default_box()
    }

    fn validate(&self, config: &ScenarioConfig) -> Result<(), ConfigError> {
        validate_ivp(config, IvpScenario::default_box().t0)?;
        let n = config.ivp.fd_resolutions.len();
        if n != 0 && n < 2 {
            return Err(ConfigError::Invalid(
                "ivp.fd_resolutions needs at least two grids to measure an order".into(),
            ));
        }
        Ok(())
    }

    fn run(&self, cfg: &ScenarioConfig, domain: &DomainBox, out: &mut RunOutput) {
        let tol = &cfg.tolerances;
        let Some(profile) = out.record("profile", 0.0, build_profile(cfg, domain.t0)) else {
            return;
        };
        let (bx, by) = (cfg.initial.base_point[0], cfg.initial.base_point[1]);
        let data = InitialData::new(profile.clone(), (bx, by), cfg.background);
        let t_end = domain.t0 + cfg.ivp.tau;

        let fd_run = |d: &DomainBox| {
            let u0 = ScalarField2D::from_fn(*d, d.t0, |x, y| profile.s(x, y));
            let v0 = ScalarField2D::from_fn(*d, d.t0, |x, y| profile.k(x, y));
            FDState::new(u0, v0).and_then(|s| fd_integrate(&s, t_end))
        };

        if let Some(run) = run_pipeline(cfg, &data, domain, "", out) {
            let fd = out.timed("fd", |_| fd_run(domain));
            if let Some(fd) = out.record("fd", 0.0, fd) {
                for (name, a, b) in [("xval.u", fd.u(), &run.u), ("xval.v", fd.v(), &run.v)] {
                    if let Some(err) = out.record(name, tol.cross_validation, a.max_abs_diff(b, Region::InteriorHalf)) {
                        out.push(Check::at_most(name, err, tol.cross_validation).with_detail("interior half"));
                    }
                }
                out.push(
                    Check::at_most("fd_curl", max_interior(&discrete_curl(fd.u(), fd.v())), tol.fd_curl)
                        .with_detail("interior half"),
                );
                out.emit("u_fd", fd.u().clone());
                out.emit("v_fd", fd.v().clone());
            }
            out.emit("u", run.u);
            out.emit("v", run.v);
        }

        // convergence against the exact pair if known, else the pipeline
        let exact = profile.exact_pair();
        let mut errors = Vec::new();
        for &n in &cfg.ivp.fd_resolutions {
            let prefix = format!("n{n}.");
            let Some(d) = out.record(&format!("{prefix}grid"), 0.0, domain.with_resolution(n, n)) else {
                return;
            };
            let reference = match &exact {
                Some(pair) => out.record(&format!("{prefix}reference"), 0.0, pair_on_grid(pair, &d, t_end)),
                None => run_pipeline(cfg, &data, &d, &prefix, out).map(|p| (p.u, p.v)),
            };
            let Some((ref_u, ref_v)) = reference else {
                return;
            };
            let fd = out.timed(&format!("{prefix}fd"), |_| fd_run(&d));
            let Some(fd) = out.record(&format!("{prefix}fd"), 0.0, fd) else {
                return;
            };
            let eu = fd.u().max_abs_diff(&ref_u, Region::InteriorHalf);
            let ev = fd.v().max_abs_diff(&ref_v, Region::InteriorHalf);
            match eu.and_then(|a| ev.map(|b| a.max(b))) {
                Ok(e) => errors.push((n as f64, e)),
                Err(e) => {
                    out.push(Check::error(format!("{prefix}error"), 0.0, e));
                    return;
                }
            }
        }
        if errors.len() >= 2 {
            let order = errors
                .windows(2)
                .map(|w| (w[0].1 / w[1].1).ln() / (w[1].0 / w[0].0).ln())
                .fold(f64::INFINITY, f64::min);
            let reference = if exact.is_some() { "exact" } else { "pipeline" };
            let detail = errors
                .iter()
                .map(|(n, e)| format!("{n}:{e:.3e}"))
                .collect::<Vec<_>>()
                .join(" ");
            let detail = format!("errors vs {reference}: {detail}");
            out.push(Check::at_least("fd_order", order, tol.convergence_order).with_detail(detail));
        }
    }
}

/// The spectral solver against the kernel quadrature and the closed form
/// for `exp(cos(2πx/Lx) + cos(2πy/Ly))`.
pub struct OracleScenario;

impl Scenario for OracleScenario {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn aliases(&self) -> &'static [&'static str] {
        &["oracle-compare"]
    }

    fn default_domain(&self) -> DomainBox {
        let l = 2.0 * std::f64::consts::PI;
        DomainBox::new(l, l, 128, 128, 0.0).expect("valid default box")
    }

    fn run(&self, cfg: &ScenarioConfig, domain: &DomainBox, out: &mut RunOutput) {
        let tol = &cfg.tolerances;
        let bg = cfg.background;
        let closed = ExpCosSolution::new(domain.lx, domain.ly);
        let f = ScalarField2D::from_fn(*domain, domain.t0, |x, y| closed.datum(x, y));
        let kernel = KernelPropagator;
        for &tau in &cfg.ivp.oracle_taus {
            let t = domain.t0 + tau;
            let name = format!("tau={tau}");
            let Some(spectral) = out.record(&format!("spectral.{name}"), 0.0, solve_heat_spectral(&f, bg, t)) else {
                continue;
            };
            let quad = out.timed(&format!("kernel.{name}"), |_| {
                crate::heat::HeatPropagator::propagate(&kernel, &f, bg, t)
            });
            if let Some(quad) = out.record(&format!("kernel.{name}"), tol.oracle, quad) {
                if let Some(d) = out.record(&format!("oracle.{name}"), tol.oracle, spectral.max_abs_diff(&quad, Region::Full)) {
                    out.push(Check::at_most(format!("oracle.{name}"), d, tol.oracle));
                }
            }
            let exact = ScalarField2D::from_fn(*domain, t, |x, y| closed.value(x, y, tau, bg));
            if let Some(d) = out.record(&format!("translation.{name}"), tol.translation, spectral.max_abs_diff(&exact, Region::Full)) {
                out.push(Check::at_most(format!("translation.{name}"), d, tol.translation));
            }
            let halves = solve_heat_spectral(&f, bg, domain.t0 + tau / 2.0).and_then(|h| solve_heat_spectral(&h, bg, t));
            if let Some(two) = out.record(&format!("semigroup.{name}"), tol.semigroup, halves) {
                if let Some(d) = out.record(&format!("semigroup.{name}"), tol.semigroup, two.max_abs_diff(&spectral, Region::Full)) {
                    out.push(
                        Check::at_most(format!("semigroup.{name}"), d / spectral.max_abs(), tol.semigroup)
                            .with_detail("relative to max |phi|"),
                    );
                }
            }
            out.emit(format!("phi_tau{tau}"), spectral);
        }
        let one = ScalarField2D::constant(*domain, domain.t0, 1.0);
        let horizon = domain.t0 + cfg.ivp.oracle_taus.iter().copied().fold(0.0, f64::max);
        if let Some(p) = out.record("fixed_point", tol.semigroup, solve_heat_spectral(&one, bg, horizon)) {
            let d = p.values().iter().map(|v| (v - 1.0).abs()).fold(0.0, f64::max);
            out.push(Check::at_most("fixed_point", d, tol.semigroup));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ConstantPair;

    #[test]
    fn constant_seed_depth_zero_is_exact() {
        let mut cfg = ScenarioConfig::for_scenario("exact-recurrence");
        cfg.seed.terms.clear();
        cfg.background = ConstantPair::new(0.3, -0.8);
        let bundle = run_scenario(&cfg);
        assert!(bundle.report.passed(), "{:?}", bundle.report);
        for c in &bundle.report.checks {
            if c.name.ends_with("residual") || c.name.ends_with("curl") {
                assert_eq!(c.measured, 0.0, "{}", c.name);
            }
        }
    }

    #[test]
    fn unknown_scenario_is_config_error() {
        let bundle = run_scenario(&ScenarioConfig::for_scenario("nope"));
        assert_eq!(bundle.exit_code(), 2);
    }

    #[test]
    fn degenerate_sum_is_a_failed_check() {
        let mut cfg = ScenarioConfig::for_scenario("exact");
        cfg.seed.terms.clear();
        cfg.background = ConstantPair::new(1.0, -1.0);
        cfg.depth = 1;
        let bundle = run_scenario(&cfg);
        assert_eq!(bundle.exit_code(), 1);
        let failed: Vec<_> = bundle.report.failed_checks().collect();
        assert!(failed[0].detail.contains("too small"), "{failed:?}");
    }
}
