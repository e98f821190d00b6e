use std::path::{Path, PathBuf};
use std::process::Command;

use burgers_core::exact::{ConstantPair, PlaneWaveTerm};
use burgers_core::heat::{DomainBox, ScalarField2D};
use burgers_core::io::{
    from_binary, read_field, run_config_text, run_scenario, to_binary, write_bundle, write_field, FieldFormat,
    RunStatus, ScenarioConfig,
};
use proptest::prelude::*;

fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(rel)
}

fn bits(f: &ScalarField2D) -> Vec<u64> {
    f.values().iter().map(|v| v.to_bits()).collect()
}

fn field(log_nx: u32, log_ny: u32, lx: f64, t: f64, values: &[f64]) -> ScalarField2D {
    let d = DomainBox::new(lx, lx * 0.75, 1 << log_nx, 1 << log_ny, t).unwrap();
    let mut it = values.iter().cycle();
    ScalarField2D::from_fn(d, t, |_, _| *it.next().unwrap())
}

#[test]
fn csv_and_binary_files_round_trip_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let f = field(4, 3, 2.5, 0.125, &[1.0 / 3.0, -2.0e-300, 7.0e300, 0.1 + 0.2, -0.0]);
    for format in [FieldFormat::Csv, FieldFormat::Bin] {
        let path = dir.path().join(format!("f.{}", format.extension()));
        write_field(&f, &path, format).unwrap();
        let back = read_field(&path, format).unwrap();
        assert_eq!(bits(&back), bits(&f), "{format:?}");
        assert_eq!(back.time(), f.time());
        assert_eq!((back.domain().nx, back.domain().ny), (16, 8));
        assert_eq!((back.domain().lx, back.domain().ly), (f.domain().lx, f.domain().ly));
    }
}

#[test]
fn missing_file_is_an_io_error() {
    let err = read_field(Path::new("/nonexistent/field.bin"), FieldFormat::Bin).unwrap_err();
    assert!(err.to_string().contains("/nonexistent/field.bin"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn binary_encoding_is_bit_exact(
        log_nx in 3u32..6,
        log_ny in 3u32..6,
        lx in 0.1f64..100.0,
        t in -10.0f64..10.0,
        values in prop::collection::vec(any::<f64>().prop_filter("finite", |v| v.is_finite()), 1..64),
    ) {
        let f = field(log_nx, log_ny, lx, t, &values);
        let bytes = to_binary(&f);
        let back = from_binary(&bytes).unwrap();
        prop_assert_eq!(bits(&back), bits(&f));
        prop_assert_eq!(to_binary(&back), bytes);
    }

    #[test]
    fn config_round_trips(
        u0 in -5.0f64..5.0,
        v0 in -5.0f64..5.0,
        depth in 0usize..5,
        rng_seed in any::<u64>(),
        a in 0.0f64..3.0,
        k in -2.0f64..2.0,
        tol in 1e-15f64..1.0,
        log_n in 3u32..9,
        bin in any::<bool>(),
    ) {
        let mut cfg = ScenarioConfig::for_scenario("exact");
        cfg.background = ConstantPair::new(u0, v0);
        cfg.depth = depth;
        cfg.sampling.rng_seed = rng_seed;
        cfg.seed.terms = vec![PlaneWaveTerm::new(a, k, -k / 3.0)];
        cfg.tolerances.residual = tol;
        cfg.domain = Some(DomainBox::new(4.0, 4.0, 1 << log_n, 8, u0).unwrap());
        cfg.initial.params.insert("k".into(), k);
        cfg.output.format = if bin { FieldFormat::Bin } else { FieldFormat::Csv };
        let text = cfg.to_toml_string();
        prop_assert_eq!(ScenarioConfig::from_toml_str(&text).unwrap(), cfg);
    }
}

#[test]
fn malformed_configs_give_structured_failures() {
    let dir = fixture("fixtures/malformed");
    let mut seen = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let bundle = run_config_text(&text);
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        assert_eq!(bundle.report.status, RunStatus::ConfigInvalid, "{name}");
        assert_eq!(bundle.exit_code(), 2, "{name}");
        let check = &bundle.report.checks[0];
        assert_eq!(check.name, "config", "{name}");
        assert!(!check.passed && !check.detail.is_empty(), "{name}");
        assert!(bundle.fields.is_empty());
        seen += 1;
    }
    assert!(seen >= 10);
}

fn golden_config() -> ScenarioConfig {
    ScenarioConfig::load(&fixture("fixtures/golden_exact.toml")).unwrap()
}

#[test]
fn depth_one_field_matches_golden_file() {
    let bundle = run_scenario(&golden_config());
    assert!(bundle.report.passed(), "{:?}", bundle.report);
    let golden = std::fs::read(fixture("golden/exact_depth1_u.bin")).unwrap();
    let u = bundle.field("u").unwrap();
    assert_eq!((u.domain().nx, u.domain().ny), (32, 32));
    assert!(to_binary(u) == golden, "u-field differs from the golden file");
}

#[test]
fn identical_runs_write_identical_files() {
    let cfg = golden_config();
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for d in &dirs {
        write_bundle(&run_scenario(&cfg), d.path(), FieldFormat::Bin, true).unwrap();
    }
    for name in ["report.toml", "u.bin", "v.bin"] {
        let a = std::fs::read(dirs[0].path().join(name)).unwrap();
        let b = std::fs::read(dirs[1].path().join(name)).unwrap();
        assert!(a == b, "{name} differs between runs");
    }
}

#[test]
fn rng_seed_is_recorded_and_changes_sampling() {
    let mut cfg = golden_config();
    let a = run_scenario(&cfg);
    cfg.sampling.rng_seed = 8;
    let b = run_scenario(&cfg);
    assert_eq!((a.report.rng_seed, b.report.rng_seed), (7, 8));
    assert_ne!(a.report.check("depth1.residual"), b.report.check("depth1.residual"));
}

#[test]
fn module_errors_become_failed_checks() {
    // u + v ≡ 0, so the recurrence has nothing to divide by
    let mut cfg = ScenarioConfig::for_scenario("exact");
    cfg.background = ConstantPair::new(0.5, -0.5);
    cfg.seed.terms.clear();
    cfg.depth = 2;
    let bundle = run_scenario(&cfg);
    assert_eq!(bundle.report.status, RunStatus::Failed);
    let failed: Vec<_> = bundle.report.failed_checks().collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0].name, "depth1.lift_consistency");
    assert!(failed[0].measured.is_nan());
    assert!(failed[0].detail.contains("too small"), "{}", failed[0].detail);
}

#[test]
fn unresolved_data_fail_the_accuracy_checks() {
    // a front pushed far off-centre is not captured by the periodic box
    let mut cfg = ScenarioConfig::for_scenario("ivp");
    cfg.domain = Some(DomainBox::new(16.0, 16.0, 64, 64, 0.0).unwrap());
    cfg.initial.params.insert("a".into(), 1e300);
    let bundle = run_scenario(&cfg);
    assert_eq!(bundle.exit_code(), 1);
    assert!(!bundle.report.check("ivp_error.u").unwrap().passed);
    assert!(bundle.report.check("positivity.phi").unwrap().passed);
}

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_burgers"))
}

#[test]
fn cli_exit_codes_and_output_dir_override() {
    let out = tempfile::tempdir().unwrap();
    let status = cli()
        .args(["exact", "--depth", "2", "--seed", "11", "--format", "bin"])
        .env("BURGERS_OUT_DIR", out.path())
        .output()
        .map(|o| o.status)
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let report = std::fs::read_to_string(out.path().join("exact/report.toml")).unwrap();
    assert!(report.contains("rng_seed = 11"));
    assert!(report.contains("depth2.residual"));
    assert!(out.path().join("exact/u.bin").exists());

    let flag_dir = tempfile::tempdir().unwrap();
    let status = cli()
        .args(["exact", "--out"])
        .arg(flag_dir.path())
        .env("BURGERS_OUT_DIR", out.path().join("ignored"))
        .output()
        .map(|o| o.status)
        .unwrap();
    assert_eq!(status.code(), Some(0));
    assert!(flag_dir.path().join("exact/u.csv").exists());
    assert!(!out.path().join("ignored").exists());

    let bad = fixture("fixtures/malformed/unknown_key.toml");
    let status = cli().args(["exact", "--config"]).arg(&bad).arg("--out").arg(out.path()).output().unwrap().status;
    assert_eq!(status.code(), Some(2));

    let mismatched = cli()
        .args(["ivp", "--config"])
        .arg(fixture("fixtures/golden_exact.toml"))
        .arg("--out")
        .arg(out.path())
        .output()
        .map(|o| o.status)
        .unwrap();
    assert_eq!(mismatched.code(), Some(2));
}

#[test]
fn cli_reports_check_failures_with_exit_code_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("degenerate.toml");
    std::fs::write(
        &cfg,
        "scenario = \"exact\"\ndepth = 1\n\n[background]\nu0 = 1.0\nv0 = -1.0\n\n[seed]\nterms = []\n",
    )
    .unwrap();
    let output = cli().args(["exact", "--config"]).arg(&cfg).arg("--out").arg(dir.path()).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stdout).contains("FAIL"));
}
