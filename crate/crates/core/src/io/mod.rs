//! Configuration, field files, run reports and the runnable scenarios.

mod config;
mod fields;
mod report;
mod scenario;

pub use config::{
    ConfigError, InitialSpec, IvpSpec, OutputSpec, SamplingSpec, ScenarioConfig, SeedSpec, Tolerances,
};
pub use fields::{
    from_binary, read_binary, read_csv, read_field, to_binary, to_csv_string, write_binary, write_csv,
    write_field, FieldFormat, FieldIoError, BINARY_VERSION, HEADER_LEN, MAGIC,
};
pub use report::{Bound, Check, Fingerprint, Phase, RunReport, RunStatus, Timings, REPORT_SCHEMA_VERSION};
pub use scenario::{
    emit_fields, pair_on_grid, run_config_text, run_scenario, run_with_registry, write_bundle,
    CrossValidateScenario, ExactScenario, IvpScenario, OracleScenario, RunBundle, RunOutput, Scenario,
    ScenarioRegistry,
};
