use std::path::PathBuf;
use std::process::ExitCode;

use burgers_core::io::{run_scenario, write_bundle, FieldFormat, RunBundle, RunReport, ScenarioConfig, ScenarioRegistry};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "burgers", version, about = "Exact solutions and IVP checks for the 2D coupled Burgers system")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact pairs from a plane-wave seed and the recurrence
    Exact(RunArgs),
    /// Cole-Hopf/Fourier pipeline on named initial data
    Ivp(RunArgs),
    /// Pipeline versus the finite-difference reference
    Xval(RunArgs),
    /// Spectral solver versus kernel quadrature and closed form
    Oracle(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// TOML configuration; defaults are used when omitted
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory
    #[arg(long, env = "BURGERS_OUT_DIR")]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FieldFormat>,
    /// RNG seed for sample points
    #[arg(long)]
    seed: Option<u64>,
    /// Recurrence depth
    #[arg(long)]
    depth: Option<usize>,
}

fn load(name: &str, args: &RunArgs) -> Result<ScenarioConfig, String> {
    let mut cfg = match &args.config {
        Some(path) => ScenarioConfig::load(path).map_err(|e| e.to_string())?,
        None => ScenarioConfig::for_scenario(name),
    };
    let registry = ScenarioRegistry::default();
    let chosen = registry.get(&cfg.scenario).map_err(|e| e.to_string())?;
    if chosen.name() != name {
        return Err(format!(
            "config describes scenario `{}` but `{name}` was requested",
            cfg.scenario
        ));
    }
    if let Some(dir) = &args.out {
        cfg.output.dir = dir.clone();
    }
    if let Some(format) = args.format {
        cfg.output.format = format;
    }
    if let Some(seed) = args.seed {
        cfg.sampling.rng_seed = seed;
    }
    if let Some(depth) = args.depth {
        cfg.depth = depth;
    }
    Ok(cfg)
}

fn print_report(report: &RunReport) {
    for c in &report.checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        let cmp = match c.bound {
            burgers_core::io::Bound::Max => "<=",
            burgers_core::io::Bound::Min => ">=",
        };
        print!("{mark} {:<32} {:>12.4e} {cmp} {:.1e}", c.name, c.measured, c.threshold);
        if c.detail.is_empty() {
            println!();
        } else {
            println!("  ({})", c.detail);
        }
    }
    println!("{}: {:?}", report.scenario, report.status);
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, args) = match &cli.command {
        Command::Exact(a) => ("exact", a),
        Command::Ivp(a) => ("ivp", a),
        Command::Xval(a) => ("xval", a),
        Command::Oracle(a) => ("oracle", a),
    };
    let (bundle, cfg) = match load(name, args) {
        Ok(cfg) => (run_scenario(&cfg), Some(cfg)),
        Err(e) => (
            RunBundle {
                report: RunReport::config_invalid(name, args.seed.unwrap_or(0), e),
                fields: Vec::new(),
                timings: Default::default(),
            },
            None,
        ),
    };
    print_report(&bundle.report);

    let dir = args
        .out
        .clone()
        .or_else(|| cfg.as_ref().map(|c| c.output.dir.clone()))
        .unwrap_or_else(|| PathBuf::from("out"));
    let (format, fields) = cfg
        .as_ref()
        .map_or((FieldFormat::Csv, false), |c| (c.output.format, c.output.write_fields));
    if let Err(e) = write_bundle(&bundle, &dir.join(name), format, fields) {
        eprintln!("error: {e}");
        if bundle.exit_code() == 0 {
            return ExitCode::from(1);
        }
    }
    ExitCode::from(bundle.exit_code() as u8)
}
