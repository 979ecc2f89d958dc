//! Benchmark front end: simulate experiments to CSV, report the
//! neighbourhood lower bound, render regret plots, validate configurations.
//!
//! Exit codes: 0 on success, 2 on any input or configuration error, 3 when
//! `--strict-monitors` is set and an inequality monitor fired.

mod output;
mod plot;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use unibandit::env::BanditConfig;
use unibandit::runner::{run_experiment, Environment, ExperimentSpec, Overrides};
use unibandit::{Real, RealExperimentSpec};

#[derive(Parser)]
#[command(
    name = "unibandit",
    version,
    about = "Unimodal bandit benchmark harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a Monte-Carlo experiment and write regret + pull-count CSVs.
    Simulate(SimulateArgs),
    /// Print the neighbourhood lower-bound constant of a fixed configuration.
    Lowerbound {
        #[arg(long)]
        config: PathBuf,
    },
    /// Render an aggregate CSV as an SVG regret plot.
    Plot(PlotArgs),
    /// Check a configuration file and report the first problem.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Args)]
struct SimulateArgs {
    /// Experiment description (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Aggregate CSV path; pull counts go to `<stem>_pulls.csv`.
    #[arg(long)]
    out: PathBuf,
    /// Master seed override.
    #[arg(long)]
    seed: Option<u64>,
    /// Replicate-count override.
    #[arg(long)]
    replicates: Option<u32>,
    /// Horizon override.
    #[arg(long)]
    horizon: Option<u64>,
    /// Force monitors on and exit 3 if any inequality fires.
    #[arg(long)]
    strict_monitors: bool,
    /// Comma-separated policy list override.
    #[arg(long, value_delimiter = ',')]
    policies: Option<Vec<String>>,
}

#[derive(Args)]
struct PlotArgs {
    /// Aggregate CSV produced by `simulate`.
    #[arg(long)]
    csv: PathBuf,
    /// SVG output path.
    #[arg(long)]
    out: PathBuf,
    /// Fixed configuration; when given, a dashed line marks the
    /// asymptotic level c * log T.
    #[arg(long)]
    config: Option<PathBuf>,
}

enum CliError {
    /// Bad input: unreadable/invalid config, malformed CSV, bad env var.
    Input(String),
    /// Output could not be written.
    Io(PathBuf, std::io::Error),
    /// Strict mode and at least one monitor violation.
    MonitorViolations(u64),
}

impl CliError {
    fn report(&self) -> ExitCode {
        match self {
            CliError::Input(message) => {
                eprintln!("error: {message}");
                ExitCode::from(2)
            }
            CliError::Io(path, e) => {
                eprintln!("error: {}: {e}", path.display());
                ExitCode::from(1)
            }
            CliError::MonitorViolations(count) => {
                eprintln!("error: {count} monitor violations under --strict-monitors");
                ExitCode::from(3)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(args) => simulate(args),
        Command::Lowerbound { config } => lowerbound(&config),
        Command::Plot(args) => render_plot(args),
        Command::Validate { config } => validate(&config),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => e.report(),
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_spec(path: &Path, overrides: &Overrides) -> Result<RealExperimentSpec, CliError> {
    let text = read_input(path)?;
    ExperimentSpec::from_json_with_overrides(&text, overrides)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Replicate parallelism is capped by the BANDIT_THREADS variable.
fn thread_pool() -> Result<Option<rayon::ThreadPool>, CliError> {
    match std::env::var("BANDIT_THREADS") {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::Input(format!("BANDIT_THREADS: {e}"))),
        Ok(raw) => {
            let threads: usize = raw.parse().map_err(|_| {
                CliError::Input(format!("BANDIT_THREADS: not a thread count: {raw:?}"))
            })?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build()
                .map_err(|e| CliError::Input(format!("BANDIT_THREADS: {e}")))?;
            Ok(Some(pool))
        }
    }
}

fn pulls_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "results".into());
    let mut name = format!("{stem}_pulls");
    if let Some(ext) = out.extension() {
        name.push('.');
        name.push_str(&ext.to_string_lossy());
    }
    out.with_file_name(name)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

fn simulate(args: SimulateArgs) -> Result<(), CliError> {
    let overrides = Overrides {
        seed: args.seed,
        replicates: args.replicates,
        horizon: args.horizon,
        policies: args.policies.clone(),
        monitors: args.strict_monitors.then_some(true),
    };
    let spec = load_spec(&args.config, &overrides)?;
    let pool = thread_pool()?;
    let run = || run_experiment(&spec);
    let result = match &pool {
        Some(pool) => pool.install(run),
        None => run(),
    }
    .map_err(|e| CliError::Input(e.to_string()))?;

    write_file(&args.out, &output::aggregate_csv(&result))?;
    let pulls = pulls_path(&args.out);
    write_file(&pulls, &output::pulls_csv(&result))?;
    println!("wrote {}", args.out.display());
    println!("wrote {}", pulls.display());

    if spec.monitors_on {
        let mut total = 0;
        for policy in &result.policies {
            let m = &policy.monitor;
            total += m.total_violations();
            if m.checked == 0 && m.skipped == 0 {
                continue; // nothing is monitored for this policy
            }
            println!(
                "monitors[{}]: {} violations over {} checks ({} skipped, {} gate-zero)",
                policy.name,
                m.total_violations(),
                m.checked,
                m.skipped,
                m.gamma_zero
            );
            for v in &m.samples {
                eprintln!(
                    "violation[{}] t={} {}: {}",
                    policy.name, v.t, v.check, v.detail
                );
            }
        }
        if args.strict_monitors && total > 0 {
            return Err(CliError::MonitorViolations(total));
        }
    }
    Ok(())
}

fn lowerbound(path: &Path) -> Result<(), CliError> {
    let spec = load_spec(path, &Overrides::default())?;
    let config = match &spec.environment {
        Environment::Fixed(config) => config,
        Environment::RandomPath { .. } => {
            return Err(CliError::Input(
                "lowerbound needs a fixed environment, not a random generator".into(),
            ))
        }
    };
    for (arm, term) in config.lower_bound_terms() {
        let gap = config.gap(arm);
        let kl = config.family().kl(config.mean(arm), config.best_mean());
        println!(
            "arm={arm} gap={} kl={} term={}",
            output::fmt_real(gap),
            output::fmt_real(kl),
            output::fmt_real(term)
        );
    }
    println!("c={}", output::fmt_real(config.lower_bound_constant()));
    Ok(())
}

fn render_plot(args: PlotArgs) -> Result<(), CliError> {
    let text = read_input(&args.csv)?;
    let series = output::parse_aggregate_csv(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", args.csv.display())))?;
    let reference = match &args.config {
        None => None,
        Some(path) => {
            let spec = load_spec(path, &Overrides::default())?;
            match &spec.environment {
                Environment::Fixed(config) => {
                    let t_max = series
                        .iter()
                        .flat_map(|s| s.points.iter().map(|p| p.0))
                        .max()
                        .unwrap_or(1);
                    let level = reference_level(config, t_max);
                    Some((level, "c * log T".to_string()))
                }
                Environment::RandomPath { .. } => None,
            }
        }
    };
    write_file(&args.out, &plot::render(&series, reference))?;
    println!("wrote {}", args.out.display());
    Ok(())
}

fn reference_level(config: &BanditConfig<Real>, t_max: u64) -> Real {
    config.lower_bound_constant() * (t_max as Real).ln()
}

fn validate(path: &Path) -> Result<(), CliError> {
    load_spec(path, &Overrides::default())?;
    println!("ok");
    Ok(())
}
