//! Command-line front end for fast-forward control synthesis.
//!
//! Every run is described by a TOML configuration; the subcommand picks
//! which part of the pipeline to execute. Exit codes: 0 success, 1 I/O
//! failure, 2 invalid configuration, 3 numerical failure, 4 fidelity
//! below `--require-fidelity`.

pub mod config;
pub mod export;
pub mod pipeline;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use config::{load_config, ConfigError};
use pipeline::{Output, PipelineError, Summary};

pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_PIPELINE: i32 = 3;
pub const EXIT_FIDELITY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "ffwd", version, about = "Fast-forward scaling and inter-trajectory travel for two-level sweeps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Run configuration (TOML).
    #[arg(long, short, global = true)]
    pub config: Option<PathBuf>,

    /// Output directory; overrides the configuration.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,

    /// Fail with exit code 4 if the checked fidelity is below this value.
    #[arg(long, global = true)]
    pub require_fidelity: Option<f64>,

    /// Size of the worker pool (defaults to the number of cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Fail if any stage reports using a random number generator.
    #[arg(long, global = true)]
    pub seed_free: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the reference sweep.
    Reference,
    /// Tabulate the phase equation and its speed-controlled trajectories.
    Map,
    /// Optimize a virtual trajectory and synthesize its control.
    Synthesize,
    /// Shortcut to adiabaticity; the configuration must use scenario "sta".
    Sta,
    /// Re-integrate a control table against the scenario's target.
    Verify {
        /// Control CSV with t, delta_omega_ff and coupling_ff columns.
        #[arg(long)]
        control: PathBuf,
    },
    /// Classify how gaps open across the t_f sweep.
    Scan,
    /// Map the control onto flux-tunable transmons.
    Device,
    /// Run whatever the configured scenario calls for.
    #[command(alias = "run")]
    Full,
    /// Check a configuration and print the resolved settings.
    Check,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error("a configuration file is required (--config)")]
    MissingConfig,
    #[error("{0}")]
    Usage(String),
    #[error("fidelity {found:.10} is below the required {required}")]
    Fidelity { found: f64, required: f64 },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(ConfigError::Io { .. }) => EXIT_IO,
            CliError::Config(_) | CliError::MissingConfig | CliError::Usage(_) => EXIT_CONFIG,
            CliError::Pipeline(PipelineError::Export(_) | PipelineError::Io { .. }) => EXIT_IO,
            CliError::Pipeline(_) => EXIT_PIPELINE,
            CliError::Fidelity { .. } => EXIT_FIDELITY,
        }
    }
}

fn report(summaries: &[Summary]) {
    for s in summaries {
        let fids: Vec<String> = s.fidelities.iter().map(|(k, v)| format!("{k}={v:.10}")).collect();
        println!("{} {} t_f={} {}", s.command, s.scenario, s.t_f, fids.join(" "));
        for w in &s.warnings {
            eprintln!("warning: {w}");
        }
    }
}

/// Executes a parsed command line and returns its summaries.
pub fn execute(cli: &Cli) -> Result<Vec<Summary>, CliError> {
    if let Some(r) = cli.require_fidelity {
        if !(0.0..=1.0).contains(&r) {
            return Err(CliError::Usage(format!("--require-fidelity must lie in [0, 1], got {r}")));
        }
    }
    if let Some(n) = cli.threads {
        // A pool may already exist when called repeatedly in one process.
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            if rayon::current_num_threads() != n {
                return Err(CliError::Usage(format!("cannot build worker pool: {e}")));
            }
        }
    }
    let path = cli.config.as_ref().ok_or(CliError::MissingConfig)?;
    let cfg = load_config(path)?;
    let out = Output::new(&cfg, cli.out.as_deref());
    let summaries = match &cli.command {
        Command::Check => {
            println!("{cfg:#?}");
            return Ok(Vec::new());
        }
        Command::Reference => pipeline::run_reference(&cfg, &out)?,
        Command::Map => pipeline::run_map(&cfg, &out)?,
        Command::Synthesize => pipeline::run_synthesize(&cfg, &out)?,
        Command::Verify { control } => pipeline::run_verify(&cfg, control, &out)?,
        Command::Scan => pipeline::run_scan(&cfg, &out)?,
        Command::Device => pipeline::run_device(&cfg, &out)?,
        Command::Sta => {
            if cfg.scenario != config::Scenario::Sta {
                return Err(CliError::Usage(format!(
                    "the sta command needs scenario = \"sta\", found \"{}\"",
                    cfg.scenario.name()
                )));
            }
            pipeline::run_synthesize(&cfg, &out)?
        }
        Command::Full => pipeline::run_full(&cfg, &out)?,
    };
    report(&summaries);
    if cli.seed_free && summaries.iter().any(|s| s.rng_used) {
        return Err(CliError::Usage("a stage used a random number generator".into()));
    }
    if let Some(required) = cli.require_fidelity {
        if let Some(found) = summaries
            .iter()
            .filter_map(|s| s.checked_fidelity)
            .min_by(f64::total_cmp)
        {
            if found < required {
                return Err(CliError::Fidelity { found, required });
            }
        }
    }
    Ok(summaries)
}

/// Parses `args`, runs, and maps the outcome to a process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(_) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
