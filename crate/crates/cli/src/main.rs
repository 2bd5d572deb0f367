mod config;
mod error;
mod observations;
mod plots;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use vlp_mono::{localize, run_scenario, Method};

use crate::config::{
    load_intrinsics, load_transmitter, read_text, ScenarioFile, REFERENCE_SCENARIO,
};
use crate::error::{CliError, CliResult};
use crate::report::ResultTables;

/// Caps the worker threads used by `simulate`; 0 or unset means one per core.
const THREADS_ENV: &str = "VLP_MONO_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "vlp-mono",
    version,
    about = "Monocular visible-light positioning from one shaped luminaire"
)]
struct Cli {
    /// Suppress progress and summary output on stderr.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Tri,
    Lsq,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Tri => Method::Trilaterate,
            MethodArg::Lsq => Method::LeastSquares,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a Monte Carlo scenario and write result tables and plots.
    Simulate {
        /// Scenario file (TOML). Defaults to the bundled reference scenario.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        /// Override the scenario seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the solver.
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
    },
    /// Locate the camera from one snapshot's feature measurements.
    Localize {
        /// Camera intrinsics (TOML: fx_um, fy_um, cx_um, cy_um, pixel_pitch_um).
        #[arg(long)]
        intrinsics: PathBuf,
        /// Luminaire description (JSON).
        #[arg(long)]
        transmitter: PathBuf,
        /// Feature measurements (CSV).
        #[arg(long)]
        observations: PathBuf,
        #[arg(long, value_enum, default_value = "tri")]
        method: MethodArg,
    },
    /// Regenerate plot data and SVGs from a results directory.
    ExportPlots {
        /// Directory written by `simulate`.
        #[arg(long)]
        out: PathBuf,
    },
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().map_err(|_| {
        CliError::Config(format!(
            "{THREADS_ENV} must be a non-negative integer, got '{raw}'"
        ))
    })?;
    if n > 0 {
        // only fails if a global pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    Ok(())
}

fn simulate(
    config: Option<&Path>,
    out: &Path,
    seed: Option<u64>,
    method: Option<MethodArg>,
    quiet: bool,
) -> CliResult<()> {
    let text = match config {
        Some(path) => read_text(path)?,
        None => REFERENCE_SCENARIO.to_string(),
    };
    let mut cfg = ScenarioFile::parse(&text)?.into_scenario()?;
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    if let Some(m) = method {
        cfg.method = m.into();
    }
    configure_threads()?;

    let results = run_scenario(&cfg).map_err(|e| CliError::Config(e.to_string()))?;
    report::write_tables(out, &cfg.scenario_id, &results)?;
    let plot_dir = plots::export(&ResultTables::load(out)?)?;

    if !quiet {
        let failures: usize = results.iter().map(|r| r.failures).sum();
        let worst = results
            .iter()
            .filter_map(|r| r.stats.map(|s| s.offset_max))
            .fold(0.0_f64, f64::max);
        let worst_rmse = results
            .iter()
            .filter_map(|r| r.stats.map(|s| s.rmse_3d))
            .fold(0.0_f64, f64::max);
        eprintln!(
            "{}: {} grid points x {} trials ({}), {failures} failed trials, max offset {worst:.4} m, max RMSE {worst_rmse:.4} m",
            cfg.scenario_id,
            results.len(),
            cfg.trials_per_point,
            cfg.method,
        );
        eprintln!(
            "tables in {}, plots in {}",
            out.display(),
            plot_dir.display()
        );
    }
    Ok(())
}

#[derive(Serialize)]
struct Fix {
    transmitter: String,
    method: &'static str,
    x_m: f64,
    y_m: f64,
    z_m: f64,
    depth_scale_m: f64,
    residual_rms_m: f64,
}

fn localize_cmd(
    intrinsics: &Path,
    transmitter: &Path,
    observations: &Path,
    method: Method,
) -> CliResult<()> {
    let k = load_intrinsics(intrinsics)?;
    let spec = load_transmitter(transmitter)?;
    let features = spec
        .feature_set()
        .map_err(|e| CliError::Input(format!("{}: {e}", transmitter.display())))?;
    let obs = observations::parse_observations(&read_text(observations)?, &k)?;
    let fix = localize(&obs, &features, &k, features.plane_height(), method)?;
    let record = Fix {
        transmitter: spec.id,
        method: method.as_str(),
        x_m: fix.position.x,
        y_m: fix.position.y,
        z_m: fix.position.z,
        depth_scale_m: fix.depth_scale,
        residual_rms_m: fix.residual_rms,
    };
    println!(
        "{}",
        serde_json::to_string(&record).expect("plain record serializes")
    );
    Ok(())
}

fn export_plots(out: &Path, quiet: bool) -> CliResult<()> {
    let dir = plots::export(&ResultTables::load(out)?)?;
    if !quiet {
        eprintln!("plots in {}", dir.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Simulate {
            config,
            out,
            seed,
            method,
        } => simulate(config.as_deref(), out, *seed, *method, cli.quiet),
        Command::Localize {
            intrinsics,
            transmitter,
            observations,
            method,
        } => localize_cmd(intrinsics, transmitter, observations, (*method).into()),
        Command::ExportPlots { out } => export_plots(out, cli.quiet),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("vlp-mono: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
