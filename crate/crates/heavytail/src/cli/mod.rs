//! Command-line entry points: experiment configuration, execution and
//! bit-stable result files.

pub mod config;
pub mod data;
pub mod output;

use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::simlab::{
    fit_loglog_slope, group_means, run_mc_experiment, run_vicm_experiment, EstimatorTag,
    ExperimentRecord,
};
use crate::transforms::calibrate_vicm_levels;
use config::{CalibrateFile, McExperimentFile, OutputFormat, VicmExperimentFile};
use output::{
    write_calibration_file, write_experiment_file, CalibrationReport, ExperimentReport,
    SlopeSummary,
};

/// Mean errors below this are treated as sitting at the solver tolerance
/// floor; slope fits over such groups are reported as not applicable.
const ERROR_FLOOR: f64 = 1e-5;

#[derive(Debug, Parser)]
#[command(
    name = "heavytail",
    version,
    about = "Robust heavy-tailed regression experiments: truncated matrix completion and index-coefficient models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the matrix-completion rate experiment from a config file.
    McExperiment(RunArgs),
    /// Run the varying-index-coefficient-model experiment from a config file.
    VicmExperiment(RunArgs),
    /// Solve the adaptive truncation-level equations for a data file.
    Calibrate(RunArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Experiment configuration (TOML).
    #[arg(long)]
    pub config: PathBuf,
    /// Override the config file's seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Result file path (overrides the config's `out`).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Result file format (overrides the config's `format`).
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Worker threads (default: all cores). Results do not depend on this.
    #[arg(long)]
    pub threads: Option<usize>,
}

/// Runs a parsed command, returning the process exit code: 0 on success,
/// 2 on validation errors, 3 on numerical/data failures.
pub fn run(cli: Cli) -> i32 {
    let (args, result) = match &cli.command {
        Command::McExperiment(args) => (args, run_mc(args)),
        Command::VicmExperiment(args) => (args, run_vicm(args)),
        Command::Calibrate(args) => (args, run_calibrate(args)),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error ({}): {e}", args.config.display());
            e.exit_code()
        }
    }
}

fn init_threads(args: &RunArgs) {
    if let Some(n) = args.threads {
        // Ignore failure: the global pool can only be set once per process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn resolve_out(args: &RunArgs, from_config: &Option<String>) -> Result<PathBuf> {
    args.out
        .clone()
        .or_else(|| from_config.as_ref().map(PathBuf::from))
        .ok_or_else(|| Error::Config("no output path: set `out` in the config or pass --out".into()))
}

fn slope_summaries(records: &[ExperimentRecord]) -> Vec<SlopeSummary> {
    let groups: BTreeSet<(String, u8)> = records
        .iter()
        .map(|r| (r.noise.clone(), r.estimator as u8))
        .collect();
    let means = group_means(records);
    groups
        .into_iter()
        .map(|(noise, est)| {
            let estimator = if est == 0 {
                EstimatorTag::Robust
            } else {
                EstimatorTag::Standard
            };
            let max_mean = means
                .iter()
                .filter(|m| m.noise == noise && m.estimator == estimator)
                .map(|m| m.mean_error)
                .fold(0.0_f64, f64::max);
            if max_mean < ERROR_FLOOR {
                return SlopeSummary {
                    estimator,
                    noise,
                    fit: None,
                    note: "errors at tolerance floor".into(),
                };
            }
            match fit_loglog_slope(records, estimator, &noise) {
                Ok(fit) => SlopeSummary {
                    estimator,
                    noise,
                    fit: Some(fit),
                    note: String::new(),
                },
                Err(e) => SlopeSummary {
                    estimator,
                    noise,
                    fit: None,
                    note: format!("{e}"),
                },
            }
        })
        .collect()
}

fn run_mc(args: &RunArgs) -> Result<()> {
    init_threads(args);
    let mut file = McExperimentFile::load(&args.config)?;
    let plan = file.to_plan(args.seed)?;
    let out_path = resolve_out(args, &file.out)?;
    let format = args.format.or(file.format).unwrap_or(OutputFormat::Csv);

    // The header embeds the fully resolved config including the seed, but
    // not the output routing: files must not depend on where they land.
    file.seed = plan.seed;
    file.out = None;
    file.format = None;
    let config_toml = toml::to_string(&file).map_err(|e| Error::Config(format!("{e}")))?;
    let config_json = serde_json::to_value(&file).map_err(|e| Error::Config(format!("{e}")))?;

    let started = std::time::Instant::now();
    let outcome = run_mc_experiment(&plan)?;
    let means = group_means(&outcome.records);
    let slopes = slope_summaries(&outcome.records);
    let report = ExperimentReport {
        command: "mc-experiment",
        seed: plan.seed,
        config_toml: &config_toml,
        config_json,
        records: &outcome.records,
        means: &means,
        slopes: &slopes,
    };
    write_experiment_file(&out_path, format, &report)?;
    println!(
        "mc-experiment: {} records -> {} ({:.1} s, R = {:.4})",
        outcome.records.len(),
        out_path.display(),
        started.elapsed().as_secs_f64(),
        outcome.max_norm_budget,
    );
    Ok(())
}

fn run_vicm(args: &RunArgs) -> Result<()> {
    init_threads(args);
    let mut file = VicmExperimentFile::load(&args.config)?;
    let plan = file.to_plan(args.seed);
    let out_path = resolve_out(args, &file.out)?;
    let format = args.format.or(file.format).unwrap_or(OutputFormat::Csv);

    file.seed = plan.seed;
    file.out = None;
    file.format = None;
    let config_toml = toml::to_string(&file).map_err(|e| Error::Config(format!("{e}")))?;
    let config_json = serde_json::to_value(&file).map_err(|e| Error::Config(format!("{e}")))?;

    let started = std::time::Instant::now();
    let outcome = run_vicm_experiment(&plan)?;
    let means = group_means(&outcome.records);
    let slopes = slope_summaries(&outcome.records);
    let report = ExperimentReport {
        command: "vicm-experiment",
        seed: plan.seed,
        config_toml: &config_toml,
        config_json,
        records: &outcome.records,
        means: &means,
        slopes: &slopes,
    };
    write_experiment_file(&out_path, format, &report)?;
    println!(
        "vicm-experiment: {} records -> {} ({:.1} s)",
        outcome.records.len(),
        out_path.display(),
        started.elapsed().as_secs_f64(),
    );
    Ok(())
}

fn run_calibrate(args: &RunArgs) -> Result<()> {
    init_threads(args);
    let mut file = CalibrateFile::load(&args.config)?;
    let out_path = resolve_out(args, &file.out)?;
    let format = args.format.or(file.format).unwrap_or(OutputFormat::Csv);

    // The data path is resolved relative to the config file's directory.
    let data_path = {
        let p = PathBuf::from(&file.data);
        if p.is_absolute() {
            p
        } else {
            args.config.parent().unwrap_or(std::path::Path::new(".")).join(p)
        }
    };
    let (d1, d2, samples) = data::read_vicm_data(&data_path)?;
    let (default1, default2) = crate::transforms::default_targets(d1, d2, file.calibration_factor);
    let target1 = file.target1.unwrap_or(default1);
    let target2 = file.target2.unwrap_or(default2);

    file.out = None;
    file.format = None;
    let config_toml = toml::to_string(&file).map_err(|e| Error::Config(format!("{e}")))?;
    let config_json = serde_json::to_value(&file).map_err(|e| Error::Config(format!("{e}")))?;

    let levels = calibrate_vicm_levels(&samples, file.score, target1, target2)?;
    let report = CalibrationReport {
        command: "calibrate",
        config_toml: &config_toml,
        config_json,
        levels: &levels,
    };
    write_calibration_file(&out_path, format, &report)?;
    println!(
        "calibrate: {} levels -> {} (targets {:.4}, {:.4})",
        d1 * d2 + d2 * d2,
        out_path.display(),
        target1,
        target2,
    );
    Ok(())
}
