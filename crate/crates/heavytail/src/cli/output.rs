//! Result-file writers and the matching parser.
//!
//! Both formats open with a header block embedding the resolved config and
//! seed, carry one line per record, and close with a summary (group means
//! and slope fits). Files contain no timestamps or timings: rerunning the
//! same config and seed reproduces them byte for byte. CSV floats use 17
//! significant digits so values round-trip exactly.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::json;

use crate::cli::config::{OutputFormat, SCHEMA_VERSION};
use crate::error::{Error, Result};
use crate::simlab::{EstimatorTag, ExperimentRecord, MeanPoint, SlopeFit};
use crate::transforms::CalibratedLevels;

/// 17 significant digits: exact f64 round-trip, stable diffs.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone)]
pub struct SlopeSummary {
    pub estimator: EstimatorTag,
    pub noise: String,
    pub fit: Option<SlopeFit>,
    /// Reason when `fit` is absent (e.g. errors at the solver floor).
    pub note: String,
}

pub struct ExperimentReport<'a> {
    pub command: &'static str,
    pub seed: u64,
    pub config_toml: &'a str,
    pub config_json: serde_json::Value,
    pub records: &'a [ExperimentRecord],
    pub means: &'a [MeanPoint],
    pub slopes: &'a [SlopeSummary],
}

fn header_comment_block(command: &str, seed: u64, config_toml: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# heavytail-results v{SCHEMA_VERSION}");
    let _ = writeln!(out, "# command = {command}");
    let _ = writeln!(out, "# seed = {seed}");
    let _ = writeln!(out, "# begin-config");
    for line in config_toml.lines() {
        let _ = writeln!(out, "# {line}");
    }
    let _ = writeln!(out, "# end-config");
    out
}

pub fn write_experiment_file(
    path: &Path,
    format: OutputFormat,
    report: &ExperimentReport<'_>,
) -> Result<()> {
    let text = match format {
        OutputFormat::Csv => experiment_csv(report),
        OutputFormat::JsonLines => experiment_jsonl(report)?,
    };
    std::fs::write(path, text)?;
    Ok(())
}

fn experiment_csv(report: &ExperimentReport<'_>) -> String {
    let mut out = header_comment_block(report.command, report.seed, report.config_toml);
    let _ = writeln!(out, "experiment,estimator,noise,n,replicate,error,converged");
    for r in report.records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.experiment,
            r.estimator,
            r.noise,
            r.n,
            r.replicate,
            fmt17(r.error),
            r.converged
        );
    }
    let _ = writeln!(out, "# begin-summary");
    let _ = writeln!(out, "# mean,estimator,noise,n,mean_error,log_mean_error,replicates");
    for m in report.means {
        let _ = writeln!(
            out,
            "# mean,{},{},{},{},{},{}",
            m.estimator,
            m.noise,
            m.n,
            fmt17(m.mean_error),
            fmt17(m.mean_error.ln()),
            m.replicates
        );
    }
    let _ = writeln!(out, "# slope,estimator,noise,points,slope,intercept,r_squared");
    for s in report.slopes {
        match &s.fit {
            Some(f) => {
                let _ = writeln!(
                    out,
                    "# slope,{},{},{},{},{},{}",
                    s.estimator,
                    s.noise,
                    f.points,
                    fmt17(f.slope),
                    fmt17(f.intercept),
                    fmt17(f.r_squared)
                );
            }
            None => {
                let _ = writeln!(out, "# slope,{},{},na,na,na,na ({})", s.estimator, s.noise, s.note);
            }
        }
    }
    let _ = writeln!(out, "# end-summary");
    out
}

fn experiment_jsonl(report: &ExperimentReport<'_>) -> Result<String> {
    let mut out = String::new();
    let header = json!({
        "kind": "header",
        "schema_version": SCHEMA_VERSION,
        "command": report.command,
        "seed": report.seed,
        "config": report.config_json,
    });
    let _ = writeln!(out, "{header}");
    for r in report.records {
        let line = json!({
            "kind": "record",
            "experiment": r.experiment,
            "estimator": r.estimator.to_string(),
            "noise": r.noise,
            "n": r.n,
            "replicate": r.replicate,
            "error": r.error,
            "converged": r.converged,
        });
        let _ = writeln!(out, "{line}");
    }
    for m in report.means {
        let line = json!({
            "kind": "mean",
            "estimator": m.estimator.to_string(),
            "noise": m.noise,
            "n": m.n,
            "mean_error": m.mean_error,
            "log_mean_error": m.mean_error.ln(),
            "replicates": m.replicates,
        });
        let _ = writeln!(out, "{line}");
    }
    for s in report.slopes {
        let line = match &s.fit {
            Some(f) => json!({
                "kind": "slope",
                "estimator": s.estimator.to_string(),
                "noise": s.noise,
                "points": f.points,
                "slope": f.slope,
                "intercept": f.intercept,
                "r_squared": f.r_squared,
            }),
            None => json!({
                "kind": "slope",
                "estimator": s.estimator.to_string(),
                "noise": s.noise,
                "points": "na",
                "slope": "na",
                "note": s.note,
            }),
        };
        let _ = writeln!(out, "{line}");
    }
    Ok(out)
}

/// Reads the records back out of either format (detected from content).
/// Wall times are not stored in files; parsed records carry 0 there.
pub fn parse_experiment_records(path: &Path) -> Result<Vec<ExperimentRecord>> {
    let text = std::fs::read_to_string(path)?;
    let first = text.trim_start().chars().next().unwrap_or('#');
    if first == '{' {
        parse_jsonl_records(&text)
    } else {
        parse_csv_records(&text)
    }
}

fn parse_csv_records(text: &str) -> Result<Vec<ExperimentRecord>> {
    let mut records = Vec::new();
    let mut saw_header = false;
    for line in text.lines() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        if !saw_header {
            saw_header = true; // column-name row
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(Error::Config(format!(
                "bad record line (expected 7 fields): {line}"
            )));
        }
        records.push(ExperimentRecord {
            experiment: fields[0].to_string(),
            estimator: fields[1]
                .parse()
                .map_err(|e: String| Error::Config(e))?,
            noise: fields[2].to_string(),
            n: fields[3].parse().map_err(|e| Error::Config(format!("{e}")))?,
            replicate: fields[4].parse().map_err(|e| Error::Config(format!("{e}")))?,
            error: fields[5].parse().map_err(|e| Error::Config(format!("{e}")))?,
            converged: fields[6].parse().map_err(|e| Error::Config(format!("{e}")))?,
            seconds: 0.0,
        });
    }
    Ok(records)
}

fn parse_jsonl_records(text: &str) -> Result<Vec<ExperimentRecord>> {
    let mut records = Vec::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            continue;
        }
        let value: serde_json::Value =
            serde_json::from_str(line).map_err(|e| Error::Config(format!("bad json line: {e}")))?;
        if value.get("kind").and_then(|k| k.as_str()) != Some("record") {
            continue;
        }
        let get_str = |key: &str| -> Result<String> {
            value
                .get(key)
                .and_then(|v| v.as_str())
                .map(str::to_string)
                .ok_or_else(|| Error::Config(format!("record missing {key}")))
        };
        let get_u64 = |key: &str| -> Result<u64> {
            value
                .get(key)
                .and_then(|v| v.as_u64())
                .ok_or_else(|| Error::Config(format!("record missing {key}")))
        };
        records.push(ExperimentRecord {
            experiment: get_str("experiment")?,
            estimator: get_str("estimator")?
                .parse()
                .map_err(|e: String| Error::Config(e))?,
            noise: get_str("noise")?,
            n: get_u64("n")?,
            replicate: get_u64("replicate")?,
            error: value
                .get("error")
                .and_then(|v| v.as_f64())
                .ok_or_else(|| Error::Config("record missing error".into()))?,
            converged: value
                .get("converged")
                .and_then(|v| v.as_bool())
                .ok_or_else(|| Error::Config("record missing converged".into()))?,
            seconds: 0.0,
        });
    }
    Ok(records)
}

pub struct CalibrationReport<'a> {
    pub command: &'static str,
    pub config_toml: &'a str,
    pub config_json: serde_json::Value,
    pub levels: &'a CalibratedLevels,
}

pub fn write_calibration_file(
    path: &Path,
    format: OutputFormat,
    report: &CalibrationReport<'_>,
) -> Result<()> {
    let text = match format {
        OutputFormat::Csv => calibration_csv(report),
        OutputFormat::JsonLines => calibration_jsonl(report),
    };
    std::fs::write(path, text)?;
    Ok(())
}

fn calibration_rows(levels: &CalibratedLevels) -> Vec<(&'static str, usize, usize, f64, f64, bool)> {
    let mut rows = Vec::new();
    let g1 = levels.gamma1.levels();
    for i in 0..g1.rows() {
        for j in 0..g1.cols() {
            rows.push((
                "gamma1",
                i,
                j,
                g1[(i, j)],
                levels.residuals1[(i, j)],
                levels.saturated1.contains(&(i, j)),
            ));
        }
    }
    let g2 = levels.gamma2.levels();
    for i in 0..g2.rows() {
        for j in 0..g2.cols() {
            rows.push((
                "gamma2",
                i,
                j,
                g2[(i, j)],
                levels.residuals2[(i, j)],
                levels.saturated2.contains(&(i, j)),
            ));
        }
    }
    rows
}

fn calibration_csv(report: &CalibrationReport<'_>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# heavytail-calibration v{SCHEMA_VERSION}");
    let _ = writeln!(out, "# command = {}", report.command);
    let _ = writeln!(out, "# begin-config");
    for line in report.config_toml.lines() {
        let _ = writeln!(out, "# {line}");
    }
    let _ = writeln!(out, "# end-config");
    let _ = writeln!(out, "# target1 = {}", fmt17(report.levels.target1));
    let _ = writeln!(out, "# target2 = {}", fmt17(report.levels.target2));
    let _ = writeln!(out, "matrix,row,col,level,residual,saturated");
    for (m, i, j, level, residual, saturated) in calibration_rows(report.levels) {
        let _ = writeln!(
            out,
            "{m},{i},{j},{},{},{saturated}",
            fmt17(level),
            fmt17(residual)
        );
    }
    out
}

fn calibration_jsonl(report: &CalibrationReport<'_>) -> String {
    let mut out = String::new();
    let header = json!({
        "kind": "header",
        "schema_version": SCHEMA_VERSION,
        "command": report.command,
        "config": report.config_json,
        "target1": report.levels.target1,
        "target2": report.levels.target2,
    });
    let _ = writeln!(out, "{header}");
    for (m, i, j, level, residual, saturated) in calibration_rows(report.levels) {
        let line = json!({
            "kind": "level",
            "matrix": m,
            "row": i,
            "col": j,
            "level": level,
            "residual": residual,
            "saturated": saturated,
        });
        let _ = writeln!(out, "{line}");
    }
    out
}
