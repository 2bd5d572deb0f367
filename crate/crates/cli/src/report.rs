//! Result tables: per-trial rows, per-point summaries and the error CDF.
//!
//! Floats are written with 9 significant digits.

use std::fs::{self, File};
use std::path::{Path, PathBuf};

use serde::Deserialize;
use vlp_mono::{build_cdf, CdfSeries, PointResult, WorldPoint};

use crate::error::{CliError, CliResult};

pub const RESULTS_FILE: &str = "results.csv";
pub const SUMMARY_FILE: &str = "summary.csv";
pub const CDF_FILE: &str = "cdf.csv";

/// Rounds to 9 significant digits and prints the shortest decimal that reads back to it.
pub fn fmt_sig9(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let rounded: f64 = format!("{v:.8e}").parse().expect("formatted float parses");
    // normalize -0
    if rounded == 0.0 {
        return "0".to_string();
    }
    format!("{rounded}")
}

fn writer(path: &Path) -> CliResult<csv::Writer<File>> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    Ok(csv::Writer::from_writer(file))
}

fn write_row(w: &mut csv::Writer<File>, path: &Path, row: &[String]) -> CliResult<()> {
    w.write_record(row).map_err(|e| CliError::io(path, e))
}

fn opt(v: Option<f64>) -> String {
    v.map(fmt_sig9).unwrap_or_default()
}

/// Writes results, summary and CDF tables into `dir`.
pub fn write_tables(dir: &Path, scenario_id: &str, results: &[PointResult]) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;

    let path = dir.join(RESULTS_FILE);
    let mut w = writer(&path)?;
    let header = [
        "scenario_id",
        "gx",
        "gy",
        "gz",
        "trial",
        "est_x",
        "est_y",
        "est_z",
        "err_3d",
        "status",
    ];
    write_row(&mut w, &path, &header.map(String::from))?;
    for point in results {
        let t = point.truth;
        for trial in &point.trials {
            let mut row = vec![
                scenario_id.to_string(),
                fmt_sig9(t.x),
                fmt_sig9(t.y),
                fmt_sig9(t.z),
                trial.trial.to_string(),
            ];
            match &trial.result {
                Ok(r) => {
                    let p = r.position;
                    row.extend([
                        fmt_sig9(p.x),
                        fmt_sig9(p.y),
                        fmt_sig9(p.z),
                        fmt_sig9(p.distance(&t)),
                        "ok".to_string(),
                    ]);
                }
                Err(e) => {
                    row.extend([
                        String::new(),
                        String::new(),
                        String::new(),
                        String::new(),
                        e.code().to_string(),
                    ]);
                }
            }
            write_row(&mut w, &path, &row)?;
        }
    }
    w.flush().map_err(|e| CliError::io(&path, e))?;

    let path = dir.join(SUMMARY_FILE);
    let mut w = writer(&path)?;
    let header = [
        "scenario_id",
        "gx",
        "gy",
        "gz",
        "successes",
        "failures",
        "offset_max",
        "rmse_xy",
        "rmse_yz",
        "rmse_3d",
    ];
    write_row(&mut w, &path, &header.map(String::from))?;
    for point in results {
        let t = point.truth;
        let s = point.stats;
        write_row(
            &mut w,
            &path,
            &[
                scenario_id.to_string(),
                fmt_sig9(t.x),
                fmt_sig9(t.y),
                fmt_sig9(t.z),
                point.successes().to_string(),
                point.failures.to_string(),
                opt(s.map(|s| s.offset_max)),
                opt(s.map(|s| s.rmse_xy)),
                opt(s.map(|s| s.rmse_yz)),
                opt(s.map(|s| s.rmse_3d)),
            ],
        )?;
    }
    w.flush().map_err(|e| CliError::io(&path, e))?;

    let path = dir.join(CDF_FILE);
    let mut w = writer(&path)?;
    write_row(
        &mut w,
        &path,
        &["error".to_string(), "probability".to_string()],
    )?;
    let rmse: Vec<f64> = results
        .iter()
        .filter_map(|p| p.stats.map(|s| s.rmse_3d))
        .collect();
    if let Ok(cdf) = build_cdf(&rmse) {
        for (e, p) in cdf.steps {
            write_row(&mut w, &path, &[fmt_sig9(e), fmt_sig9(p)])?;
        }
    }
    w.flush().map_err(|e| CliError::io(&path, e))
}

#[derive(Debug, Clone, Deserialize)]
pub struct ResultRow {
    pub gx: f64,
    pub gy: f64,
    pub gz: f64,
    pub est_x: Option<f64>,
    pub est_y: Option<f64>,
    pub est_z: Option<f64>,
    pub status: String,
}

impl ResultRow {
    pub fn truth(&self) -> WorldPoint {
        WorldPoint::new(self.gx, self.gy, self.gz)
    }

    pub fn estimate(&self) -> Option<WorldPoint> {
        match (self.status.as_str(), self.est_x, self.est_y, self.est_z) {
            ("ok", Some(x), Some(y), Some(z)) => Some(WorldPoint::new(x, y, z)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct SummaryRow {
    pub rmse_xy: Option<f64>,
    pub rmse_yz: Option<f64>,
    pub rmse_3d: Option<f64>,
}

fn read_rows<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<Vec<T>> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| CliError::io(path, e))?;
    reader
        .deserialize()
        .collect::<Result<Vec<T>, _>>()
        .map_err(|e| CliError::io(path, format!("corrupt table: {e}")))
}

/// Tables produced by `simulate`, read back for plotting.
pub struct ResultTables {
    pub dir: PathBuf,
    pub results: Vec<ResultRow>,
    pub summary: Vec<SummaryRow>,
}

impl ResultTables {
    pub fn load(dir: &Path) -> CliResult<Self> {
        let results: Vec<ResultRow> = read_rows(&dir.join(RESULTS_FILE))?;
        let summary: Vec<SummaryRow> = read_rows(&dir.join(SUMMARY_FILE))?;
        if results.is_empty() || summary.is_empty() {
            return Err(CliError::Io(format!(
                "{}: result tables are empty",
                dir.display()
            )));
        }
        Ok(Self {
            dir: dir.to_path_buf(),
            results,
            summary,
        })
    }

    /// CDF of a per-point statistic over the points that have one.
    pub fn cdf(&self, stat: impl Fn(&SummaryRow) -> Option<f64>) -> Option<CdfSeries> {
        let values: Vec<f64> = self.summary.iter().filter_map(stat).collect();
        build_cdf(&values).ok()
    }
}
