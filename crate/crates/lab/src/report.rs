//! JSON report envelope and CSV point tables.

use std::io::Write;
use std::path::{Path, PathBuf};

use canonmap_core::fiberlab::{Status, SuiteReport};
use canonmap_core::genus9::Point;
use serde::Serialize;

use crate::config::Config;

pub const SCHEMA: &str = "canonmap-report/1";

#[derive(Serialize)]
pub struct Envelope<'a, D: Serialize> {
    pub schema: &'static str,
    pub suite: &'a str,
    pub status: Status,
    pub seed: u64,
    pub config: &'a Config,
    pub report: &'a SuiteReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<D>,
}

pub fn to_json<D: Serialize>(config: &Config, report: &SuiteReport, details: Option<D>) -> serde_json::Result<String> {
    let env = Envelope {
        schema: SCHEMA,
        suite: &report.suite,
        status: report.status,
        seed: config.seed,
        config,
        report,
        details,
    };
    let mut s = serde_json::to_string_pretty(&env)?;
    s.push('\n');
    Ok(s)
}

/// One line per check, for the terminal.
pub fn summary_lines(report: &SuiteReport) -> Vec<String> {
    let mut out: Vec<String> = report
        .checks
        .iter()
        .map(|c| {
            let tag = if c.failed == 0 { "PASS" } else { "FAIL" };
            format!(
                "{tag} {:<36} {:>7} checked {:>5} failed  max residual {:.3e}",
                c.name, c.count, c.failed, c.max_residual
            )
        })
        .collect();
    for f in &report.failures {
        out.push(format!("  witness [{}] {}", f.check, f.witness));
    }
    for s in &report.skipped {
        out.push(format!("  skipped {}: {}", s.index, s.reason));
    }
    out.push(format!("{}: {:?}, {} checks", report.suite, report.status, report.checks_run));
    out
}

/// `path` with its extension replaced by `csv`.
pub fn sibling_csv(path: &Path) -> PathBuf {
    path.with_extension("csv")
}

pub fn coord_cell(c: &canonmap_core::scalars::C64) -> serde_json::Result<String> {
    serde_json::to_string(c)
}

/// Writes rows of labeled points; each coordinate cell holds `[re, im]`.
pub fn write_point_csv<W: Write>(
    out: W,
    header: &[&str],
    rows: &[(Vec<String>, Vec<Point>)],
) -> Result<(), Box<dyn std::error::Error>> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for (labels, points) in rows {
        let mut rec = labels.clone();
        for p in points {
            for c in p {
                rec.push(coord_cell(c)?);
            }
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
