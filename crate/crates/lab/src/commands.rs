use std::fs::File;
use std::path::PathBuf;

use canonmap_core::fiberlab::{
    case2_trial, case3_search, generic_trial, run_base_point_check, run_base_point_trials, run_finite_field_suite,
    run_interiorsum_check, run_sampling_check, run_symbolic_suite_with, summarize, trial_seed, FiberConfig,
    FiberSummary, SuiteReport, TrialReport,
};
use canonmap_core::genus9::Genus9Curve;
use canonmap_core::jacobi::TorsionLabel;
use canonmap_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Config, ConfigError};
use crate::laws::load_law_tables;
use crate::report::{sibling_csv, write_point_csv};

/// Failures that stop a command: bad input (exit 2) or a run that could
/// not complete (exit 1).
#[derive(Debug)]
pub enum CommandError {
    Config(ConfigError),
    Run(String),
}

impl From<ConfigError> for CommandError {
    fn from(e: ConfigError) -> Self {
        CommandError::Config(e)
    }
}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParams | Error::InvalidModulus(_) | Error::SingularParameters => {
                CommandError::Config(ConfigError(e.to_string()))
            }
            other => CommandError::Run(other.to_string()),
        }
    }
}

pub type Outcome = (SuiteReport, Option<serde_json::Value>);

fn details<T: Serialize>(t: &T) -> Result<Option<serde_json::Value>, CommandError> {
    serde_json::to_value(t).map(Some).map_err(|e| CommandError::Run(e.to_string()))
}

/// Refuses quadrics whose curve is singular at any of a fixed set of samples.
fn smooth_curve(config: &Config) -> Result<Genus9Curve, CommandError> {
    let curve = config.curve()?;
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(config.seed, 0, 0));
    if !curve.is_smooth_sampled(64, &mut rng) {
        return Err(ConfigError("the configured quadric gives a singular or unsampleable curve".into()).into());
    }
    Ok(curve)
}

pub fn verify_symbolic(laws: Option<&PathBuf>) -> Result<Outcome, CommandError> {
    let tables = match laws {
        Some(path) => load_law_tables(path)?,
        None => canonmap_core::jacobi::all_law_tables(&canonmap_core::scalars::Rational::from_int(1)),
    };
    Ok((run_symbolic_suite_with(&tables), None))
}

pub fn grouplaw(config: &Config) -> Result<Outcome, CommandError> {
    Ok((run_finite_field_suite(config.prime, config.u, config.v, config.seed)?, None))
}

#[derive(Serialize)]
struct FiberDetails<'a> {
    config: &'a FiberConfig,
    summary: &'a FiberSummary,
    trials: &'a [TrialReport],
}

pub fn fibers(config: &Config) -> Result<Outcome, CommandError> {
    let curve = smooth_curve(config)?;
    let fc = config.fiber_config();
    let seed = config.seed;
    let generic: Result<Vec<_>, Error> =
        (0..fc.generic_trials).into_par_iter().map(|i| generic_trial(&curve, &fc, seed, i)).collect();
    let case2: Result<Vec<_>, Error> =
        (0..fc.case2_trials).into_par_iter().map(|i| case2_trial(&curve, &fc, seed, i)).collect();
    let mut trials = generic?;
    trials.extend(case2?);
    trials.extend(case3_search(&curve, &fc, seed)?);
    trials.extend(run_base_point_trials(&curve)?);
    let report = summarize(&fc, seed, trials);
    let d = details(&FiberDetails { config: &report.config, summary: &report.summary, trials: &report.trials })?;
    Ok((report.checks, d))
}

pub fn interiorsum(config: &Config) -> Result<Outcome, CommandError> {
    let curve = smooth_curve(config)?;
    Ok((run_interiorsum_check(&curve, config.interiorsum_samples, config.seed)?, None))
}

fn write_csv(
    path: &PathBuf,
    header: &[&str],
    rows: &[(Vec<String>, Vec<[canonmap_core::scalars::C64; 4]>)],
) -> Result<(), CommandError> {
    let file = File::create(path).map_err(|e| CommandError::Run(format!("{}: {e}", path.display())))?;
    write_point_csv(file, header, rows).map_err(|e| CommandError::Run(e.to_string()))
}

fn csv_target(config: &Config, csv: Option<&PathBuf>) -> Option<PathBuf> {
    csv.cloned().or_else(|| config.out.as_deref().map(sibling_csv))
}

pub fn basepoints(config: &Config, csv: Option<&PathBuf>) -> Result<Outcome, CommandError> {
    let curve = smooth_curve(config)?;
    let (report, orbits) = run_base_point_check(&curve)?;
    if let Some(path) = csv_target(config, csv) {
        let header = ["bitangent", "member", "p_x", "p_y", "p_z", "p_t", "q_x", "q_y", "q_z", "q_t"];
        let rows: Vec<_> = orbits
            .iter()
            .flat_map(|o| {
                TorsionLabel::ALL
                    .iter()
                    .zip(o.members.iter())
                    .map(move |(g, m)| (vec![o.line.to_string(), g.name().to_string()], vec![m.p, m.q]))
            })
            .collect();
        write_csv(&path, &header, &rows)?;
    }
    Ok((report, None))
}

pub fn sample(config: &Config, csv: Option<&PathBuf>) -> Result<Outcome, CommandError> {
    let curve = smooth_curve(config)?;
    let (report, points) = run_sampling_check(&curve, config.sample_count, config.seed)?;
    if let Some(path) = csv_target(config, csv) {
        let header = ["index", "x", "y", "z", "t"];
        let rows: Vec<_> = points.iter().enumerate().map(|(i, p)| (vec![i.to_string()], vec![*p])).collect();
        write_csv(&path, &header, &rows)?;
    }
    Ok((report, None))
}
