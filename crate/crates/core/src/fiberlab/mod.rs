//! Experiment drivers: the exact symbolic suite, finite-field group-law
//! suites, and the Monte-Carlo fiber classification of the canonical map.

mod fibers;
mod finite;
mod sampling;
mod symbolic;

use alloc::string::{String, ToString};
use alloc::vec::Vec;

pub use fibers::{
    assess, case2_trial, case3_search, generic_trial, run_base_point_check, run_base_point_trials,
    run_fiber_experiment, run_interiorsum_check, summarize, Candidate, FiberConfig, FiberReport, FiberSummary, Outcome,
    TrialKind, TrialReport, COLLISION_THRESHOLD, SEPARATION_FLOOR,
};
pub use finite::{run_finite_field_suite, ASSOCIATIVITY_SAMPLES, COMPLETENESS_SAMPLES, EXHAUSTIVE_TRIPLE_POINTS};
pub use sampling::run_sampling_check;
pub use symbolic::{run_symbolic_suite, run_symbolic_suite_with};

/// Failure witnesses kept per check; further failures are only counted.
pub const WITNESS_LIMIT: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "lowercase"))]
pub enum Status {
    Pass,
    Fail,
}

/// Aggregate of every instance of one named identity or property.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Check {
    pub name: String,
    pub count: usize,
    pub failed: usize,
    pub max_residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Failure {
    pub check: String,
    pub witness: String,
}

/// An input excluded by a precondition, with the reason.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Skip {
    pub index: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SuiteReport {
    pub suite: String,
    pub status: Status,
    pub checks_run: usize,
    pub checks: Vec<Check>,
    pub failures: Vec<Failure>,
    pub skipped: Vec<Skip>,
    pub max_residual: f64,
    /// Wall-clock time, filled in by callers that own a clock.
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub duration_ms: Option<f64>,
}

impl SuiteReport {
    pub fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            status: Status::Pass,
            checks_run: 0,
            checks: Vec::new(),
            failures: Vec::new(),
            skipped: Vec::new(),
            max_residual: 0.0,
            duration_ms: None,
        }
    }

    /// Records one instance of `check`; `witness` is only rendered on failure.
    pub fn record<W: FnOnce() -> String>(&mut self, check: &str, ok: bool, residual: f64, witness: W) {
        let idx = match self.checks.iter().position(|c| c.name == check) {
            Some(i) => i,
            None => {
                self.checks.push(Check { name: check.to_string(), count: 0, failed: 0, max_residual: 0.0 });
                self.checks.len() - 1
            }
        };
        let c = &mut self.checks[idx];
        c.count += 1;
        self.checks_run += 1;
        if residual.is_finite() {
            c.max_residual = c.max_residual.max(residual);
            self.max_residual = self.max_residual.max(residual);
        }
        if !ok {
            c.failed += 1;
            if c.failed <= WITNESS_LIMIT {
                self.failures.push(Failure { check: check.to_string(), witness: witness() });
            }
            self.status = Status::Fail;
        }
    }

    pub fn skip(&mut self, index: usize, reason: &str) {
        self.skipped.push(Skip { index, reason: reason.to_string() });
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Seed of trial `index` in `stream`, mixed from the master seed.
pub fn trial_seed(master: u64, stream: u64, index: u64) -> u64 {
    let mut x = splitmix64(master ^ splitmix64(stream.wrapping_mul(0x9e37_79b9_7f4a_7c15)));
    x = splitmix64(x ^ index);
    x
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Trial streams, one per kind of experiment.
pub mod stream {
    pub const GENERIC: u64 = 1;
    pub const CASE2: u64 = 2;
    pub const CASE3: u64 = 3;
    pub const INTERIORSUM: u64 = 5;
    pub const SAMPLE: u64 = 6;
    pub const FINITE: u64 = 7;
}
