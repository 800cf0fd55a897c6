//! Command-line front end for `canonmap-core`.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or a run
//! cannot complete, 2 on usage or configuration errors.

pub mod commands;
pub mod config;
pub mod laws;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::commands::CommandError;
use crate::config::Config;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "canonmap", version, about = "Verification suites and fiber experiments for the canonical map lab")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// TOML configuration file; flags override its values
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Master seed [default: 42]
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Trial count: generic trials for `fibers` [default: 100], samples for `interiorsum` [default: 50]
    #[arg(long, global = true)]
    pub trials: Option<usize>,

    /// Odd prime for `grouplaw` [default: 13]
    #[arg(long, global = true)]
    pub prime: Option<u64>,

    /// Jacobi parameter u, as an integer residue [default: 3]
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub u: Option<i64>,

    /// Jacobi parameter v, as an integer residue [default: 5]
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub v: Option<i64>,

    /// JSON report path; the report goes to stdout when absent
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Absolute float tolerance; the projective tolerance is kept at 100 times it [default: 1e-10]
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,

    /// Include wall-clock durations in the JSON report
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact identities of the addition laws and canonical sections
    VerifySymbolic {
        /// JSON law-table fixture replacing some or all built-in laws
        #[arg(long, value_name = "PATH")]
        laws: Option<PathBuf>,
    },
    /// Group-law suite over GF(p): exhaustive up to p = 10000, sampled above
    Grouplaw,
    /// Generic and constrained fiber trials of the canonical map
    Fibers,
    /// Pseudo-addition on elliptic slices against the Jacobi route
    Interiorsum,
    /// The 16 base points, with a CSV table
    Basepoints {
        /// CSV path [default: the JSON path with a .csv extension]
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Points of the genus-9 curve, with a CSV table
    Sample {
        /// Number of points [default: 200]
        #[arg(long)]
        count: Option<usize>,
        /// CSV path [default: the JSON path with a .csv extension]
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
}

impl Cli {
    /// The configuration file (or defaults) with every flag applied.
    pub fn resolve(&self) -> Result<Config, config::ConfigError> {
        let mut c = match &self.config {
            Some(p) => Config::load(p)?,
            None => Config::default(),
        };
        if let Some(s) = self.seed {
            c.seed = s;
        }
        if let Some(p) = self.prime {
            c.prime = p;
        }
        if let Some(u) = self.u {
            c.u = u;
        }
        if let Some(v) = self.v {
            c.v = v;
        }
        if let Some(t) = self.tolerance {
            c.set_tolerance(t);
        }
        if let Some(o) = &self.out {
            c.out = Some(o.clone());
        }
        if let Some(n) = self.trials {
            match self.command {
                Command::Interiorsum => c.interiorsum_samples = n,
                _ => c.generic_trials = n,
            }
        }
        if let Command::Sample { count: Some(n), .. } = self.command {
            c.sample_count = n;
        }
        c.validate()?;
        Ok(c)
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let config = match cli.resolve() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let start = Instant::now();
    let result = match &cli.command {
        Command::VerifySymbolic { laws } => commands::verify_symbolic(laws.as_ref()),
        Command::Grouplaw => commands::grouplaw(&config),
        Command::Fibers => commands::fibers(&config),
        Command::Interiorsum => commands::interiorsum(&config),
        Command::Basepoints { csv } => commands::basepoints(&config, csv.as_ref()),
        Command::Sample { csv, .. } => commands::sample(&config, csv.as_ref()),
    };
    let (mut suite, details) = match result {
        Ok(r) => r,
        Err(CommandError::Config(e)) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
        Err(CommandError::Run(e)) => {
            eprintln!("error: {e}");
            return EXIT_FAIL;
        }
    };
    if cli.timings {
        suite.duration_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    for line in report::summary_lines(&suite) {
        eprintln!("{line}");
    }
    let json = match report::to_json(&config, &suite, details) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAIL;
        }
    };
    match &config.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json) {
                eprintln!("error: {}: {e}", path.display());
                return EXIT_FAIL;
            }
        }
        None => print!("{json}"),
    }
    if suite.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
