//! Run configuration: a flat TOML document, overridden by command-line flags.

use std::fmt;
use std::path::{Path, PathBuf};

use canonmap_core::fiberlab::FiberConfig;
use canonmap_core::genus9::{Genus9Curve, QuadricQ};
use canonmap_core::scalars::{is_prime_u64, Tolerance, C64};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

/// A real number or an `[re, im]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Real(f64),
    Complex([f64; 2]),
}

impl Coefficient {
    fn to_c64(self) -> C64 {
        match self {
            Coefficient::Real(r) => C64::real(r),
            Coefficient::Complex([re, im]) => C64::new(re, im),
        }
    }
}

/// Either the string `"default"` or ten coefficients in the order
/// `xx, xy, xz, xt, yy, yz, yt, zz, zt, tt`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuadricSpec {
    Named(String),
    Coefficients(Box<[Coefficient; 10]>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Config {
    pub seed: u64,
    pub prime: u64,
    pub u: i64,
    pub v: i64,
    pub quadric: QuadricSpec,
    pub tolerance_abs: f64,
    pub tolerance_proj: f64,
    pub generic_trials: usize,
    pub case2_trials: usize,
    pub case3_target: usize,
    pub starts: usize,
    pub max_resamples: usize,
    pub interiorsum_samples: usize,
    pub sample_count: usize,
    /// Output destination; not echoed into reports so that runs compare byte for byte.
    #[serde(skip_serializing)]
    pub out: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        let tol = Tolerance::default();
        let fib = FiberConfig::default();
        Config {
            seed: 42,
            prime: 13,
            u: 3,
            v: 5,
            quadric: QuadricSpec::Named("default".into()),
            tolerance_abs: tol.abs,
            tolerance_proj: tol.proj,
            generic_trials: fib.generic_trials,
            case2_trials: fib.case2_trials,
            case3_target: fib.case3_target,
            starts: fib.starts,
            max_resamples: fib.max_resamples,
            interiorsum_samples: 50,
            sample_count: 200,
            out: None,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| ConfigError(format!("{}: {e}", path.display())))
    }

    /// Sets the absolute tolerance; the projective one keeps its ratio to it.
    pub fn set_tolerance(&mut self, abs: f64) {
        let ratio = Tolerance::default().proj / Tolerance::default().abs;
        self.tolerance_abs = abs;
        self.tolerance_proj = abs * ratio;
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !is_prime_u64(self.prime) || self.prime < 3 {
            return Err(ConfigError(format!("prime = {} is not an odd prime", self.prime)));
        }
        let p = self.prime as i128;
        let (u, v) = (self.u as i128, self.v as i128);
        if (u * v * (u + v)).rem_euclid(p) == 0 {
            return Err(ConfigError(format!("u·v·(u+v) vanishes mod {p} for u = {u}, v = {v}")));
        }
        self.tolerance()?;
        self.quadric()?;
        Ok(())
    }

    pub fn tolerance(&self) -> Result<Tolerance, ConfigError> {
        Tolerance::new(self.tolerance_abs, self.tolerance_proj).map_err(|_| {
            ConfigError(format!(
                "tolerances must be positive and finite with proj >= abs (abs = {}, proj = {})",
                self.tolerance_abs, self.tolerance_proj
            ))
        })
    }

    pub fn quadric(&self) -> Result<QuadricQ<C64>, ConfigError> {
        match &self.quadric {
            QuadricSpec::Named(n) if n == "default" => Ok(QuadricQ::default()),
            QuadricSpec::Named(n) => Err(ConfigError(format!("unknown quadric {n:?}"))),
            QuadricSpec::Coefficients(c) => {
                QuadricQ::new(c.map(Coefficient::to_c64)).map_err(|e| ConfigError(format!("quadric: {e}")))
            }
        }
    }

    pub fn curve(&self) -> Result<Genus9Curve, ConfigError> {
        Ok(Genus9Curve::new(self.quadric()?, self.tolerance()?))
    }

    pub fn fiber_config(&self) -> FiberConfig {
        FiberConfig {
            generic_trials: self.generic_trials,
            case2_trials: self.case2_trials,
            case3_target: self.case3_target,
            starts: self.starts,
            max_resamples: self.max_resamples,
        }
    }
}
