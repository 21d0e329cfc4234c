//! Run configuration for the command-line front end. Values come from
//! flags, then environment variables, then defaults.

use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

use crate::field::{FieldError, PrimeField, ScalarMode, DEFAULT_MODULUS};

pub const ENV_CACHE: &str = "G2TAB_CACHE";
pub const ENV_MODULUS: &str = "G2TAB_MODULUS";
pub const ENV_THREADS: &str = "G2TAB_THREADS";

/// Shapes with at most this many boxes use exact arithmetic when no
/// modulus is chosen.
pub const EXACT_AUTO_LIMIT: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("invalid modulus {0:?}: expected \"exact\" or a prime")]
    BadModulus(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("invalid thread count {0:?}")]
    BadThreads(String),
    #[error("invalid output format {0:?}: expected json, csv or table")]
    BadOutput(String),
    #[error("max_boxes must be at least 1")]
    ZeroMaxBoxes,
}

/// Requested scalar arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScalarChoice {
    /// Exact up to [`EXACT_AUTO_LIMIT`] boxes, else the default prime.
    #[default]
    Auto,
    Exact,
    Prime(u64),
}

impl ScalarChoice {
    pub fn resolve(self, boxes: usize) -> ScalarMode {
        match self {
            ScalarChoice::Auto if boxes <= EXACT_AUTO_LIMIT => ScalarMode::Exact,
            ScalarChoice::Auto => ScalarMode::Prime(DEFAULT_MODULUS),
            ScalarChoice::Exact => ScalarMode::Exact,
            ScalarChoice::Prime(p) => ScalarMode::Prime(p),
        }
    }
}

impl FromStr for ScalarChoice {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "auto" => Ok(ScalarChoice::Auto),
            "exact" => Ok(ScalarChoice::Exact),
            t => {
                let p: u64 = t.parse().map_err(|_| ConfigError::BadModulus(s.to_string()))?;
                PrimeField::new(p)?;
                Ok(ScalarChoice::Prime(p))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Table,
}

impl FromStr for OutputFormat {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "table" => Ok(OutputFormat::Table),
            _ => Err(ConfigError::BadOutput(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub scalar: ScalarChoice,
    pub max_boxes: usize,
    /// Worker threads; 0 lets the pool pick.
    pub threads: usize,
    pub cache_dir: PathBuf,
    pub output: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scalar: ScalarChoice::Auto,
            max_boxes: 5,
            threads: 0,
            cache_dir: PathBuf::from(".g2tab-cache"),
            output: OutputFormat::Json,
        }
    }
}

/// Values given explicitly on the command line.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub modulus: Option<String>,
    pub threads: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub max_boxes: Option<usize>,
    pub output: Option<OutputFormat>,
}

impl RunConfig {
    /// Flags win over the environment, which wins over defaults.
    pub fn resolve(flags: &Overrides, env: impl Fn(&str) -> Option<String>) -> Result<RunConfig, ConfigError> {
        let mut cfg = RunConfig::default();
        if let Some(m) = flags.modulus.clone().or_else(|| env(ENV_MODULUS)) {
            cfg.scalar = m.parse()?;
        }
        match flags.threads {
            Some(t) => cfg.threads = t,
            None => {
                if let Some(t) = env(ENV_THREADS) {
                    cfg.threads = t.trim().parse().map_err(|_| ConfigError::BadThreads(t))?;
                }
            }
        }
        if let Some(dir) = flags.cache_dir.clone().or_else(|| env(ENV_CACHE).map(PathBuf::from)) {
            cfg.cache_dir = dir;
        }
        if let Some(n) = flags.max_boxes {
            if n == 0 {
                return Err(ConfigError::ZeroMaxBoxes);
            }
            cfg.max_boxes = n;
        }
        if let Some(o) = flags.output {
            cfg.output = o;
        }
        Ok(cfg)
    }

    pub fn from_process_env(flags: &Overrides) -> Result<RunConfig, ConfigError> {
        RunConfig::resolve(flags, |k| std::env::var(k).ok())
    }
}
