//! Experiment orchestration: seedable parallel Monte Carlo, exact series
//! tables, cross-checked enumeration, and machine-readable reports.
//!
//! Reports are deterministic functions of (seed, parameters): every sample
//! index owns its own RNG stream and aggregation uses exact integer
//! accumulators merged associatively, so thread count never changes output.

pub mod commands;
pub mod stats;
pub mod tolerances;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;

use crate::mapgf::GfError;
use crate::mapstruct::MapError;
use crate::sampler::SamplerError;
use crate::subcrit::{MapClass, SubcritError};
use stats::{Histogram, StatSummary};

pub use commands::{
    cmd_constants, cmd_enumerate, cmd_gw, cmd_sample, cmd_series, cmd_singular,
    ConstantsReport, SeriesKind,
};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Sampler(#[from] SamplerError),
    #[error(transparent)]
    Subcrit(#[from] SubcritError),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("cross-check failed: {0}")]
    OracleFailure(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type HarnessResult<T> = Result<T, HarnessError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Parameters of a sampling or simulation run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub threads: usize,
    pub class: MapClass,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    /// Histogram bin-count override (default: Freedman-Diaconis width).
    pub bins: Option<usize>,
}

impl RunConfig {
    pub fn validate(&self) -> HarnessResult<()> {
        if self.n < 1 {
            return Err(HarnessError::Config("n must be at least 1".into()));
        }
        if self.samples < 1 {
            return Err(HarnessError::Config("samples must be at least 1".into()));
        }
        Ok(())
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: 1000,
            samples: 100,
            seed: 0,
            threads: 0, // 0 = rayon default
            class: MapClass::General,
            format: OutputFormat::Json,
            out: None,
            bins: None,
        }
    }
}

/// Aggregated Monte-Carlo estimates with provenance.
#[derive(Debug, Clone, Serialize)]
pub struct StatsReport {
    pub schema: u32,
    pub command: String,
    pub class: String,
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub stats: BTreeMap<String, StatSummary>,
    pub skewness: Option<f64>,
    pub kurtosis_excess: Option<f64>,
    pub histogram: Option<Histogram>,
    pub wall_time_s: f64,
}

impl StatsReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn write_to(&self, path: &PathBuf) -> HarnessResult<()> {
        let mut f = std::fs::File::create(path)?;
        f.write_all(self.to_json().as_bytes())?;
        Ok(())
    }
}

/// Run a closure on a rayon pool with the configured thread count.
pub(crate) fn with_pool<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> T {
    if threads == 0 {
        return job();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
        .install(job)
}
