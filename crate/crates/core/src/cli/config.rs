use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular_j::{JSeries, DEFAULT_ORDER};
use crate::quadrature::QuadOptions;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    /// Aligned human-readable output.
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub depth: u32,
    /// Absolute tolerance of each cycle integral.
    pub tol: f64,
    pub series_order: usize,
    /// `None` lets each command choose its natural format.
    pub format: Option<Format>,
    pub cache: Option<PathBuf>,
    pub jobs: Option<usize>,
    /// Coefficient file for the `j` series, created on first use.
    pub series_file: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            depth: 9,
            tol: QuadOptions::default().abs_tol,
            series_order: DEFAULT_ORDER,
            format: None,
            cache: None,
            jobs: None,
            series_file: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.depth < 1 {
            return Err(Error::Config("depth must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol <= 1e-4) {
            return Err(Error::Config(format!("tolerance must lie in (0, 1e-4], got {}", self.tol)));
        }
        if self.series_order < 20 {
            return Err(Error::Config(format!(
                "series order must be at least 20, got {}",
                self.series_order
            )));
        }
        if self.jobs == Some(0) {
            return Err(Error::Config("jobs must be positive".into()));
        }
        Ok(())
    }

    pub fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    pub fn series(&self) -> Result<JSeries> {
        match &self.series_file {
            Some(path) => JSeries::load_or_compute(path, self.series_order),
            None => Ok(JSeries::new(self.series_order)),
        }
    }
}
