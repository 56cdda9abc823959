//! Merging of command-line flags with an optional JSON config file.

use serde::Deserialize;
use spindle_core::{Error, Result};
use std::path::{Path, PathBuf};

/// Keys accepted in a `--config` file. Names match the long flags.
#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct FileConfig {
    pub workers: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub body: Option<String>,
    pub r: Option<f64>,
    pub model: Option<String>,
    pub theta: Option<f64>,
    pub t: Option<f64>,
    pub input: Option<PathBuf>,
    pub oracle: Option<bool>,
    pub n_values: Option<Vec<usize>>,
    pub reps: Option<usize>,
    pub n_max: Option<usize>,
    pub field: Option<Vec<String>>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("config file {}: {e}", path.display())))
    }
}

/// Flag value if given, else the file value, else an error naming the flag.
pub fn required<T>(flag: Option<T>, file: Option<T>, name: &str) -> Result<T> {
    flag.or(file)
        .ok_or_else(|| Error::Config(format!("missing --{name} (flag or config key)")))
}

pub const WORKERS_ENV: &str = "SPINDLE_WORKERS";

/// Flag, then config file, then `SPINDLE_WORKERS`, then 1.
pub fn workers(flag: Option<usize>, file: Option<usize>) -> Result<usize> {
    if let Some(w) = flag.or(file) {
        return Ok(w);
    }
    match std::env::var(WORKERS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("{WORKERS_ENV} is not a positive integer: '{v}'"))),
        Err(_) => Ok(1),
    }
}
