//! Run configuration: defaults, then a `key=value` file named by
//! `BINACT_CONFIG`, then command-line flags.

use std::fs;
use std::path::PathBuf;

use binact::{Bounds, Error, Result};
use serde_json::Value;

pub const CONFIG_ENV: &str = "BINACT_CONFIG";

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub bounds: Bounds,
    /// Worker threads; 0 lets rayon decide.
    pub workers: usize,
    pub seed: u64,
    pub trials: usize,
    pub timings: bool,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let suite = binact::verify::SuiteConfig::default();
        RunConfig {
            bounds: Bounds::default(),
            workers: 0,
            seed: suite.seed,
            trials: suite.trials,
            timings: true,
            format: Format::Json,
            output: None,
        }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad value {value:?} for {key}")))
}

impl RunConfig {
    /// Applies one setting. Bound names are the field names of [`Bounds`].
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim();
        match key {
            "workers" => self.workers = parse_num(key, value)?,
            "seed" => self.seed = parse_num(key, value)?,
            "trials" => self.trials = parse_num(key, value)?,
            "timings" => self.timings = parse_num(key, value)?,
            "format" => {
                self.format = match value.trim() {
                    "json" => Format::Json,
                    "text" => Format::Text,
                    other => {
                        return Err(Error::Parse(format!(
                            "format must be json or text, got {other:?}"
                        )))
                    }
                }
            }
            "output" => self.output = Some(PathBuf::from(value.trim())),
            _ => self.set_bound(key, value)?,
        }
        Ok(())
    }

    fn set_bound(&mut self, key: &str, value: &str) -> Result<()> {
        let mut map = match serde_json::to_value(&self.bounds) {
            Ok(Value::Object(m)) => m,
            _ => unreachable!("bounds serialize to an object"),
        };
        if !map.contains_key(key) {
            return Err(Error::Parse(format!("unknown setting {key:?}")));
        }
        let n: u64 = parse_num(key, value)?;
        if n == 0 {
            return Err(Error::Parse(format!("bound {key} must be positive")));
        }
        map.insert(key.to_string(), Value::from(n));
        self.bounds = serde_json::from_value(Value::Object(map))
            .map_err(|e| Error::Parse(format!("bound {key}: {e}")))?;
        Ok(())
    }

    /// Reads `key=value` lines; blank lines and `#` comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::Parse(format!("config line {}: expected key=value", n + 1))
            })?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn from_env() -> Result<RunConfig> {
        let mut config = RunConfig::default();
        if let Some(path) = std::env::var_os(CONFIG_ENV) {
            let text = fs::read_to_string(&path).map_err(|e| {
                Error::Parse(format!(
                    "cannot read config {}: {e}",
                    PathBuf::from(&path).display()
                ))
            })?;
            config.apply_text(&text)?;
        }
        Ok(config)
    }
}
