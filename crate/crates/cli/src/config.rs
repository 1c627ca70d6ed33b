use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{CliError, CliResult};

/// Every key a config file or flag may set. Keys are case-sensitive (`M`, `N`
/// and `n` are distinct).
pub const KNOWN_KEYS: &[&str] = &[
    "model", "experiment", "method", "M", "N", "q", "gamma", "alpha", "n", "k", "samples", "seed", "out", "xi_min",
    "xi_max", "step", "threshold", "tolerance", "sizes", "threads", "inject_fault",
];

/// Flat `key = value` settings; later sources override earlier ones.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigMap {
    values: BTreeMap<String, String>,
}

impl ConfigMap {
    /// Parses `key = value` lines; blank lines and `#` comments are skipped,
    /// dashes in keys read as underscores.
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut out = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(CliError::Usage(format!("config line {}: expected key = value, got {raw:?}", lineno + 1)));
            };
            out.set(k.trim(), v.trim())?;
        }
        Ok(out)
    }

    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: &str) -> CliResult<()> {
        let key = key.replace('-', "_");
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!("unknown config key {key:?}")));
        }
        self.values.insert(key, value.to_string());
        Ok(())
    }

    pub fn merge(&mut self, other: &ConfigMap) {
        for (k, v) in &other.values {
            self.values.insert(k.clone(), v.clone());
        }
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }
}

/// Typed view of the merged settings for one command.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub map: ConfigMap,
    pub out: PathBuf,
}

fn parse_value<T: FromStr>(key: &str, raw: &str) -> CliResult<T> {
    raw.parse().map_err(|_| CliError::Usage(format!("cannot parse {key} = {raw:?}")))
}

impl ExperimentConfig {
    pub fn new(map: ConfigMap) -> Self {
        let out = PathBuf::from(map.raw("out").unwrap_or("growthlab-out"));
        Self { map, out }
    }

    pub fn get<T: FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        self.map.raw(key).map(|raw| parse_value(key, raw)).transpose()
    }

    pub fn require<T: FromStr>(&self, key: &str) -> CliResult<T> {
        self.get(key)?.ok_or_else(|| CliError::Usage(format!("missing required setting {key}")))
    }

    pub fn or<T: FromStr>(&self, key: &str, default: T) -> CliResult<T> {
        Ok(self.get(key)?.unwrap_or(default))
    }

    /// Seeds are never drawn from the clock.
    pub fn seed(&self) -> CliResult<u64> {
        self.require("seed")
    }

    pub fn samples(&self) -> CliResult<usize> {
        let s: usize = self.require("samples")?;
        if s == 0 {
            return Err(CliError::Usage("samples must be positive".into()));
        }
        Ok(s)
    }

    /// Comma-separated list, e.g. `sizes = 64,128,256`.
    pub fn list<T: FromStr>(&self, key: &str) -> CliResult<Option<Vec<T>>> {
        self.map
            .raw(key)
            .map(|raw| raw.split(',').map(|p| parse_value(key, p.trim())).collect())
            .transpose()
    }

    pub fn output_path(&self, name: &str) -> CliResult<PathBuf> {
        std::fs::create_dir_all(&self.out)?;
        Ok(self.out.join(name))
    }
}
