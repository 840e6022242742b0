//! Run parameters, read from a flat `key = value` file and overridden by flags.

use std::fmt::Write as _;
use std::path::Path;

use lagmono_core::symgeo::Family;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub b: f64,
    pub epsilon: f64,
    pub fd_step: f64,
    pub loop_samples: usize,
    pub grid: usize,
    pub seed: u64,
    pub tol_sym: f64,
    pub tol_flow: f64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            b: 1.0,
            epsilon: 1e-2,
            fd_step: 1e-4,
            loop_samples: 512,
            grid: 10,
            seed: 0,
            tol_sym: 1e-6,
            tol_flow: 1e-7,
        }
    }
}

pub const KEYS: [&str; 8] = ["b", "epsilon", "fd_step", "loop_samples", "grid", "seed", "tol_sym", "tol_flow"];

impl Config {
    /// Parses `key = value` lines. Blank lines and `#` comments are skipped;
    /// unknown or repeated keys are errors.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = Config::default();
        let mut seen = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key = value", i + 1)))?;
            let key = key.trim();
            if seen.contains(&key.to_string()) {
                return Err(CliError::Config(format!("line {}: duplicate key '{key}'", i + 1)));
            }
            cfg.set(key, value.trim()).map_err(|e| CliError::Config(format!("line {}: {e}", i + 1)))?;
            seen.push(key.to_string());
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Loads a `key = value` file, or the echoed config of a JSON report.
    /// A report with several families needs `family` to pick one.
    pub fn load(path: &Path, family: Option<Family>) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        if !text.trim_start().starts_with('{') {
            return Self::parse(&text);
        }
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let cfg_value = match value.get("config").and_then(|c| c.as_object()) {
            Some(map) => {
                let entry = match (family, map.len()) {
                    (Some(f), _) => map.get(f.name()),
                    (None, 1) => map.values().next(),
                    (None, _) => None,
                };
                entry
                    .cloned()
                    .ok_or_else(|| CliError::Config(format!("{}: no unique config entry", path.display())))?
            }
            None => value,
        };
        let cfg: Config =
            serde_json::from_value(cfg_value).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
            value.parse().map_err(|_| CliError::Config(format!("invalid value '{value}' for {key}")))
        }
        match key {
            "b" => self.b = num(key, value)?,
            "epsilon" => self.epsilon = num(key, value)?,
            "fd_step" => self.fd_step = num(key, value)?,
            "loop_samples" => self.loop_samples = num(key, value)?,
            "grid" => self.grid = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "tol_sym" => self.tol_sym = num(key, value)?,
            "tol_flow" => self.tol_flow = num(key, value)?,
            _ => return Err(CliError::Config(format!("unknown key '{key}'"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let reals = [
            ("b", self.b),
            ("epsilon", self.epsilon),
            ("fd_step", self.fd_step),
            ("tol_sym", self.tol_sym),
            ("tol_flow", self.tol_flow),
        ];
        for (key, v) in reals {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::Config(format!("{key} must be positive, got {v}")));
            }
        }
        if self.loop_samples < 64 || !self.loop_samples.is_power_of_two() {
            return Err(CliError::Config(format!(
                "loop_samples must be a power of two >= 64, got {}",
                self.loop_samples
            )));
        }
        if self.grid < 2 {
            return Err(CliError::Config(format!("grid must be at least 2, got {}", self.grid)));
        }
        Ok(())
    }

    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "b = {}", self.b);
        let _ = writeln!(out, "epsilon = {}", self.epsilon);
        let _ = writeln!(out, "fd_step = {}", self.fd_step);
        let _ = writeln!(out, "loop_samples = {}", self.loop_samples);
        let _ = writeln!(out, "grid = {}", self.grid);
        let _ = writeln!(out, "seed = {}", self.seed);
        let _ = writeln!(out, "tol_sym = {}", self.tol_sym);
        let _ = writeln!(out, "tol_flow = {}", self.tol_flow);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_with_comments() {
        let cfg = Config::parse("# run\nb = 2\n\nseed=7 # fixed\n").unwrap();
        assert_eq!(cfg, Config { b: 2.0, seed: 7, ..Config::default() });
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Config::parse("colour = red").is_err());
        assert!(Config::parse("b").is_err());
        assert!(Config::parse("b = 1\nb = 2").is_err());
        assert!(Config::parse("b = -1").is_err());
        assert!(Config::parse("loop_samples = 100").is_err());
        assert!(Config::parse("grid = x").is_err());
    }

    #[test]
    fn file_round_trip() {
        let cfg = Config { b: 0.5, epsilon: 1e-3, loop_samples: 1024, ..Config::default() };
        assert_eq!(Config::parse(&cfg.to_file_string()).unwrap(), cfg);
        assert_eq!(Config::parse(&Config::default().to_file_string()).unwrap(), Config::default());
        assert_eq!(KEYS.len(), Config::default().to_file_string().lines().count());
    }
}
