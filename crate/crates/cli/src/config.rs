//! Run configuration: an INI-style key/value file overridden by command-line flags.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use grolab_core::QuadratureSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Constants,
    Baseline,
    Profile,
    Pairing,
    Chain,
    Explore,
    VerifyAll,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Constants => "constants",
            Command::Baseline => "baseline",
            Command::Profile => "profile",
            Command::Pairing => "pairing",
            Command::Chain => "chain",
            Command::Explore => "explore",
            Command::VerifyAll => "verify-all",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub quadrature: QuadratureSpec,
    pub output_path: Option<PathBuf>,
    pub certified: bool,
    pub seed: u64,
    pub beta: f64,
    pub epsilon: f64,
    pub grid: usize,
    pub profile_in: Option<PathBuf>,
    pub profile_out: Option<PathBuf>,
    pub csv_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            quadrature: QuadratureSpec::default(),
            output_path: None,
            certified: false,
            seed: 20_240_601,
            beta: 8e-25,
            epsilon: 1e-7,
            grid: 4096,
            profile_in: None,
            profile_out: None,
            csv_path: None,
        }
    }

    /// Applies `key = value` lines. Blank lines, `#`/`;` comments and `[section]` headers are ignored.
    pub fn apply_ini(&mut self, text: &str) -> Result<()> {
        let mut q = self.quadrature;
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') || line.starts_with('[') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected key = value", n + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let ctx = || format!("line {}: bad value for {key}", n + 1);
            match key {
                "truncation" => q.truncation = parse(value).with_context(ctx)?,
                "rel_tol" => q.rel_tol = parse(value).with_context(ctx)?,
                "abs_tol" => q.abs_tol = parse(value).with_context(ctx)?,
                "max_subdivisions" => q.max_subdivisions = parse(value).with_context(ctx)?,
                "seed" => self.seed = parse(value).with_context(ctx)?,
                "certified" => self.certified = parse(value).with_context(ctx)?,
                "beta" => self.beta = parse(value).with_context(ctx)?,
                "epsilon" => self.epsilon = parse(value).with_context(ctx)?,
                "grid" => self.grid = parse(value).with_context(ctx)?,
                "out" | "output" => self.output_path = Some(PathBuf::from(value)),
                "profile_in" => self.profile_in = Some(PathBuf::from(value)),
                "profile_out" => self.profile_out = Some(PathBuf::from(value)),
                "csv" => self.csv_path = Some(PathBuf::from(value)),
                other => bail!("line {}: unknown key {other:?}", n + 1),
            }
        }
        self.quadrature = q;
        Ok(())
    }

    pub fn load_ini(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        self.apply_ini(&text).with_context(|| format!("in config {}", path.display()))
    }

    pub fn validate(&self) -> Result<()> {
        self.quadrature.validate().context("invalid quadrature settings")?;
        if !(self.beta.is_finite() && self.beta > 0.0) {
            bail!("beta must be positive, got {}", self.beta);
        }
        if !(self.epsilon > 0.0 && self.epsilon < 0.01) {
            bail!("epsilon must lie in (0, 0.01), got {}", self.epsilon);
        }
        if self.grid < 2 {
            bail!("grid must be at least 2, got {}", self.grid);
        }
        for path in [&self.output_path, &self.profile_out, &self.csv_path].into_iter().flatten() {
            ensure_writable(path)?;
        }
        if let Some(p) = &self.profile_in {
            if !p.is_file() {
                bail!("profile input {} does not exist", p.display());
            }
        }
        Ok(())
    }
}

fn parse<T: FromStr>(s: &str) -> Result<T>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    Ok(s.parse::<T>()?)
}

fn ensure_writable(path: &Path) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    if !dir.is_dir() {
        bail!("output directory {} does not exist", dir.display());
    }
    if path.is_dir() {
        bail!("output path {} is a directory", path.display());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ini_overrides_defaults() {
        let mut c = RunConfig::new(Command::Chain);
        c.apply_ini("# comment\n[run]\nseed = 7\nbeta=1e-10\ntruncation = 10\ncertified = true\n").unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.beta, 1e-10);
        assert_eq!(c.quadrature.truncation, 10.0);
        assert!(c.certified);
        c.validate().unwrap();
    }

    #[test]
    fn bad_ini_is_rejected() {
        let mut c = RunConfig::new(Command::Chain);
        assert!(c.apply_ini("seed 7").is_err());
        assert!(c.apply_ini("colour = red").is_err());
        assert!(c.apply_ini("seed = -1").is_err());
        c.apply_ini("truncation = 2").unwrap();
        assert!(c.validate().is_err());
    }

    #[test]
    fn unwritable_output_is_invalid() {
        let mut c = RunConfig::new(Command::Constants);
        c.output_path = Some(PathBuf::from("/nonexistent-dir/x.json"));
        assert!(c.validate().is_err());
    }
}
