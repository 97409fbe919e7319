//! Run configuration: JSON file (from `--config` or `CONECALC_CONFIG`)
//! with command-line overrides on top.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use conecalc::{Lattice, Tolerances};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const CONFIG_ENV: &str = "CONECALC_CONFIG";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub dims: [usize; 4],
    /// Momentum step per axis.
    pub spacing: [f64; 4],
    #[serde(rename = "M")]
    pub mass: f64,
    pub tolerances: Tolerances,
    /// Pole regularization width in units of `M²`.
    pub epsilon: f64,
    pub seed: u64,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            dims: [16; 4],
            spacing: [0.25; 4],
            mass: 1.0,
            tolerances: Tolerances::default(),
            epsilon: 1e-6,
            seed: 0,
            format: Format::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if let Some(n) = self.dims.iter().find(|&&n| n < 2 || n % 2 != 0) {
            return Err(CliError::Input(format!("lattice sizes must be even and >= 2, got {n}")));
        }
        if !self.spacing.iter().all(|s| s.is_finite() && *s > 0.0) {
            return Err(CliError::Input("spacings must be positive and finite".into()));
        }
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.mass) {
            return Err(CliError::Input(format!("M must be positive, got {}", self.mass)));
        }
        if !positive(self.tolerances.identity) || !positive(self.tolerances.fft) {
            return Err(CliError::Input("tolerances must be positive".into()));
        }
        if !positive(self.epsilon) {
            return Err(CliError::Input(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        Ok(())
    }

    pub fn lattice(&self) -> Result<Lattice, CliError> {
        Ok(Lattice::new(self.dims, self.spacing, self.mass)?)
    }

    fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("invalid config {}: {e}", path.display())))
    }
}

/// Options shared by every subcommand.
#[derive(Args, Debug, Default)]
pub struct GlobalArgs {
    /// JSON config file; defaults to $CONECALC_CONFIG when set.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Lattice sizes, e.g. 16,16,16,16.
    #[arg(long, global = true, value_delimiter = ',', num_args = 1)]
    pub dims: Option<Vec<usize>>,
    /// Momentum step per axis (one value or four).
    #[arg(long, global = true, value_delimiter = ',', num_args = 1)]
    pub spacing: Option<Vec<f64>>,
    /// Cone scale M.
    #[arg(long = "M", global = true, allow_negative_numbers = true)]
    pub mass: Option<f64>,
    #[arg(long, global = true)]
    pub tol_identity: Option<f64>,
    #[arg(long, global = true)]
    pub tol_fft: Option<f64>,
    /// Pole regularization width in units of M².
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

fn four<T: Copy>(name: &str, v: &[T]) -> Result<[T; 4], CliError> {
    match v.len() {
        1 => Ok([v[0]; 4]),
        4 => Ok([v[0], v[1], v[2], v[3]]),
        n => Err(CliError::Input(format!("--{name} takes 1 or 4 values, got {n}"))),
    }
}

impl GlobalArgs {
    /// Loads the config file (if any) and applies flag overrides.
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let path = self.config.clone().or_else(|| {
            std::env::var_os(CONFIG_ENV)
                .filter(|v| !v.is_empty())
                .map(PathBuf::from)
        });
        let mut cfg = match path {
            Some(p) => RunConfig::from_file(&p)?,
            None => RunConfig::default(),
        };
        if let Some(d) = &self.dims {
            cfg.dims = four("dims", d)?;
        }
        if let Some(s) = &self.spacing {
            cfg.spacing = four("spacing", s)?;
        }
        if let Some(m) = self.mass {
            cfg.mass = m;
        }
        if let Some(t) = self.tol_identity {
            cfg.tolerances.identity = t;
        }
        if let Some(t) = self.tol_fft {
            cfg.tolerances.fft = t;
        }
        if let Some(e) = self.epsilon {
            cfg.epsilon = e;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(f) = self.format {
            cfg.format = f;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        std::fs::write(&path, r#"{"dims":[4,4,4,4],"M":2.0,"seed":9}"#).unwrap();
        let args = GlobalArgs {
            config: Some(path),
            mass: Some(3.0),
            ..Default::default()
        };
        let cfg = args.resolve().unwrap();
        assert_eq!(cfg.dims, [4; 4]);
        assert_eq!(cfg.mass, 3.0);
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.spacing, [0.25; 4]);
    }

    #[test]
    fn rejects_odd_sizes_and_bad_values() {
        let odd = RunConfig {
            dims: [16, 16, 15, 16],
            ..Default::default()
        };
        assert!(odd.validate().is_err());
        let zero_tol = RunConfig {
            tolerances: Tolerances {
                identity: 0.0,
                fft: 1e-8,
            },
            ..Default::default()
        };
        assert!(zero_tol.validate().is_err());
        assert!(RunConfig::default().validate().is_ok());
    }

    #[test]
    fn unknown_config_keys_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        std::fs::write(&path, r#"{"dimz":[4,4,4,4]}"#).unwrap();
        let args = GlobalArgs {
            config: Some(path),
            ..Default::default()
        };
        assert!(matches!(args.resolve(), Err(CliError::Input(_))));
    }
}
