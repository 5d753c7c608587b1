//! Run configuration.
//!
//! JSON file, every key optional:
//!
//! ```json
//! {
//!   "params": {"gamma": 2.0, "g": 1.0, "k": 1.0, "h": 1.0},
//!   "solver": {"newton_tol": 1e-11, "max_newton_iters": 25, "ds": 1e-3,
//!              "ds_min": 1e-5, "ds_max": 5e-2, "n_modes": 128},
//!   "mode_n": 1,
//!   "output_dir": "out",
//!   "grid": {"nx": null, "ny": 64},
//!   "trace": {"n_points": 40, "max_amplitude": 0.02},
//!   "sweep": {"h_min": 0.05, "h_max": 5.0, "count": 100, "branch_points": 0}
//! }
//! ```
//!
//! Precedence: built-in defaults, then the file, then command-line flags.
//! Unknown keys are rejected.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::continuation::SolverConfig;
use crate::error::{Error, Result};
use crate::field::GridSpec;
use crate::wave::PhysicalParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridConfig {
    /// Points per period in `x`; `None` uses the `2N` collocation points.
    pub nx: Option<usize>,
    pub ny: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self { nx: None, ny: 64 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TraceConfig {
    pub n_points: usize,
    /// Stop once the amplitude reaches this value.
    pub max_amplitude: Option<f64>,
}

impl Default for TraceConfig {
    fn default() -> Self {
        Self { n_points: 40, max_amplitude: Some(0.02) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepConfig {
    /// Excluded lower end of the depth range.
    pub h_min: f64,
    pub h_max: f64,
    pub count: usize,
    pub branch_points: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self { h_min: 0.05, h_max: 5.0, count: 100, branch_points: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub params: PhysicalParams,
    pub solver: SolverConfig,
    pub mode_n: usize,
    pub output_dir: PathBuf,
    pub grid: GridConfig,
    pub trace: TraceConfig,
    pub sweep: SweepConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: PhysicalParams::default(),
            solver: SolverConfig::default(),
            mode_n: 1,
            output_dir: PathBuf::from("out"),
            grid: GridConfig::default(),
            trace: TraceConfig::default(),
            sweep: SweepConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate().map_err(|e| Error::Config(e.to_string()))?;
        self.solver.validate()?;
        if self.mode_n == 0 || self.mode_n >= self.solver.n_modes {
            return Err(Error::Config(format!("mode_n must lie in 1..{}, got {}", self.solver.n_modes, self.mode_n)));
        }
        if let Some(nx) = self.grid.nx {
            if nx < 2 {
                return Err(Error::Config(format!("grid.nx must be at least 2, got {nx}")));
            }
        }
        if self.grid.ny < 5 {
            return Err(Error::Config(format!("grid.ny must be at least 5, got {}", self.grid.ny)));
        }
        if self.trace.max_amplitude.is_some_and(|s| !(s > 0.0)) {
            return Err(Error::Config("trace.max_amplitude must be positive".into()));
        }
        let s = &self.sweep;
        if !(s.h_min >= 0.0 && s.h_max > s.h_min && s.count >= 2) {
            return Err(Error::Config(format!("bad sweep range ({}, {}] x {}", s.h_min, s.h_max, s.count)));
        }
        Ok(())
    }

    pub fn grid_spec(&self) -> GridSpec {
        GridSpec { nx: self.grid.nx.unwrap_or(2 * self.solver.n_modes), ny: self.grid.ny }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_file_keeps_defaults() {
        let cfg = RunConfig::from_json(r#"{"params": {"gamma": 2.0}, "solver": {"n_modes": 32}}"#).unwrap();
        assert_eq!(cfg.params.gamma, 2.0);
        assert_eq!(cfg.params.g, 1.0);
        assert_eq!(cfg.solver.n_modes, 32);
        assert_eq!(cfg.solver.newton_tol, 1e-11);
        assert_eq!(cfg.grid_spec(), GridSpec { nx: 64, ny: 64 });
    }

    #[test]
    fn unknown_key_is_named() {
        let err = RunConfig::from_json(r#"{"params": {"gama": 2.0}}"#).unwrap_err();
        assert!(err.to_string().contains("gama"), "{err}");
        let err = RunConfig::from_json(r#"{"colour": 1}"#).unwrap_err();
        assert!(err.to_string().contains("colour"), "{err}");
    }

    #[test]
    fn invalid_values_are_rejected() {
        assert!(RunConfig::from_json(r#"{"params": {"h": -1.0}}"#).is_err());
        assert!(RunConfig::from_json(r#"{"solver": {"newton_tol": 1e-3}}"#).is_err());
        assert!(RunConfig::from_json(r#"{"mode_n": 0}"#).is_err());
    }
}
