//! Run configuration. Every field has a default, so an empty JSON object (or no file
//! at all) reproduces the acceptance runs.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::sampled::Grid;
use crate::summability::{LimitMethod, Schedule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SuiteName {
    Kernels,
    Summability,
    Inversion,
    Hardy,
    Growth,
    All,
}

impl SuiteName {
    pub fn label(&self) -> &'static str {
        match self {
            SuiteName::Kernels => "kernels",
            SuiteName::Summability => "summability",
            SuiteName::Inversion => "inversion",
            SuiteName::Hardy => "hardy",
            SuiteName::Growth => "growth",
            SuiteName::All => "all",
        }
    }

    /// The concrete suites this name runs, in report order.
    pub fn expand(&self) -> Vec<SuiteName> {
        use SuiteName::*;
        match self {
            All => vec![Kernels, Summability, Inversion, Hardy, Growth],
            one => vec![*one],
        }
    }
}

/// A one-dimensional lattice `[-half_width, half_width)` with `points` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub half_width: f64,
    pub points: usize,
}

impl GridConfig {
    pub const fn new(half_width: f64, points: usize) -> Self {
        GridConfig { half_width, points }
    }

    pub fn build(&self) -> Result<Grid> {
        Grid::new(1, self.half_width, self.points)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KernelsConfig {
    pub normalization: GridConfig,
    pub transform: GridConfig,
    pub semigroup: GridConfig,
}

impl Default for KernelsConfig {
    fn default() -> Self {
        KernelsConfig {
            normalization: GridConfig::new(100.0, 1 << 15),
            transform: GridConfig::new(40.0, 1 << 14),
            semigroup: GridConfig::new(200.0, 1 << 16),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScheduleConfig {
    pub start: f64,
    pub ratio: f64,
    pub count: usize,
    pub convergence_tol: f64,
    pub method: LimitMethod,
}

impl Default for ScheduleConfig {
    fn default() -> Self {
        ScheduleConfig {
            start: 0.1,
            ratio: 0.5,
            count: 5,
            convergence_tol: 1e-3,
            method: LimitMethod::RichardsonLog,
        }
    }
}

impl ScheduleConfig {
    pub fn build(&self) -> Result<Schedule> {
        Schedule::geometric(self.start, self.ratio, self.count, self.convergence_tol, self.method)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SummabilityConfig {
    pub grid: GridConfig,
    pub schedule: ScheduleConfig,
}

impl Default for SummabilityConfig {
    fn default() -> Self {
        SummabilityConfig {
            grid: GridConfig::new(512.0, 1 << 15),
            schedule: ScheduleConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InversionConfig {
    pub grid: GridConfig,
}

impl Default for InversionConfig {
    fn default() -> Self {
        InversionConfig {
            grid: GridConfig::new(16.0, 10240),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HardyConfig {
    /// Space lattice for the sampled witnesses and the Cauchy integrals.
    pub space: GridConfig,
    /// Frequency lattice for the closed-form one-sided spectra.
    pub frequency: GridConfig,
}

impl Default for HardyConfig {
    fn default() -> Self {
        HardyConfig {
            space: GridConfig::new(256.0, 1 << 14),
            frequency: GridConfig::new(16.0, 4096),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GrowthConfig {
    pub frequency: GridConfig,
    pub x_max: f64,
    pub y_max: f64,
    pub lattice_step: f64,
    pub bound_half_width: f64,
    pub bound_step: f64,
    pub tol: f64,
}

impl Default for GrowthConfig {
    fn default() -> Self {
        GrowthConfig {
            frequency: GridConfig::new(4.0, 2048),
            x_max: 5.0,
            y_max: 3.0,
            lattice_step: 0.25,
            bound_half_width: 50.0,
            bound_step: 1e-2,
            tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub suite: SuiteName,
    pub output_dir: PathBuf,
    pub kernels: KernelsConfig,
    pub summability: SummabilityConfig,
    pub inversion: InversionConfig,
    pub hardy: HardyConfig,
    pub growth: GrowthConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            suite: SuiteName::All,
            output_dir: PathBuf::from("harmonic-out"),
            kernels: KernelsConfig::default(),
            summability: SummabilityConfig::default(),
            inversion: InversionConfig::default(),
            hardy: HardyConfig::default(),
            growth: GrowthConfig::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Builds every grid and schedule once, surfacing the first invalid parameter.
    pub fn validate(&self) -> Result<()> {
        for g in [
            self.kernels.normalization,
            self.kernels.transform,
            self.kernels.semigroup,
            self.summability.grid,
            self.inversion.grid,
            self.hardy.space,
            self.hardy.frequency,
            self.growth.frequency,
        ] {
            g.build()?;
        }
        self.summability.schedule.build()?;
        let g = &self.growth;
        for (name, v) in [
            ("x_max", g.x_max),
            ("y_max", g.y_max),
            ("lattice_step", g.lattice_step),
            ("bound_half_width", g.bound_half_width),
            ("bound_step", g.bound_step),
            ("tol", g.tol),
        ] {
            crate::error::positive(name, v)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_object_is_the_default() {
        assert_eq!(ExperimentConfig::from_json("{}").unwrap(), ExperimentConfig::default());
        ExperimentConfig::default().validate().unwrap();
    }

    #[test]
    fn partial_override() {
        let c = ExperimentConfig::from_json(
            r#"{"suite": "growth", "growth": {"tol": 1e-5}, "inversion": {"grid": {"half_width": 8, "points": 2048}}}"#,
        )
        .unwrap();
        assert_eq!(c.suite, SuiteName::Growth);
        assert_eq!(c.growth.tol, 1e-5);
        assert_eq!(c.growth.x_max, 5.0);
        assert_eq!(c.inversion.grid.points, 2048);
    }

    #[test]
    fn invalid_configs() {
        assert!(ExperimentConfig::from_json(r#"{"suite": "everything"}"#).is_err());
        assert!(ExperimentConfig::from_json(r#"{"colour": 1}"#).is_err());
        let c = ExperimentConfig::from_json(r#"{"hardy": {"space": {"half_width": 4, "points": 7}}}"#)
            .unwrap();
        assert!(c.validate().is_err());
        let c = ExperimentConfig::from_json(r#"{"summability": {"schedule": {"count": 3}}}"#).unwrap();
        assert!(c.validate().is_err());
    }
}
