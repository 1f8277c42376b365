//! Spacing sweeps, disorder ensembles, resonance search, scaling studies and
//! block-structure validation.
//!
//! Grid points and disorder realizations are independent work items run on
//! the rayon pool; results are keyed by index and reduced in index order, so
//! output does not depend on scheduling.

mod disorder;
pub mod golden;
mod resonance;
mod scaling;
mod sweep;
mod validate;

pub use disorder::{run_disorder_ensemble, DisorderPoint, DisorderStats};
pub use resonance::{find_resonances, Resonance, ResonanceOptions, ResonanceReport};
pub use scaling::{least_squares_slope, mode_rank_scaling, run_scaling_study, RankScaling, ScalingStudy, NUMERICAL_ZERO};
pub use sweep::{run_sweep, Regime, RegimeBoundaries, SweepPoint, SweepResult};
pub use validate::{verify_block_equivalence, BlockEquivalenceReport};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{dimer_seed, nest, periodic_seed, NestedArray, PositionSet};
use crate::hamiltonian::PhysicalParams;

/// Seed position set in phase units, either generated or explicit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SeedSpec {
    Dimer { spacing: f64 },
    Periodic { count: usize, spacing: f64 },
    Explicit(PositionSet),
}

impl SeedSpec {
    pub fn build(&self) -> Result<PositionSet> {
        match self {
            SeedSpec::Dimer { spacing } => dimer_seed(*spacing),
            SeedSpec::Periodic { count, spacing } => periodic_seed(*count, *spacing),
            SeedSpec::Explicit(set) => Ok(set.clone()),
        }
    }

    /// Generator spacing; `None` for explicit sets.
    pub fn spacing(&self) -> Option<f64> {
        match self {
            SeedSpec::Dimer { spacing } | SeedSpec::Periodic { spacing, .. } => Some(*spacing),
            SeedSpec::Explicit(_) => None,
        }
    }

    pub fn with_spacing(&self, spacing: f64) -> Result<SeedSpec> {
        match self {
            SeedSpec::Dimer { .. } => Ok(SeedSpec::Dimer { spacing }),
            SeedSpec::Periodic { count, .. } => Ok(SeedSpec::Periodic { count: *count, spacing }),
            SeedSpec::Explicit(_) => Err(Error::invalid("an explicit seed has no spacing to sweep")),
        }
    }
}

/// Inclusive uniform grid of `points` values from `start` to `stop`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Grid {
    pub fn new(start: f64, stop: f64, points: usize) -> Result<Self> {
        let g = Grid { start, stop, points };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(Error::invalid("grid bounds must be finite"));
        }
        if self.start >= self.stop {
            return Err(Error::invalid(format!(
                "grid start {} must be below stop {}",
                self.start, self.stop
            )));
        }
        if self.points < 2 {
            return Err(Error::invalid("grid needs at least 2 points"));
        }
        Ok(())
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.points {
            self.stop
        } else {
            self.start + (self.stop - self.start) * (i as f64) / ((self.points - 1) as f64)
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.value(i)).collect()
    }
}

/// A nesting with one designated seed whose spacing is swept.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub seeds: Vec<SeedSpec>,
    /// Index into `seeds` of the swept seed.
    pub swept: usize,
    pub grid: Grid,
    pub params: PhysicalParams,
    /// Sweep values at which every mode's intensity profile is recorded
    /// (snapped to the nearest grid point).
    pub profile_at: Vec<f64>,
}

impl SweepConfig {
    pub fn new(seeds: Vec<SeedSpec>, swept: usize, grid: Grid, params: PhysicalParams) -> Result<Self> {
        let cfg = SweepConfig {
            seeds,
            swept,
            grid,
            params,
            profile_at: Vec::new(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        self.params.validate()?;
        if self.seeds.is_empty() {
            return Err(Error::invalid("sweep needs at least one seed"));
        }
        let swept = self
            .seeds
            .get(self.swept)
            .ok_or_else(|| Error::invalid(format!("swept seed index {} out of range", self.swept)))?;
        if swept.spacing().is_none() {
            return Err(Error::invalid("the swept seed must be a dimer or periodic generator"));
        }
        if self.grid.start < 0.0 {
            return Err(Error::invalid("swept spacing must stay >= 0"));
        }
        Ok(())
    }

    /// Nested array with the swept seed's spacing set to `value`.
    pub fn geometry_at(&self, value: f64) -> Result<NestedArray> {
        let seeds = self
            .seeds
            .iter()
            .enumerate()
            .map(|(i, s)| if i == self.swept { s.with_spacing(value)?.build() } else { s.build() })
            .collect::<Result<Vec<_>>>()?;
        nest(&seeds)
    }

    /// Array formed by the seeds nested inside the swept one, if any.
    pub(crate) fn inner_array(&self) -> Result<Option<NestedArray>> {
        if self.swept == 0 {
            return Ok(None);
        }
        let seeds = self.seeds[..self.swept].iter().map(SeedSpec::build).collect::<Result<Vec<_>>>()?;
        nest(&seeds).map(Some)
    }
}

pub(crate) fn at_value<T>(value: f64, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        e @ Error::AtGridPoint { .. } => e,
        e => Error::AtGridPoint {
            value,
            source: Box::new(e),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn grid_values_are_inclusive() {
        let g = Grid::new(0.0, 1.5 * PI, 1000).unwrap();
        let v = g.values();
        assert_eq!(v.len(), 1000);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[999], 1.5 * PI);
        assert!(Grid::new(1.0, 1.0, 10).is_err());
        assert!(Grid::new(2.0, 1.0, 10).is_err());
        assert!(Grid::new(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn sweep_config_validation() {
        let grid = Grid::new(0.0, 1.0, 3).unwrap();
        let p = PhysicalParams::default();
        let explicit = SeedSpec::Explicit(PositionSet::new(vec![0.0, 0.1]).unwrap());
        assert!(SweepConfig::new(vec![SeedSpec::Dimer { spacing: 0.2 }, explicit.clone()], 1, grid, p).is_err());
        assert!(SweepConfig::new(vec![SeedSpec::Dimer { spacing: 0.2 }], 1, grid, p).is_err());
        let cfg = SweepConfig::new(vec![explicit, SeedSpec::Dimer { spacing: 0.0 }], 1, grid, p).unwrap();
        let arr = cfg.geometry_at(0.5).unwrap();
        assert_eq!(arr.composite().positions(), &[0.0, 0.1, 0.5, 0.6]);
    }
}
