use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{at_value, SweepConfig};
use crate::error::Result;
use crate::hamiltonian::build_dense;
use crate::spectral::{darkest_mode, intensity_profile, ModeMetrics, SpectralDecomposition};

/// Placement of the swept copies relative to the array they displace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// Copy separation below the inner-array extent: copies interpenetrate.
    Overlapping,
    /// Separation equal to the extent: the end atoms coincide.
    Touching,
    /// Separation above the extent.
    Separated,
}

/// Two candidate regime boundaries for the swept spacing: the smallest
/// nonzero gap of the inner array and its full extent. They coincide for a
/// dimer and differ for longer inner arrays.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeBoundaries {
    pub inner_spacing: Option<f64>,
    pub inner_extent: f64,
}

impl RegimeBoundaries {
    pub fn classify(&self, separation: f64) -> Regime {
        let tol = 1e-12 * self.inner_extent.max(1.0);
        if (separation - self.inner_extent).abs() <= tol {
            Regime::Touching
        } else if separation < self.inner_extent {
            Regime::Overlapping
        } else {
            Regime::Separated
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub value: f64,
    /// Darkest first.
    pub eigenvalues: Vec<C64>,
    pub darkest_index: usize,
    pub darkest: ModeMetrics,
    pub regime: Option<Regime>,
    /// Intensity profile of every mode, present at flagged points only.
    pub profiles: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub points: Vec<SweepPoint>,
    pub boundaries: Option<RegimeBoundaries>,
}

impl SweepResult {
    pub fn values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.value).collect()
    }

    pub fn darkest_decays(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.darkest.decay).collect()
    }
}

pub(crate) fn decompose_at(cfg: &SweepConfig, value: f64) -> Result<SpectralDecomposition> {
    at_value(value, (|| {
        let arr = cfg.geometry_at(value)?;
        build_dense(arr.composite(), cfg.params)?.eigendecompose()
    })())
}

pub(crate) fn darkest_decay_at(cfg: &SweepConfig, value: f64) -> Result<f64> {
    let dec = decompose_at(cfg, value)?;
    at_value(value, darkest_mode(&dec).map(|(_, m)| m.decay))
}

fn flagged_indices(cfg: &SweepConfig) -> Vec<usize> {
    let g = cfg.grid;
    let step = (g.stop - g.start) / (g.points - 1) as f64;
    let mut out: Vec<usize> = cfg
        .profile_at
        .iter()
        .map(|&v| (((v - g.start) / step).round().max(0.0) as usize).min(g.points - 1))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Rebuilds the geometry, Hamiltonian and spectrum at every grid value.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    cfg.validate()?;
    let boundaries = cfg.inner_array()?.map(|inner| {
        let x = inner.composite().positions();
        let inner_spacing = x
            .windows(2)
            .map(|w| w[1] - w[0])
            .filter(|&d| d > 0.0)
            .min_by(f64::total_cmp);
        RegimeBoundaries {
            inner_spacing,
            inner_extent: inner.composite().extent(),
        }
    });
    let flagged = flagged_indices(cfg);

    let points = (0..cfg.grid.points)
        .into_par_iter()
        .map(|i| {
            let value = cfg.grid.value(i);
            let dec = decompose_at(cfg, value)?;
            let (darkest_index, darkest) = at_value(value, darkest_mode(&dec))?;
            let profiles = if flagged.binary_search(&i).is_ok() {
                Some(at_value(value, (0..dec.len()).map(|xi| intensity_profile(&dec, xi)).collect())?)
            } else {
                None
            };
            Ok(SweepPoint {
                value,
                eigenvalues: dec.eigenvalues().to_vec(),
                darkest_index,
                darkest,
                regime: boundaries.map(|b| b.classify(value)),
                profiles,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(SweepResult { points, boundaries })
}
