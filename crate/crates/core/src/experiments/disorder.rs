use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{at_value, SweepConfig};
use crate::error::{Error, Result};
use crate::geometry::{apply_disorder, DisorderSpec};
use crate::hamiltonian::build_dense;
use crate::spectral::darkest_mode;

/// Ensemble statistics of the darkest-mode decay at one grid value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DisorderPoint {
    pub value: f64,
    pub mean: f64,
    /// Sample standard deviation over `√M`; NaN for a single realization.
    pub stderr: f64,
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisorderStats {
    pub spec: DisorderSpec,
    pub points: Vec<DisorderPoint>,
}

impl DisorderStats {
    pub fn means(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.mean).collect()
    }
}

fn summarize(value: f64, samples: &[f64]) -> DisorderPoint {
    let m = samples.len() as f64;
    let min = samples.iter().copied().fold(f64::INFINITY, f64::min);
    let max = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    // identical samples (zero disorder) reproduce the clean value exactly
    let mean = if min == max { min } else { samples.iter().sum::<f64>() / m };
    let stderr = if samples.len() < 2 {
        f64::NAN
    } else {
        let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0);
        (var / m).sqrt()
    };
    DisorderPoint { value, mean, stderr, min, max }
}

/// Darkest-mode decay averaged over realizations `0..M` at every grid value.
///
/// Grid point `g` draws from the substream `spec.with_substream(g)`, so
/// realizations are independent across grid points and reproducible.
pub fn run_disorder_ensemble(cfg: &SweepConfig, spec: &DisorderSpec) -> Result<DisorderStats> {
    cfg.validate()?;
    let m = spec.samples();
    if m == 0 {
        return Err(Error::invalid("disorder ensemble needs M >= 1"));
    }
    let geometries = (0..cfg.grid.points)
        .map(|g| {
            let value = cfg.grid.value(g);
            at_value(value, cfg.geometry_at(value)).map(|arr| arr.composite().clone())
        })
        .collect::<Result<Vec<_>>>()?;

    let decays = (0..cfg.grid.points * m)
        .into_par_iter()
        .map(|task| {
            let (g, r) = (task / m, task % m);
            let value = cfg.grid.value(g);
            at_value(value, (|| {
                let sub = spec.with_substream(g as u64);
                let x = apply_disorder(&geometries[g], &sub, r)?;
                let dec = build_dense(&x, cfg.params)?.eigendecompose()?;
                Ok(darkest_mode(&dec)?.1.decay)
            })())
        })
        .collect::<Result<Vec<f64>>>()?;

    let points = decays
        .chunks(m)
        .enumerate()
        .map(|(g, samples)| summarize(cfg.grid.value(g), samples))
        .collect();
    Ok(DisorderStats { spec: *spec, points })
}
