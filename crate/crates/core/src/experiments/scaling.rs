use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::geometry::periodic_seed;
use crate::hamiltonian::{build_dense, PhysicalParams};
use crate::spectral::SpectralDecomposition;

/// Decays below this, in units of γ, are numerically zero and left out of
/// log-log fits.
pub const NUMERICAL_ZERO: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingStudy {
    pub spacing: f64,
    pub sizes: Vec<usize>,
    /// Darkest-mode decay per size, in units of γ.
    pub decays: Vec<f64>,
    /// Whether each point entered the fit.
    pub fitted: Vec<bool>,
    /// Slope of log(decay) against log(N).
    pub slope: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankScaling {
    pub spacing: f64,
    pub size: usize,
    pub ranks: Vec<usize>,
    pub decays: Vec<f64>,
    pub fitted: Vec<bool>,
    /// Slope of log(decay) against log(rank).
    pub slope: f64,
}

/// Ordinary least-squares slope of `y` on `x`.
pub fn least_squares_slope(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::invalid("slope fit needs paired samples"));
    }
    if x.len() < 2 {
        return Err(Error::invalid(format!("slope fit needs >= 2 points, got {}", x.len())));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::invalid("slope fit needs distinct abscissae"));
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    Ok(sxy / sxx)
}

fn log_fit(x: &[usize], decays: &[f64]) -> Result<(Vec<bool>, f64)> {
    let fitted: Vec<bool> = decays.iter().map(|&d| d >= NUMERICAL_ZERO).collect();
    let (lx, ly): (Vec<f64>, Vec<f64>) = x
        .iter()
        .zip(decays)
        .zip(&fitted)
        .filter(|(_, &keep)| keep)
        .map(|((&n, &d), _)| ((n as f64).ln(), d.ln()))
        .unzip();
    let slope = least_squares_slope(&lx, &ly)?;
    Ok((fitted, slope))
}

fn chain_spectrum(spacing: f64, n: usize) -> Result<SpectralDecomposition> {
    if n < 3 {
        return Err(Error::invalid(format!("scaling study needs N >= 3, got {n}")));
    }
    if !(spacing > 0.0 && spacing < TAU) {
        return Err(Error::invalid(format!("spacing {spacing} must lie in (0, 2π)")));
    }
    build_dense(&periodic_seed(n, spacing)?, PhysicalParams::default())?.eigendecompose()
}

/// Darkest decay of a plain periodic chain for each size in `sizes`, with
/// the fitted power-law exponent in N.
pub fn run_scaling_study(spacing: f64, sizes: &[usize]) -> Result<ScalingStudy> {
    let decays = sizes
        .iter()
        .map(|&n| Ok(chain_spectrum(spacing, n)?.mode_metrics(0)?.decay))
        .collect::<Result<Vec<f64>>>()?;
    let (fitted, slope) = log_fit(sizes, &decays)?;
    Ok(ScalingStudy {
        spacing,
        sizes: sizes.to_vec(),
        decays,
        fitted,
        slope,
    })
}

/// Decay of the ξ-th darkest mode (ξ counted from 1) of an N-atom chain,
/// with the fitted exponent in ξ.
pub fn mode_rank_scaling(spacing: f64, n: usize, ranks: &[usize]) -> Result<RankScaling> {
    let dec = chain_spectrum(spacing, n)?;
    let decays = ranks
        .iter()
        .map(|&r| {
            if r == 0 || r > n {
                return Err(Error::invalid(format!("mode rank {r} outside 1..={n}")));
            }
            Ok(dec.mode_metrics(r - 1)?.decay)
        })
        .collect::<Result<Vec<f64>>>()?;
    let (fitted, slope) = log_fit(ranks, &decays)?;
    Ok(RankScaling {
        spacing,
        size: n,
        ranks: ranks.to_vec(),
        decays,
        fitted,
        slope,
    })
}
