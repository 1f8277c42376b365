use serde::{Deserialize, Serialize};

use super::golden::{bisect_edge, golden_section};
use super::sweep::darkest_decay_at;
use super::{SweepConfig, SweepResult};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResonanceOptions {
    /// Target width of the refined bracket, in the swept spacing.
    pub refine_tol: f64,
    /// Decays below this (in units of γ) are indistinguishable from zero;
    /// runs of such grid points form a single minimum.
    pub noise_floor: f64,
    pub max_iter: usize,
}

impl Default for ResonanceOptions {
    fn default() -> Self {
        ResonanceOptions {
            refine_tol: 1e-6,
            noise_floor: 1e-13,
            max_iter: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Resonance {
    pub location: f64,
    /// Darkest-mode decay at `location`, in units of γ.
    pub decay: f64,
    /// Width of the final bracket, or of the zero-decay window when the
    /// minimum sits at the noise floor.
    pub width: f64,
    /// Grid values bracketing the minimum.
    pub bracket: (f64, f64),
    pub refined: bool,
    /// The minimum reaches the noise floor; `location` is the centre of the
    /// window where the decay is numerically zero.
    pub at_noise_floor: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResonanceReport {
    pub resonances: Vec<Resonance>,
    /// Differences between successive resonance locations.
    pub spacings: Vec<f64>,
}

/// Local minima of the clamped decay curve `max(decay, floor)`, as index
/// ranges `[first, last]` of a plateau whose neighbours are both higher.
fn plateau_minima(y: &[f64]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut i = 1;
    while i + 1 < y.len() {
        if y[i] < y[i - 1] {
            let mut j = i;
            while j + 1 < y.len() && y[j + 1] == y[i] {
                j += 1;
            }
            if j + 1 < y.len() && y[j + 1] > y[j] {
                out.push((i, j));
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }
    out
}

/// Finds interior minima of the darkest-mode decay along a sweep and refines
/// each by golden-section search between its neighbouring grid values.
///
/// When the refined minimum falls below the noise floor the zero-decay
/// window is located by bisection on both sides and its centre reported.
pub fn find_resonances(cfg: &SweepConfig, sweep: &SweepResult, opts: ResonanceOptions) -> Result<ResonanceReport> {
    if sweep.points.len() < 3 {
        return Err(Error::invalid("resonance search needs a sweep of at least 3 points"));
    }
    if !(opts.refine_tol > 0.0) {
        return Err(Error::invalid("refinement tolerance must be positive"));
    }
    let x = sweep.values();
    let raw = sweep.darkest_decays();
    let clamped: Vec<f64> = raw.iter().map(|d| d.max(opts.noise_floor)).collect();

    let mut resonances = Vec::new();
    for (first, last) in plateau_minima(&clamped) {
        let (lo, hi) = (x[first - 1], x[last + 1]);
        let bracket_min = raw[first - 1].min(raw[last + 1]);
        let mid = (first + last) / 2;
        let mut best = (x[mid], raw[mid]);

        let f = |v: f64| darkest_decay_at(cfg, v);
        let g = golden_section(f, lo, hi, opts.refine_tol, opts.max_iter)?;
        if g.fx < best.1 {
            best = (g.x, g.fx);
        }
        let mut res = Resonance {
            location: best.0,
            decay: best.1,
            width: g.width,
            bracket: (lo, hi),
            refined: g.converged,
            at_noise_floor: false,
        };

        if best.1 < opts.noise_floor {
            let below = |v: f64| darkest_decay_at(cfg, v).map(|d| d < opts.noise_floor);
            let left = bisect_edge(below, best.0, lo, opts.refine_tol)?;
            let right = bisect_edge(below, best.0, hi, opts.refine_tol)?;
            let centre = 0.5 * (left + right);
            let d = darkest_decay_at(cfg, centre)?;
            res.at_noise_floor = true;
            res.width = right - left;
            if d < opts.noise_floor {
                res.location = centre;
                res.decay = d;
            }
        }
        debug_assert!(res.decay <= bracket_min);
        resonances.push(res);
    }

    let spacings = resonances.windows(2).map(|w| w[1].location - w[0].location).collect();
    Ok(ResonanceReport { resonances, spacings })
}
