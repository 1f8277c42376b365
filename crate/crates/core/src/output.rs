//! On-disk result formats.
//!
//! CSV files are UTF-8 with `\n` line endings and a header row. Floats are
//! written as `{:.16e}` (17 significant digits, exact round trip). Each run
//! also writes a JSON manifest holding the tool version and the full
//! config, so every output can be regenerated from it.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::experiments::{DisorderStats, RankScaling, ScalingStudy, SweepResult};
use crate::geometry::Units;
use crate::spectral::SpectralDecomposition;

pub const SWEEP_HEADER: &str = "sweep_value,mode_rank,re_omega,im_omega";
pub const DISORDER_HEADER: &str = "sweep_value,mean_min_decay,stderr,min,max,M,r_d,rng_seed";
pub const SPECTRUM_HEADER: &str = "mode_rank,re_omega,im_omega,participation_ratio";
pub const SCALING_HEADER: &str = "study,size,mode_rank,decay,fitted";

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// One row per (grid value, mode), modes ranked darkest first from 0.
/// Sweep values are in `units`; eigenvalues in units of γ.
pub fn sweep_csv(res: &SweepResult, units: Units) -> String {
    let mut s = String::with_capacity(64 * res.points.len() * res.points.first().map_or(1, |p| p.eigenvalues.len()));
    s.push_str(SWEEP_HEADER);
    s.push('\n');
    for p in &res.points {
        let v = num(units.from_phase(p.value));
        for (rank, w) in p.eigenvalues.iter().enumerate() {
            let _ = writeln!(s, "{v},{rank},{},{}", num(w.re), num(w.im));
        }
    }
    s
}

/// One row per grid value; `r_d` in `units`.
pub fn disorder_csv(stats: &DisorderStats, units: Units) -> String {
    let spec = stats.spec;
    let tail = format!("{},{},{}", spec.samples(), num(units.from_phase(spec.strength())), spec.seed());
    let mut s = String::with_capacity(160 * stats.points.len());
    s.push_str(DISORDER_HEADER);
    s.push('\n');
    for p in &stats.points {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{tail}",
            num(units.from_phase(p.value)),
            num(p.mean),
            num(p.stderr),
            num(p.min),
            num(p.max)
        );
    }
    s
}

pub fn spectrum_csv(dec: &SpectralDecomposition) -> Result<String> {
    let mut s = String::from(SPECTRUM_HEADER);
    s.push('\n');
    for (rank, w) in dec.eigenvalues().iter().enumerate() {
        let pr = dec.mode_metrics(rank)?.participation_ratio;
        let _ = writeln!(s, "{rank},{},{},{}", num(w.re), num(w.im), num(pr));
    }
    Ok(s)
}

/// Rows `size` (darkest decay per chain length, rank 0) then `rank`
/// (decay per mode rank, counted from 1, at fixed length).
pub fn scaling_csv(study: &ScalingStudy, ranks: Option<&RankScaling>) -> String {
    let mut s = String::from(SCALING_HEADER);
    s.push('\n');
    for ((n, d), f) in study.sizes.iter().zip(&study.decays).zip(&study.fitted) {
        let _ = writeln!(s, "size,{n},0,{},{f}", num(*d));
    }
    if let Some(r) = ranks {
        for ((k, d), f) in r.ranks.iter().zip(&r.decays).zip(&r.fitted) {
            let _ = writeln!(s, "rank,{},{k},{},{f}", r.size, num(*d));
        }
    }
    s
}

/// Self-describing record of one run.
#[derive(Debug, Clone, Serialize)]
pub struct Manifest<'a> {
    pub tool: &'static str,
    pub config: &'a RunConfig,
    /// Data files written alongside, relative to the manifest.
    pub files: Vec<String>,
    pub summary: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

impl Manifest<'_> {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::Config(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }
}

/// Writes `contents` to `path`, creating parent directories.
pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(io)?;
    }
    std::fs::write(path, contents).map_err(io)
}
