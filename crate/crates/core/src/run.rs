//! Executes a validated [`RunConfig`] and writes its outputs.

use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::config::{Command, RunConfig};
use crate::error::Result;
use crate::experiments::{
    find_resonances, mode_rank_scaling, run_disorder_ensemble, run_scaling_study, run_sweep, verify_block_equivalence,
    SweepResult,
};
use crate::geometry::Units;
use crate::hamiltonian::build_dense;
use crate::output::{disorder_csv, scaling_csv, spectrum_csv, sweep_csv, write_file, Manifest};
use crate::spectral::darkest_mode;
use crate::VERSION;

/// Residual bound for the `validate` command, in units of γ.
pub const VALIDATE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub files: Vec<PathBuf>,
    /// Set when the run completed but a numerical check failed.
    pub diagnostic: Option<String>,
}

fn pairs(w: &[num_complex::Complex64]) -> Vec<[f64; 2]> {
    w.iter().map(|z| [z.re, z.im]).collect()
}

fn sweep_summary(res: &SweepResult, units: Units) -> (Value, Value) {
    let values: Vec<f64> = res.values().iter().map(|&v| units.from_phase(v)).collect();
    let profiles: Vec<Value> = res
        .points
        .iter()
        .filter_map(|p| {
            p.profiles
                .as_ref()
                .map(|pr| json!({ "sweep_value": units.from_phase(p.value), "intensity": pr }))
        })
        .collect();
    let summary = json!({
        "points": res.points.len(),
        "modes": res.points.first().map_or(0, |p| p.eigenvalues.len()),
        "boundaries": res.boundaries.map(|b| json!({
            "inner_spacing": b.inner_spacing.map(|s| units.from_phase(s)),
            "inner_extent": units.from_phase(b.inner_extent),
        })),
        "profiles": profiles,
    });
    let data = json!({
        "sweep_value": values,
        "eigenvalues": res.points.iter().map(|p| pairs(&p.eigenvalues)).collect::<Vec<_>>(),
        "darkest_decay": res.darkest_decays(),
        "regime": res.points.iter().map(|p| p.regime).collect::<Vec<_>>(),
    });
    (summary, data)
}

/// Runs `cfg` and writes `<stem>.csv` (unless the format is JSON only)
/// and the manifest `<stem>.json` into `out_dir`.
pub fn execute(cfg: &RunConfig, out_dir: &Path) -> Result<RunReport> {
    cfg.validate()?;
    let units = cfg.units()?;
    let stem = cfg.output.stem.clone().unwrap_or_else(|| cfg.command.name().to_string());
    let format = cfg.output.format;
    let mut diagnostic = None;

    let (csv, summary, data): (Option<String>, Value, Value) = match cfg.command {
        Command::Spectrum => {
            let arr = cfg.nested_array()?;
            let dec = build_dense(arr.composite(), cfg.params)?.eigendecompose()?;
            let (i, dark) = darkest_mode(&dec)?;
            let summary = json!({
                "atoms": dec.len(),
                "darkest_index": i,
                "darkest_decay": dark.decay,
                "ortho_residual": dec.ortho_residual(),
                "eig_residual": dec.eig_residual(),
                "near_defective": dec.near_defective(),
            });
            let prs = (0..dec.len())
                .map(|k| dec.mode_metrics(k).map(|m| m.participation_ratio))
                .collect::<Result<Vec<_>>>()?;
            let data = json!({ "eigenvalues": pairs(dec.eigenvalues()), "participation_ratio": prs });
            (Some(spectrum_csv(&dec)?), summary, data)
        }
        Command::Sweep => {
            let sc = cfg.sweep_config()?;
            let res = run_sweep(&sc)?;
            let (mut summary, data) = sweep_summary(&res, units);
            if cfg.sweep.as_ref().is_some_and(|s| s.resonances) {
                let rep = find_resonances(&sc, &res, cfg.resonance_options())?;
                let list: Vec<Value> = rep
                    .resonances
                    .iter()
                    .map(|r| {
                        json!({
                            "location": units.from_phase(r.location),
                            "decay": r.decay,
                            "width": units.from_phase(r.width),
                            "bracket": [units.from_phase(r.bracket.0), units.from_phase(r.bracket.1)],
                            "refined": r.refined,
                            "at_noise_floor": r.at_noise_floor,
                        })
                    })
                    .collect();
                summary["resonances"] = Value::from(list);
                summary["resonance_spacings"] =
                    Value::from(rep.spacings.iter().map(|&s| units.from_phase(s)).collect::<Vec<_>>());
            }
            (Some(sweep_csv(&res, units)), summary, data)
        }
        Command::Disorder => {
            let stats = run_disorder_ensemble(&cfg.sweep_config()?, &cfg.disorder_spec()?)?;
            let darkest = stats
                .points
                .iter()
                .min_by(|a, b| a.mean.total_cmp(&b.mean))
                .expect("grid has >= 2 points");
            let summary = json!({
                "points": stats.points.len(),
                "samples": stats.spec.samples(),
                "strength": units.from_phase(stats.spec.strength()),
                "rng_seed": stats.spec.seed(),
                "lowest_mean": { "sweep_value": units.from_phase(darkest.value), "mean": darkest.mean, "stderr": darkest.stderr },
            });
            let data = json!({
                "sweep_value": stats.points.iter().map(|p| units.from_phase(p.value)).collect::<Vec<_>>(),
                "mean": stats.means(),
                "stderr": stats.points.iter().map(|p| p.stderr).collect::<Vec<_>>(),
                "min": stats.points.iter().map(|p| p.min).collect::<Vec<_>>(),
                "max": stats.points.iter().map(|p| p.max).collect::<Vec<_>>(),
            });
            (Some(disorder_csv(&stats, units)), summary, data)
        }
        Command::Scaling => {
            let sec = cfg.scaling.as_ref().expect("validated");
            let d = cfg.scaling_spacing()?;
            let study = run_scaling_study(d, &sec.sizes)?;
            let ranks = sec.rank_size.map(|n| mode_rank_scaling(d, n, &sec.ranks)).transpose()?;
            let summary = json!({
                "size_slope": study.slope,
                "rank_slope": ranks.as_ref().map(|r| r.slope),
            });
            let data = json!({ "sizes": study, "ranks": ranks });
            (Some(scaling_csv(&study, ranks.as_ref())), summary, data)
        }
        Command::Validate => {
            let rep = verify_block_equivalence(&cfg.nested_array()?, cfg.params)?;
            let worst = rep.max_residual();
            if worst > VALIDATE_TOL {
                diagnostic = Some(format!("block-equivalence residual {worst:.3e} exceeds {VALIDATE_TOL:e}"));
            }
            let summary = json!({ "residuals": rep, "max_residual": worst, "tolerance": VALIDATE_TOL });
            (None, summary, Value::Null)
        }
    };

    let mut files = Vec::new();
    let mut listed = Vec::new();
    if let (Some(csv), true) = (csv, format.csv()) {
        let name = format!("{stem}.csv");
        let path = out_dir.join(&name);
        write_file(&path, &csv)?;
        files.push(path);
        listed.push(name);
    }
    let manifest = Manifest {
        tool: VERSION,
        config: cfg,
        files: listed,
        summary,
        data: (format.json_data() && !data.is_null()).then_some(data),
    };
    let path = out_dir.join(format!("{stem}.json"));
    write_file(&path, &manifest.to_json()?)?;
    files.push(path);
    Ok(RunReport { files, diagnostic })
}
