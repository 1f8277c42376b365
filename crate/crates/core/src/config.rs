//! Run configuration: one TOML schema shared by every command.
//!
//! ```toml
//! command = "sweep"          # spectrum | sweep | disorder | scaling | validate
//! units = "phase"            # phase | lambda0, required
//!
//! [params]                   # optional; defaults ω₀ = 0, γ = 1
//! omega0 = 0.0
//! gamma1d = 1.0
//!
//! [[seeds]]                  # innermost first
//! name = "A"
//! kind = "dimer"             # dimer | periodic | explicit
//! spacing = "0.2pi"
//!
//! [[seeds]]
//! name = "B"
//! kind = "dimer"             # swept: no spacing
//!
//! [sweep]
//! seed = "B"
//! start = 0.0
//! stop = "1.5pi"
//! points = 1000
//! ```
//!
//! Every length (spacings, positions, grid bounds, disorder strength,
//! refinement tolerance) is read in the declared `units`. Lengths may be
//! numbers or strings such as `"0.2pi"`, `"pi"` or `"1.5π"`.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::experiments::{Grid, ResonanceOptions, SeedSpec, SweepConfig};
use crate::geometry::{nest, DisorderSpec, NestedArray, PositionSet, Units};
use crate::hamiltonian::PhysicalParams;

/// A length read from a number or a string multiple of π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scalar(pub f64);

impl Scalar {
    pub fn parse(text: &str) -> Option<f64> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let (coeff, pi) = if let Some(c) = t.strip_suffix("pi").or_else(|| t.strip_suffix('π')) {
            (c.strip_suffix('*').unwrap_or(c), true)
        } else {
            (t.as_str(), false)
        };
        let c = match coeff {
            "" | "+" => 1.0,
            "-" => -1.0,
            s => s.parse::<f64>().ok()?,
        };
        let v = if pi { c * std::f64::consts::PI } else { c };
        v.is_finite().then_some(v)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.0)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Scalar;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or a string such as \"0.2pi\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Scalar, E> {
                Ok(Scalar(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Scalar, E> {
                Ok(Scalar(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Scalar, E> {
                Ok(Scalar(v as f64))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Scalar, E> {
                Scalar::parse(v)
                    .map(Scalar)
                    .ok_or_else(|| E::invalid_value(de::Unexpected::Str(v), &self))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Spectrum,
    Sweep,
    Disorder,
    Scaling,
    Validate,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Sweep => "sweep",
            Command::Disorder => "disorder",
            Command::Scaling => "scaling",
            Command::Validate => "validate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
    Both,
}

impl Format {
    pub fn csv(self) -> bool {
        matches!(self, Format::Csv | Format::Both)
    }

    pub fn json_data(self) -> bool {
        matches!(self, Format::Json | Format::Both)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeedKind {
    Dimer,
    Periodic,
    Explicit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub kind: SeedKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spacing: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positions: Option<Vec<Scalar>>,
}

fn default_points() -> usize {
    1000
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSection {
    /// Name of the swept seed.
    pub seed: String,
    pub start: Scalar,
    pub stop: Scalar,
    #[serde(default = "default_points")]
    pub points: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub profiles_at: Vec<Scalar>,
    #[serde(default)]
    pub resonances: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refine_tol: Option<Scalar>,
    /// Decay, in units of γ, below which a minimum counts as exactly dark.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise_floor: Option<f64>,
}

fn default_samples() -> usize {
    200
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisorderSection {
    pub strength: Scalar,
    pub seed: u64,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

fn default_ranks() -> Vec<usize> {
    vec![1, 2, 3, 4, 5]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingSection {
    pub spacing: Scalar,
    pub sizes: Vec<usize>,
    /// Chain length for the mode-rank study; skipped when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_size: Option<usize>,
    #[serde(default = "default_ranks")]
    pub ranks: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct OutputSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stem: Option<String>,
    #[serde(default)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<Units>,
    #[serde(default)]
    pub params: PhysicalParams,
    #[serde(default)]
    pub seeds: Vec<SeedEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disorder: Option<DisorderSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scaling: Option<ScalingSection>,
    #[serde(default)]
    pub output: OutputSection,
}

fn config_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

/// Parses and validates a TOML config.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let value: toml::Value = text.parse().map_err(|e: toml::de::Error| config_err(e.to_string()))?;
    from_value(value)
}

/// Reads a TOML config, or the `config` entry of a JSON manifest, and
/// applies `key.path=value` overrides before validation.
pub fn load_config(path: &Path, overrides: &[String]) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut value = if path.extension().is_some_and(|e| e == "json") {
        let manifest: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| config_err(format!("{}: {e}", path.display())))?;
        let cfg = manifest
            .get("config")
            .ok_or_else(|| config_err(format!("{}: manifest has no `config` entry", path.display())))?;
        toml::Value::try_from(cfg).map_err(|e| config_err(e.to_string()))?
    } else {
        text.parse::<toml::Value>()
            .map_err(|e| config_err(format!("{}: {e}", path.display())))?
    };
    for o in overrides {
        apply_override(&mut value, o)?;
    }
    from_value(value)
}

fn from_value(value: toml::Value) -> Result<RunConfig> {
    let mut unknown = Vec::new();
    let cfg: RunConfig = serde_ignored::deserialize(value, |path| {
        // `?` marks a step through an Option
        let p = path.to_string();
        unknown.push(p.split('.').filter(|k| *k != "?").collect::<Vec<_>>().join("."));
    })
        .map_err(|e: toml::de::Error| config_err(e.message().to_string()))?;
    if !unknown.is_empty() {
        return Err(config_err(format!("unknown keys: {}", unknown.join(", "))));
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Sets a dotted path (`sweep.points`, `seeds.0.spacing`) in a parsed
/// config. The value is read as TOML, falling back to a bare string.
pub fn apply_override(root: &mut toml::Value, assignment: &str) -> Result<()> {
    let (path, raw) = assignment
        .split_once('=')
        .ok_or_else(|| config_err(format!("override `{assignment}` is not key=value")))?;
    let (path, raw) = (path.trim(), raw.trim());
    let value = format!("v = {raw}")
        .parse::<toml::Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.to_string()));

    let keys: Vec<&str> = path.split('.').collect();
    if keys.iter().any(|k| k.is_empty()) {
        return Err(config_err(format!("malformed override path `{path}`")));
    }
    let mut node = root;
    for (depth, key) in keys.iter().enumerate() {
        let last = depth + 1 == keys.len();
        node = match node {
            toml::Value::Table(t) => {
                if last {
                    t.insert(key.to_string(), value);
                    return Ok(());
                }
                t.entry(key.to_string())
                    .or_insert_with(|| toml::Value::Table(toml::Table::new()))
            }
            toml::Value::Array(a) => {
                let i: usize = key
                    .parse()
                    .map_err(|_| config_err(format!("`{key}` in `{path}` must index an array")))?;
                let len = a.len();
                let slot = a
                    .get_mut(i)
                    .ok_or_else(|| config_err(format!("index {i} in `{path}` out of range ({len} entries)")))?;
                if last {
                    *slot = value;
                    return Ok(());
                }
                slot
            }
            _ => return Err(config_err(format!("`{path}` descends into a scalar"))),
        };
    }
    unreachable!("override path has at least one key")
}

impl RunConfig {
    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| config_err(e.to_string()))
    }

    pub fn units(&self) -> Result<Units> {
        self.units
            .ok_or_else(|| config_err("`units` must be declared explicitly: \"phase\" or \"lambda0\""))
    }

    fn phase(&self, v: Scalar) -> f64 {
        self.units.map_or(v.0, |u| u.to_phase(v.0))
    }

    fn swept_index(&self) -> Result<Option<usize>> {
        let Some(sweep) = &self.sweep else { return Ok(None) };
        let hits: Vec<usize> = self
            .seeds
            .iter()
            .enumerate()
            .filter(|(_, s)| s.name.as_deref() == Some(sweep.seed.as_str()))
            .map(|(i, _)| i)
            .collect();
        match hits.as_slice() {
            [i] => Ok(Some(*i)),
            [] => Err(config_err(format!("swept seed `{}` is not defined", sweep.seed))),
            _ => Err(config_err(format!("seed name `{}` is not unique", sweep.seed))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.units()?;
        self.params.validate().map_err(|e| config_err(format!("[params]: {e}")))?;
        let swept = self.swept_index()?;

        let mut names: Vec<&str> = self.seeds.iter().filter_map(|s| s.name.as_deref()).collect();
        names.sort_unstable();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(config_err(format!("seed name `{}` is not unique", w[0])));
        }

        let needs_sweep = matches!(self.command, Command::Sweep | Command::Disorder);
        if needs_sweep && self.sweep.is_none() {
            return Err(config_err(format!("command `{}` needs a [sweep] section", self.command.name())));
        }
        if self.command == Command::Disorder && self.disorder.is_none() {
            return Err(config_err("command `disorder` needs a [disorder] section"));
        }
        if self.command == Command::Scaling && self.scaling.is_none() {
            return Err(config_err("command `scaling` needs a [scaling] section"));
        }
        if self.command != Command::Scaling && self.seeds.is_empty() {
            return Err(config_err(format!("command `{}` needs at least one [[seeds]] entry", self.command.name())));
        }
        if self.command == Command::Validate && self.seeds.len() != 2 {
            return Err(config_err("command `validate` needs exactly two seeds"));
        }

        for (i, s) in self.seeds.iter().enumerate() {
            let is_swept = needs_sweep && swept == Some(i);
            let label = s.name.clone().unwrap_or_else(|| format!("#{i}"));
            let fail = |m: &str| Err(config_err(format!("seed {label}: {m}")));
            match s.kind {
                SeedKind::Explicit => {
                    if s.positions.is_none() {
                        return fail("explicit seed needs `positions`");
                    }
                    if s.spacing.is_some() || s.count.is_some() {
                        return fail("explicit seed takes only `positions`");
                    }
                    if is_swept {
                        return fail("an explicit seed cannot be swept");
                    }
                }
                SeedKind::Dimer | SeedKind::Periodic => {
                    if s.positions.is_some() {
                        return fail("`positions` belongs to explicit seeds");
                    }
                    if (s.kind == SeedKind::Periodic) != s.count.is_some() {
                        return fail("`count` is required for periodic seeds and only for them");
                    }
                    match (is_swept, s.spacing.is_some()) {
                        (true, true) => return fail("the swept seed's spacing is set by the grid; remove `spacing`"),
                        (false, false) => return fail("`spacing` is required"),
                        _ => {}
                    }
                }
            }
        }

        if let Some(sw) = &self.sweep {
            let (a, b) = (self.phase(sw.start), self.phase(sw.stop));
            Grid::new(a, b, sw.points).map_err(|e| config_err(format!("[sweep]: {e}")))?;
            if a < 0.0 {
                return Err(config_err("[sweep]: swept spacing must stay >= 0"));
            }
            if let Some(p) = sw.profiles_at.iter().find(|p| p.0 < sw.start.0 || p.0 > sw.stop.0) {
                return Err(config_err(format!("[sweep]: profile point {} lies outside the grid", p.0)));
            }
            if sw.refine_tol.is_some_and(|t| !(t.0 > 0.0)) {
                return Err(config_err("[sweep]: refine_tol must be > 0"));
            }
        }
        if let Some(d) = &self.disorder {
            DisorderSpec::new(self.phase(d.strength), d.seed, d.samples).map_err(|e| config_err(format!("[disorder]: {e}")))?;
        }
        if let Some(s) = &self.scaling {
            if s.sizes.len() < 2 {
                return Err(config_err("[scaling]: the exponent fit needs at least two sizes"));
            }
        }
        // seeds must build
        if self.command != Command::Scaling {
            self.seed_specs().map_err(|e| config_err(format!("[[seeds]]: {e}")))?
                .iter()
                .try_for_each(|s| s.build().map(|_| ()))
                .map_err(|e| config_err(format!("[[seeds]]: {e}")))?;
        }
        Ok(())
    }

    /// Seed specs in phase units; the swept seed gets spacing 0.
    pub fn seed_specs(&self) -> Result<Vec<SeedSpec>> {
        self.seeds
            .iter()
            .map(|s| {
                let spacing = self.phase(s.spacing.unwrap_or(Scalar(0.0)));
                Ok(match s.kind {
                    SeedKind::Dimer => SeedSpec::Dimer { spacing },
                    SeedKind::Periodic => SeedSpec::Periodic {
                        count: s.count.unwrap_or(0),
                        spacing,
                    },
                    SeedKind::Explicit => SeedSpec::Explicit(PositionSet::new(
                        s.positions.iter().flatten().map(|&p| self.phase(p)).collect(),
                    )?),
                })
            })
            .collect()
    }

    /// Nested array of the seeds as given (no sweep).
    pub fn nested_array(&self) -> Result<NestedArray> {
        let seeds = self.seed_specs()?.iter().map(SeedSpec::build).collect::<Result<Vec<_>>>()?;
        nest(&seeds)
    }

    pub fn sweep_config(&self) -> Result<SweepConfig> {
        let sw = self.sweep.as_ref().ok_or_else(|| config_err("no [sweep] section"))?;
        let swept = self.swept_index()?.expect("sweep section present");
        let grid = Grid::new(self.phase(sw.start), self.phase(sw.stop), sw.points)?;
        let mut cfg = SweepConfig::new(self.seed_specs()?, swept, grid, self.params)?;
        cfg.profile_at = sw.profiles_at.iter().map(|&p| self.phase(p)).collect();
        Ok(cfg)
    }

    pub fn resonance_options(&self) -> ResonanceOptions {
        let mut o = ResonanceOptions::default();
        if let Some(sw) = &self.sweep {
            if let Some(t) = sw.refine_tol {
                o.refine_tol = self.phase(t);
            }
            if let Some(f) = sw.noise_floor {
                o.noise_floor = f;
            }
        }
        o
    }

    pub fn disorder_spec(&self) -> Result<DisorderSpec> {
        let d = self.disorder.as_ref().ok_or_else(|| config_err("no [disorder] section"))?;
        DisorderSpec::new(self.phase(d.strength), d.seed, d.samples)
    }

    /// Scaling spacing in phase units.
    pub fn scaling_spacing(&self) -> Result<f64> {
        let s = self.scaling.as_ref().ok_or_else(|| config_err("no [scaling] section"))?;
        Ok(self.phase(s.spacing))
    }
}
