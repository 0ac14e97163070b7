//! Scenario files: the on-disk TOML schema, command-line override
//! handling, and resolution into a validated, ready-to-run [`Scenario`].
//!
//! The grammar is plain TOML with the sections below; unknown keys are
//! rejected so typos surface as parse errors rather than silent defaults.
//!
//! ```toml
//! version = 1                 # optional, must be 1 when present
//! j2_enabled = false          # optional nodal-drift toggle
//!
//! [shell]                     # required
//! pattern = "delta"           # "delta" (360 deg RAAN span) or "star" (180)
//! inclination_deg = 75.0
//! total_sats = 64
//! planes = 8
//! phasing = 3
//! altitude_km = 1000.0
//! phasing_convention = "classic-per-sat"   # optional; or "per-plane"
//! raan0_deg = 0.0             # optional RAAN origin
//!
//! [grid]                      # optional; default 432000 s at 10 s
//! duration_s = 432000
//! step_s = 10
//! epoch = "2025-01-01T00:00:00Z"   # optional RFC 3339
//!
//! [mask]                      # single-run and map modes, inclination sweeps
//! elevation_deg = 40.0
//!
//! [sweep]                     # sweep mode
//! param = "elevation"         # or "inclination"
//! start = 0.0
//! stop = 70.0
//! step = 10.0
//! latitudes = { start = 50.0, stop = 90.0, step = 1.0 }
//! mask_deg = 40.0             # required for inclination sweeps only
//!
//! [region]                    # map mode
//! lat_min_deg = 50.0
//! lat_max_deg = 90.0
//! lon_min_deg = -80.0
//! lon_max_deg = 40.0
//! resolution_deg = 1.0
//!
//! [[sites]]                   # single-run mode, one block per site
//! lat_deg = 72.0
//! lon_deg = 10.0
//!
//! [output]                    # optional
//! dir = "out"
//! formats = ["csv"]           # any of "csv", "geojson", "tle"
//! ```
//!
//! Exactly one of `[sweep]`, `[region]`, `[[sites]]` selects the mode.

use std::path::PathBuf;

use borealis_core::constellation::default_epoch;
use borealis_core::metrics::{Region, SweepAxis};
use borealis_core::propagation::TimeGrid;
use borealis_core::visibility::ElevationMask;
use borealis_core::{GeoPoint, PhasingConvention, WalkerPattern, WalkerShell};
use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Default coverage grid: five days sampled every ten seconds.
pub const DEFAULT_DURATION_S: u64 = 432_000;
pub const DEFAULT_STEP_S: u64 = 10;

// ===== On-disk schema =====

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j2_enabled: Option<bool>,
    pub shell: ShellSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mask: Option<MaskSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub region: Option<RegionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sites: Option<Vec<SiteSection>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSection>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ShellSection {
    pub pattern: String,
    pub inclination_deg: f64,
    pub total_sats: u32,
    pub planes: u32,
    pub phasing: u32,
    pub altitude_km: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phasing_convention: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub raan0_deg: Option<f64>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub duration_s: u64,
    pub step_s: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epoch: Option<String>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MaskSection {
    pub elevation_deg: f64,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub param: String,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
    pub latitudes: RangeSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mask_deg: Option<f64>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RangeSection {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RegionSection {
    pub lat_min_deg: f64,
    pub lat_max_deg: f64,
    pub lon_min_deg: f64,
    pub lon_max_deg: f64,
    pub resolution_deg: f64,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SiteSection {
    pub lat_deg: f64,
    pub lon_deg: f64,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dir: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formats: Option<Vec<String>>,
}

// ===== Resolved form =====

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    GeoJson,
    Tle,
}

impl OutputFormat {
    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "csv" => Some(OutputFormat::Csv),
            "geojson" => Some(OutputFormat::GeoJson),
            "tle" => Some(OutputFormat::Tle),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Mode {
    SingleRun { sites: Vec<GeoPoint>, mask: ElevationMask },
    Sweep { axis: SweepAxis, latitudes_deg: Vec<f64> },
    Map { region: Region, resolution_deg: f64, mask: ElevationMask },
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::SingleRun { .. } => "single-run",
            Mode::Sweep { .. } => "sweep",
            Mode::Map { .. } => "map",
        }
    }
}

/// A validated scenario, ready to execute.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub shell: WalkerShell,
    pub grid: TimeGrid,
    pub mode: Mode,
    pub j2_enabled: bool,
    pub out_dir: PathBuf,
    pub formats: Vec<OutputFormat>,
    /// SHA-256 of the scenario document, embedded in output headers.
    pub sha256: String,
    /// Where the document came from: a path, or "<inline>" for flag-built
    /// scenarios.
    pub source: String,
}

/// Command-line overrides for `run`; every field mirrors a scenario key.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out_dir: Option<PathBuf>,
    pub duration_s: Option<u64>,
    pub step_s: Option<u64>,
    pub j2_enabled: Option<bool>,
    pub mask_deg: Option<f64>,
    pub lats: Option<RangeSection>,
    pub region: Option<[f64; 4]>,
    pub resolution_deg: Option<f64>,
}

// ===== Argument grammar helpers =====

/// Expand an inclusive `start:stop:step` range into its values.
pub fn range_values(start: f64, stop: f64, step: f64) -> Result<Vec<f64>, CliError> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(CliError::Argument("range bounds must be finite".into()));
    }
    if step <= 0.0 {
        return Err(CliError::Argument(format!("range step must be positive, got {step}")));
    }
    if stop < start {
        return Err(CliError::Argument(format!(
            "range stop {stop} lies below start {start}"
        )));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..n).map(|k| start + k as f64 * step).collect())
}

/// Parse `a:b:c` into a range section (used by `--range` and `--lats`).
pub fn parse_range(text: &str) -> Result<RangeSection, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Argument(format!(
            "expected start:stop:step, got {text:?}"
        )));
    }
    let nums: Result<Vec<f64>, _> = parts.iter().map(|p| p.trim().parse::<f64>()).collect();
    match nums {
        Ok(v) => Ok(RangeSection { start: v[0], stop: v[1], step: v[2] }),
        Err(e) => Err(CliError::Argument(format!("bad number in range {text:?}: {e}"))),
    }
}

/// Parse `lat_min:lat_max:lon_min:lon_max` for `--region`.
pub fn parse_region(text: &str) -> Result<[f64; 4], CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 4 {
        return Err(CliError::Argument(format!(
            "expected lat_min:lat_max:lon_min:lon_max, got {text:?}"
        )));
    }
    let mut out = [0.0; 4];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part.trim().parse::<f64>().map_err(|e| {
            CliError::Argument(format!("bad number in region {text:?}: {e}"))
        })?;
    }
    Ok(out)
}

/// Parse a shell spec `pattern:inclination:T/P/F`, e.g. `delta:75:64/8/3`.
pub fn parse_shell_spec(spec: &str, altitude_km: f64) -> Result<ShellSection, CliError> {
    let bad = |msg: &str| CliError::Argument(format!("shell spec {spec:?}: {msg}"));
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(bad("expected pattern:inclination:T/P/F"));
    }
    let pattern = parts[0].to_ascii_lowercase();
    if pattern != "delta" && pattern != "star" {
        return Err(bad("pattern must be \"delta\" or \"star\""));
    }
    let inclination_deg: f64 = parts[1]
        .parse()
        .map_err(|e| bad(&format!("bad inclination: {e}")))?;
    let counts: Vec<&str> = parts[2].split('/').collect();
    if counts.len() != 3 {
        return Err(bad("satellite counts must be T/P/F"));
    }
    let mut tpf = [0u32; 3];
    for (slot, part) in tpf.iter_mut().zip(&counts) {
        *slot = part
            .parse()
            .map_err(|e| bad(&format!("bad count {part:?}: {e}")))?;
    }
    Ok(ShellSection {
        pattern,
        inclination_deg,
        total_sats: tpf[0],
        planes: tpf[1],
        phasing: tpf[2],
        altitude_km,
        phasing_convention: None,
        raan0_deg: None,
    })
}

// ===== Resolution =====

fn parse_pattern(text: &str) -> Result<WalkerPattern, CliError> {
    match text.to_ascii_lowercase().as_str() {
        "delta" => Ok(WalkerPattern::Delta),
        "star" => Ok(WalkerPattern::Star),
        other => Err(CliError::Invalid(format!(
            "shell pattern must be \"delta\" or \"star\", got {other:?}"
        ))),
    }
}

fn parse_convention(text: &str) -> Result<PhasingConvention, CliError> {
    match text {
        "classic-per-sat" => Ok(PhasingConvention::ClassicPerSat),
        "per-plane" => Ok(PhasingConvention::PerPlane),
        other => Err(CliError::Invalid(format!(
            "phasing_convention must be \"classic-per-sat\" or \"per-plane\", got {other:?}"
        ))),
    }
}

fn parse_epoch(text: &str) -> Result<DateTime<Utc>, CliError> {
    DateTime::parse_from_rfc3339(text)
        .map(|t| t.with_timezone(&Utc))
        .map_err(|e| CliError::Invalid(format!("grid epoch {text:?} is not RFC 3339: {e}")))
}

/// Build a validated shell from its scenario section. Element epochs are
/// pinned to the grid start so exported TLEs reference the right instant.
pub fn shell_from_section(
    section: &ShellSection,
    epoch: DateTime<Utc>,
) -> Result<WalkerShell, CliError> {
    let mut shell = WalkerShell::new(
        parse_pattern(&section.pattern)?,
        section.inclination_deg,
        section.total_sats,
        section.planes,
        section.phasing,
        section.altitude_km,
    )?;
    if let Some(text) = &section.phasing_convention {
        shell.phasing_convention = parse_convention(text)?;
    }
    if let Some(raan0) = section.raan0_deg {
        shell.raan0_deg = raan0;
    }
    shell.epoch = epoch;
    shell.validate()?;
    Ok(shell)
}

/// Apply overrides, then validate and resolve a parsed scenario file.
pub fn resolve(
    mut file: ScenarioFile,
    source: &str,
    sha256: String,
    overrides: &Overrides,
) -> Result<Scenario, CliError> {
    if let Some(v) = file.version {
        if v != 1 {
            return Err(CliError::Invalid(format!(
                "unsupported scenario version {v}; this tool reads version 1"
            )));
        }
    }

    // ----- overrides mirror their file fields -----
    if overrides.duration_s.is_some() || overrides.step_s.is_some() {
        let base = file.grid.clone().unwrap_or(GridSection {
            duration_s: DEFAULT_DURATION_S,
            step_s: DEFAULT_STEP_S,
            epoch: None,
        });
        file.grid = Some(GridSection {
            duration_s: overrides.duration_s.unwrap_or(base.duration_s),
            step_s: overrides.step_s.unwrap_or(base.step_s),
            epoch: base.epoch,
        });
    }
    if let Some(mask) = overrides.mask_deg {
        file.mask = Some(MaskSection { elevation_deg: mask });
    }
    if let Some(lats) = &overrides.lats {
        match file.sweep.as_mut() {
            Some(sweep) => sweep.latitudes = lats.clone(),
            None => {
                return Err(CliError::Invalid(
                    "--lats overrides [sweep].latitudes, but the scenario has no [sweep]".into(),
                ))
            }
        }
    }
    if let Some([lat_min, lat_max, lon_min, lon_max]) = overrides.region {
        match file.region.as_mut() {
            Some(region) => {
                region.lat_min_deg = lat_min;
                region.lat_max_deg = lat_max;
                region.lon_min_deg = lon_min;
                region.lon_max_deg = lon_max;
            }
            None => {
                return Err(CliError::Invalid(
                    "--region overrides [region], but the scenario has no [region]".into(),
                ))
            }
        }
    }
    if let Some(res) = overrides.resolution_deg {
        match file.region.as_mut() {
            Some(region) => region.resolution_deg = res,
            None => {
                return Err(CliError::Invalid(
                    "--resolution-deg overrides [region], but the scenario has no [region]".into(),
                ))
            }
        }
    }
    if let Some(j2) = overrides.j2_enabled {
        file.j2_enabled = Some(j2);
    }

    // ----- grid -----
    let (duration_s, step_s, epoch) = match &file.grid {
        Some(g) => (
            g.duration_s,
            g.step_s,
            match &g.epoch {
                Some(text) => parse_epoch(text)?,
                None => default_epoch(),
            },
        ),
        None => (DEFAULT_DURATION_S, DEFAULT_STEP_S, default_epoch()),
    };
    let grid = TimeGrid::new(epoch, duration_s, step_s)?;

    // ----- shell -----
    let shell = shell_from_section(&file.shell, epoch)?;

    // ----- mode: exactly one of sites / sweep / region -----
    let selected = usize::from(file.sites.is_some())
        + usize::from(file.sweep.is_some())
        + usize::from(file.region.is_some());
    if selected != 1 {
        return Err(CliError::Invalid(format!(
            "scenario must select exactly one mode via [[sites]], [sweep] or [region]; found {selected}"
        )));
    }

    let mode = if let Some(sweep) = &file.sweep {
        let values = range_values(sweep.start, sweep.stop, sweep.step)?;
        let latitudes_deg =
            range_values(sweep.latitudes.start, sweep.latitudes.stop, sweep.latitudes.step)?;
        let axis = match sweep.param.as_str() {
            "elevation" => {
                if file.mask.is_some() || sweep.mask_deg.is_some() {
                    return Err(CliError::Invalid(
                        "an elevation sweep defines its own masks; remove [mask]/mask_deg".into(),
                    ));
                }
                SweepAxis::Elevation { masks_deg: values }
            }
            "inclination" => {
                let mask_deg = sweep
                    .mask_deg
                    .or(file.mask.as_ref().map(|m| m.elevation_deg))
                    .ok_or_else(|| {
                        CliError::Invalid(
                            "an inclination sweep needs mask_deg (or a [mask] section)".into(),
                        )
                    })?;
                ElevationMask::new(mask_deg)?;
                SweepAxis::Inclination { inclinations_deg: values, mask_deg }
            }
            other => {
                return Err(CliError::Invalid(format!(
                    "sweep param must be \"elevation\" or \"inclination\", got {other:?}"
                )))
            }
        };
        Mode::Sweep { axis, latitudes_deg }
    } else if let Some(region) = &file.region {
        let mask = require_mask(&file, "map")?;
        let bounds = Region::new(
            region.lat_min_deg,
            region.lat_max_deg,
            region.lon_min_deg,
            region.lon_max_deg,
        )?;
        Mode::Map { region: bounds, resolution_deg: region.resolution_deg, mask }
    } else {
        let sections = file.sites.as_ref().expect("selected == 1");
        if sections.is_empty() {
            return Err(CliError::Invalid("[[sites]] must list at least one site".into()));
        }
        let mask = require_mask(&file, "single-run")?;
        let sites = sections
            .iter()
            .map(|s| GeoPoint::at_sea_level(s.lat_deg, s.lon_deg))
            .collect::<Result<Vec<_>, _>>()?;
        Mode::SingleRun { sites, mask }
    };

    // ----- outputs -----
    let out_dir = overrides
        .out_dir
        .clone()
        .or_else(|| file.output.as_ref().and_then(|o| o.dir.as_ref().map(PathBuf::from)))
        .unwrap_or_else(|| PathBuf::from("out"));
    let formats = match file.output.as_ref().and_then(|o| o.formats.as_ref()) {
        Some(names) => {
            let mut formats = Vec::new();
            for name in names {
                let format = OutputFormat::parse(name).ok_or_else(|| {
                    CliError::Invalid(format!(
                        "unknown output format {name:?}; expected csv, geojson or tle"
                    ))
                })?;
                if format == OutputFormat::GeoJson && !matches!(mode, Mode::Map { .. }) {
                    return Err(CliError::Invalid(
                        "geojson output is only produced in map mode".into(),
                    ));
                }
                if !formats.contains(&format) {
                    formats.push(format);
                }
            }
            formats
        }
        None => vec![OutputFormat::Csv],
    };

    Ok(Scenario {
        shell,
        grid,
        mode,
        j2_enabled: file.j2_enabled.unwrap_or(false),
        out_dir,
        formats,
        sha256,
        source: source.to_string(),
    })
}

fn require_mask(file: &ScenarioFile, mode: &str) -> Result<ElevationMask, CliError> {
    let section = file.mask.as_ref().ok_or_else(|| {
        CliError::Invalid(format!("{mode} mode needs a [mask] section"))
    })?;
    Ok(ElevationMask::new(section.elevation_deg)?)
}
