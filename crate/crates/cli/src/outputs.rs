//! Deterministic file writers. Every product starts with a `#` comment
//! header embedding the tool version, the physical constants, the phasing
//! convention, and the scenario hash, so a result file can always be traced
//! back to the exact configuration that produced it. Nothing here writes a
//! timestamp except the run manifest, which is the one file excluded from
//! byte-for-byte reproducibility.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use borealis_core::constellation::tle::TleRecord;
use borealis_core::geo::{
    EARTH_RADIUS_KM, EARTH_SURFACE_AREA_KM2, J2, MU_KM3_S2, OMEGA_EARTH_RAD_S,
    SPEED_OF_LIGHT_KM_S,
};
use borealis_core::metrics::{CoverageGrid, CoverageStats, SweepTable};
use borealis_core::{GeoPoint, PhasingConvention};
use chrono::{DateTime, SecondsFormat, Utc};
use serde_json::json;

use crate::scenario::Scenario;
use crate::{CliError, TOOL_VERSION};

// ===== Shared header =====

/// Per-file provenance, shared by every writer.
pub struct FileMeta<'a> {
    pub scenario_sha256: &'a str,
    pub phasing_convention: &'static str,
    pub j2_enabled: bool,
}

pub fn convention_name(convention: PhasingConvention) -> &'static str {
    match convention {
        PhasingConvention::ClassicPerSat => "classic-per-sat",
        PhasingConvention::PerPlane => "per-plane",
    }
}

impl<'a> FileMeta<'a> {
    pub fn of(scenario: &'a Scenario) -> Self {
        FileMeta {
            scenario_sha256: &scenario.sha256,
            phasing_convention: convention_name(scenario.shell.phasing_convention),
            j2_enabled: scenario.j2_enabled,
        }
    }

    fn comment_block(&self) -> String {
        format!(
            "# borealis {TOOL_VERSION}\n\
             # earth_radius_km={EARTH_RADIUS_KM} earth_surface_area_km2={EARTH_SURFACE_AREA_KM2} \
             mu_km3_s2={MU_KM3_S2} omega_earth_rad_s={OMEGA_EARTH_RAD_S} \
             speed_of_light_km_s={SPEED_OF_LIGHT_KM_S} j2={J2}\n\
             # phasing_convention={} j2_enabled={}\n\
             # scenario_sha256={}\n",
            self.phasing_convention, self.j2_enabled, self.scenario_sha256
        )
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    Ok(BufWriter::new(File::create(path).map_err(CliError::io(path))?))
}

fn csv_error(path: &Path) -> impl FnOnce(csv::Error) -> CliError + '_ {
    move |e| CliError::Io {
        path: path.to_path_buf(),
        source: std::io::Error::other(e),
    }
}

// Formatting: probabilities get a fixed six decimals (well below the
// resolution of any grid in use); axis values print their shortest exact
// representation; absent medians print as empty fields.
fn fmt_prob(v: f64) -> String {
    format!("{v:.6}")
}

fn fmt_opt(v: Option<u64>) -> String {
    v.map(|t| t.to_string()).unwrap_or_default()
}

// ===== CSV writers =====

pub fn write_sweep_csv(path: &Path, table: &SweepTable, meta: &FileMeta) -> Result<(), CliError> {
    let mut out = create(path)?;
    out.write_all(meta.comment_block().as_bytes())
        .map_err(CliError::io(path))?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "param_name",
        "param_value",
        "lat_deg",
        "p_cover",
        "mean_visible",
        "tau_median_s",
        "tau_max_s",
        "n_events",
    ])
    .map_err(csv_error(path))?;
    for row in &table.rows {
        w.write_record([
            table.param_name.to_string(),
            row.param_value.to_string(),
            row.lat_deg.to_string(),
            fmt_prob(row.p_cover),
            fmt_prob(row.mean_visible),
            fmt_opt(row.tau_median_s),
            fmt_opt(row.tau_max_s),
            row.n_events.to_string(),
        ])
        .map_err(csv_error(path))?;
    }
    w.flush().map_err(CliError::io(path))
}

/// Per-site statistics for single-run mode.
pub fn write_sites_csv(
    path: &Path,
    rows: &[(GeoPoint, f64, CoverageStats)],
    meta: &FileMeta,
) -> Result<(), CliError> {
    let mut out = create(path)?;
    out.write_all(meta.comment_block().as_bytes())
        .map_err(CliError::io(path))?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "site_lat_deg",
        "site_lon_deg",
        "mask_deg",
        "p_cover",
        "mean_visible",
        "tau_median_s",
        "tau_max_s",
        "n_events",
    ])
    .map_err(csv_error(path))?;
    for (site, mask_deg, stats) in rows {
        w.write_record([
            site.lat_deg().to_string(),
            site.lon_deg().to_string(),
            mask_deg.to_string(),
            fmt_prob(stats.p_cover),
            fmt_prob(stats.mean_visible),
            fmt_opt(stats.tau_median_s),
            fmt_opt(stats.tau_max_s),
            stats.revisit.len().to_string(),
        ])
        .map_err(csv_error(path))?;
    }
    w.flush().map_err(CliError::io(path))
}

pub fn write_map_csv(path: &Path, grid: &CoverageGrid, meta: &FileMeta) -> Result<(), CliError> {
    let mut out = create(path)?;
    out.write_all(meta.comment_block().as_bytes())
        .map_err(CliError::io(path))?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["lat_deg", "lon_deg", "p_cover", "tau_median_s", "tau_max_s", "n_events"])
        .map_err(csv_error(path))?;
    for (i_lat, lat) in grid.lat_axis_deg.iter().enumerate() {
        for (i_lon, lon) in grid.lon_axis_deg.iter().enumerate() {
            let cell = grid.cell(i_lat, i_lon);
            w.write_record([
                lat.to_string(),
                lon.to_string(),
                fmt_prob(cell.p_cover),
                fmt_opt(cell.tau_median_s),
                fmt_opt(cell.tau_max_s),
                cell.revisit.len().to_string(),
            ])
            .map_err(csv_error(path))?;
        }
    }
    w.flush().map_err(CliError::io(path))
}

// ===== GeoJSON =====

/// Each cell becomes a square polygon feature (WGS84, lon/lat order, CCW
/// exterior ring). Provenance rides along as a top-level foreign member.
pub fn write_map_geojson(
    path: &Path,
    grid: &CoverageGrid,
    resolution_deg: f64,
    meta: &FileMeta,
) -> Result<(), CliError> {
    let half = resolution_deg / 2.0;
    let mut features = Vec::with_capacity(grid.cells.len());
    for (i_lat, lat) in grid.lat_axis_deg.iter().enumerate() {
        for (i_lon, lon) in grid.lon_axis_deg.iter().enumerate() {
            let cell = grid.cell(i_lat, i_lon);
            let ring = vec![
                [lon - half, lat - half],
                [lon + half, lat - half],
                [lon + half, lat + half],
                [lon - half, lat + half],
                [lon - half, lat - half],
            ];
            features.push(json!({
                "type": "Feature",
                "geometry": { "type": "Polygon", "coordinates": [ring] },
                "properties": {
                    "lat_deg": lat,
                    "lon_deg": lon,
                    "p_cover": cell.p_cover,
                    "mean_visible": cell.mean_visible,
                    "tau_median_s": cell.tau_median_s,
                    "tau_max_s": cell.tau_max_s,
                    "n_events": cell.revisit.len(),
                },
            }));
        }
    }
    let doc = json!({
        "type": "FeatureCollection",
        "metadata": {
            "tool": format!("borealis {TOOL_VERSION}"),
            "earth_radius_km": EARTH_RADIUS_KM,
            "earth_surface_area_km2": EARTH_SURFACE_AREA_KM2,
            "mu_km3_s2": MU_KM3_S2,
            "omega_earth_rad_s": OMEGA_EARTH_RAD_S,
            "speed_of_light_km_s": SPEED_OF_LIGHT_KM_S,
            "j2": J2,
            "phasing_convention": meta.phasing_convention,
            "j2_enabled": meta.j2_enabled,
            "scenario_sha256": meta.scenario_sha256,
            "resolution_deg": resolution_deg,
        },
        "features": features,
    });
    let mut out = create(path)?;
    serde_json::to_writer_pretty(&mut out, &doc)
        .map_err(|e| CliError::Io { path: path.to_path_buf(), source: std::io::Error::other(e) })?;
    out.write_all(b"\n").map_err(CliError::io(path))?;
    out.flush().map_err(CliError::io(path))
}

// ===== TLE =====

/// Three-line element sets with the provenance comment block on top.
/// Consumers that reject comments can strip lines starting with `#`.
pub fn write_tle(path: &Path, records: &[TleRecord], meta: &FileMeta) -> Result<(), CliError> {
    let mut out = create(path)?;
    out.write_all(meta.comment_block().as_bytes())
        .map_err(CliError::io(path))?;
    for record in records {
        writeln!(out, "{}\n{}\n{}", record.name, record.line1, record.line2)
            .map_err(CliError::io(path))?;
    }
    out.flush().map_err(CliError::io(path))
}

// ===== Run manifest =====

/// Key/value record of the run: constants, conventions, boundary rules,
/// input hash, and the product list. `generated_utc` is the only line that
/// changes between identical runs.
pub fn write_manifest(
    path: &Path,
    scenario: &Scenario,
    files: &[String],
    now: DateTime<Utc>,
) -> Result<(), CliError> {
    let mut out = create(path)?;
    let mode = &scenario.mode;
    let grid = &scenario.grid;
    writeln!(out, "tool = borealis {TOOL_VERSION}").map_err(CliError::io(path))?;
    writeln!(out, "generated_utc = {}", now.to_rfc3339_opts(SecondsFormat::Secs, true))
        .map_err(CliError::io(path))?;
    writeln!(out, "source = {}", scenario.source).map_err(CliError::io(path))?;
    writeln!(out, "scenario_sha256 = {}", scenario.sha256).map_err(CliError::io(path))?;
    writeln!(out, "mode = {}", mode.name()).map_err(CliError::io(path))?;
    writeln!(
        out,
        "grid = {} s / {} s from {}",
        grid.duration_s,
        grid.step_s,
        grid.start.to_rfc3339_opts(SecondsFormat::Secs, true)
    )
    .map_err(CliError::io(path))?;
    writeln!(
        out,
        "shell = {:?} {}:{}/{}/{} at {} km",
        scenario.shell.pattern,
        scenario.shell.inclination_deg,
        scenario.shell.total_sats,
        scenario.shell.planes,
        scenario.shell.phasing,
        scenario.shell.altitude_km
    )
    .map_err(CliError::io(path))?;
    writeln!(
        out,
        "phasing_convention = {}",
        convention_name(scenario.shell.phasing_convention)
    )
    .map_err(CliError::io(path))?;
    writeln!(out, "j2_enabled = {}", scenario.j2_enabled).map_err(CliError::io(path))?;
    writeln!(out, "earth_radius_km = {EARTH_RADIUS_KM}").map_err(CliError::io(path))?;
    writeln!(out, "earth_surface_area_km2 = {EARTH_SURFACE_AREA_KM2}").map_err(CliError::io(path))?;
    writeln!(out, "mu_km3_s2 = {MU_KM3_S2}").map_err(CliError::io(path))?;
    writeln!(out, "omega_earth_rad_s = {OMEGA_EARTH_RAD_S}").map_err(CliError::io(path))?;
    writeln!(out, "speed_of_light_km_s = {SPEED_OF_LIGHT_KM_S}").map_err(CliError::io(path))?;
    writeln!(out, "j2 = {J2}").map_err(CliError::io(path))?;
    writeln!(out, "revisit_rule = interior gaps only; boundary gaps are discarded")
        .map_err(CliError::io(path))?;
    writeln!(out, "median_rule = lower median (element at index (n-1)/2 of the sorted gaps)")
        .map_err(CliError::io(path))?;
    for file in files {
        writeln!(out, "output = {file}").map_err(CliError::io(path))?;
    }
    out.flush().map_err(CliError::io(path))
}
