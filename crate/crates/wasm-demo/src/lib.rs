//! Browser bindings for the coverage simulator.
//!
//! Compiled to `wasm32-unknown-unknown` these functions back the static
//! demo page under `www/`; compiled natively they are ordinary Rust
//! functions, which is how the unit tests drive them. Results cross the
//! boundary as JSON strings, so the page needs nothing beyond
//! wasm-bindgen's standard loader.
//!
//! Three operations are exposed:
//! - [`footprint_profile`]: coverage-circle radius and slant range versus
//!   elevation for one altitude, plus the orbital period.
//! - [`coverage_by_latitude`]: the 50-90 degree latitude profile of
//!   coverage probability for one shell and mask, on a one-day demo grid
//!   (the CLI uses five days; one day keeps in-browser latency low).
//! - [`link_budget_report`]: slant range, free-space loss, atmospheric
//!   excess and optional line-of-sight probability for one geometry.

use borealis_core::constellation::{default_epoch, WalkerPattern, WalkerShell};
use borealis_core::geo::{footprint_radius_km, slant_range_km, MU_KM3_S2};
use borealis_core::link_budget::{
    los_probability, total_path_loss, AttenuationTable, Environment, LinkBudgetInputs, LosTable,
};
use borealis_core::metrics::{latitude_sweep, SweepAxis};
use borealis_core::propagation::TimeGrid;
use serde::Serialize;
use wasm_bindgen::prelude::*;

// Demo sweep grid: one day at sixty seconds. A browser tab is not the
// place for the five-day reference grid; the sampled instants are a
// subset of the reference ones, so exact full-coverage results agree.
const DEMO_DURATION_S: u64 = 86_400;
const DEMO_STEP_S: u64 = 60;
const DEMO_LAT_MIN: i32 = 50;
const DEMO_LAT_MAX: i32 = 90;
const DEMO_LAT_STEP: i32 = 2;

// ===== Footprint geometry =====

#[derive(Serialize)]
struct FootprintPoint {
    elevation_deg: f64,
    footprint_radius_km: f64,
    slant_range_km: f64,
}

#[derive(Serialize)]
struct FootprintProfile {
    altitude_km: f64,
    period_min: f64,
    points: Vec<FootprintPoint>,
}

/// Footprint radius and slant range for every whole-degree elevation at
/// one altitude, as a JSON object; `period_min` is the circular-orbit
/// period at that altitude.
#[wasm_bindgen]
pub fn footprint_profile(altitude_km: f64) -> Result<String, String> {
    let mut points = Vec::with_capacity(91);
    for eps in 0..=90 {
        let eps_deg = f64::from(eps);
        points.push(FootprintPoint {
            elevation_deg: eps_deg,
            footprint_radius_km: footprint_radius_km(altitude_km, eps_deg)
                .map_err(|e| e.to_string())?,
            slant_range_km: slant_range_km(altitude_km, eps_deg).map_err(|e| e.to_string())?,
        });
    }
    let a = borealis_core::geo::EARTH_RADIUS_KM + altitude_km;
    let profile = FootprintProfile {
        altitude_km,
        period_min: 2.0 * std::f64::consts::PI * (a * a * a / MU_KM3_S2).sqrt() / 60.0,
        points,
    };
    serde_json::to_string(&profile).map_err(|e| e.to_string())
}

// ===== Coverage by latitude =====

#[derive(Serialize)]
struct CoverageRow {
    lat_deg: f64,
    p_cover: f64,
    mean_visible: f64,
    tau_median_s: Option<u64>,
    tau_max_s: Option<u64>,
    n_events: usize,
}

#[derive(Serialize)]
struct CoverageProfile {
    mask_deg: f64,
    duration_s: u64,
    step_s: u64,
    rows: Vec<CoverageRow>,
}

fn parse_pattern(text: &str) -> Result<WalkerPattern, String> {
    match text {
        "delta" => Ok(WalkerPattern::Delta),
        "star" => Ok(WalkerPattern::Star),
        other => Err(format!("unknown pattern {other:?}; expected \"delta\" or \"star\"")),
    }
}

/// Coverage probability, mean visible count and revisit statistics over
/// latitudes 50..90 N for one Walker shell and elevation mask, as JSON.
/// Runs on a one-day, sixty-second grid sized for in-browser use.
#[wasm_bindgen]
pub fn coverage_by_latitude(
    pattern: &str,
    inclination_deg: f64,
    total_sats: u32,
    planes: u32,
    phasing: u32,
    altitude_km: f64,
    mask_deg: f64,
) -> Result<String, String> {
    let shell = WalkerShell::new(
        parse_pattern(pattern)?,
        inclination_deg,
        total_sats,
        planes,
        phasing,
        altitude_km,
    )
    .map_err(|e| e.to_string())?;
    let grid =
        TimeGrid::new(default_epoch(), DEMO_DURATION_S, DEMO_STEP_S).map_err(|e| e.to_string())?;
    let lats: Vec<f64> = (DEMO_LAT_MIN..=DEMO_LAT_MAX)
        .step_by(DEMO_LAT_STEP as usize)
        .map(f64::from)
        .collect();
    let axis = SweepAxis::Elevation { masks_deg: vec![mask_deg] };
    let table = latitude_sweep(&shell, &axis, &lats, &grid, false).map_err(|e| e.to_string())?;

    let rows = table
        .rows
        .iter()
        .map(|r| CoverageRow {
            lat_deg: r.lat_deg,
            p_cover: r.p_cover,
            mean_visible: r.mean_visible,
            tau_median_s: r.tau_median_s,
            tau_max_s: r.tau_max_s,
            n_events: r.n_events,
        })
        .collect();
    let profile = CoverageProfile {
        mask_deg,
        duration_s: DEMO_DURATION_S,
        step_s: DEMO_STEP_S,
        rows,
    };
    serde_json::to_string(&profile).map_err(|e| e.to_string())
}

// ===== Link budget =====

#[derive(Serialize)]
struct LinkBudgetReport {
    frequency_ghz: f64,
    altitude_km: f64,
    elevation_deg: f64,
    slant_range_km: f64,
    fspl_db: f64,
    atmos_excess_db: f64,
    total_db: f64,
    environment: Option<&'static str>,
    p_los: Option<f64>,
}

/// Path-loss breakdown for one downlink geometry using the built-in
/// attenuation table, as JSON. Pass an empty `environment` to skip the
/// line-of-sight probability; otherwise one of `dense_urban`, `urban`
/// or `suburban_rural`.
#[wasm_bindgen]
pub fn link_budget_report(
    frequency_ghz: f64,
    altitude_km: f64,
    elevation_deg: f64,
    environment: &str,
) -> Result<String, String> {
    let inputs = LinkBudgetInputs::new(frequency_ghz * 1.0e9, altitude_km, elevation_deg)
        .map_err(|e| e.to_string())?;
    let result =
        total_path_loss(&inputs, &AttenuationTable::builtin()).map_err(|e| e.to_string())?;

    let (env, p_los) = if environment.is_empty() {
        (None, None)
    } else {
        let env = Environment::parse(environment).ok_or_else(|| {
            format!(
                "unknown environment {environment:?}; expected dense_urban, urban or suburban_rural"
            )
        })?;
        let p = los_probability(env, elevation_deg, &LosTable::builtin())
            .map_err(|e| e.to_string())?;
        (Some(env.as_str()), Some(p))
    };

    let report = LinkBudgetReport {
        frequency_ghz,
        altitude_km,
        elevation_deg,
        slant_range_km: result.slant_range_km,
        fspl_db: result.fspl_db,
        atmos_excess_db: result.atmos_excess_db,
        total_db: result.total_db,
        environment: env,
        p_los,
    };
    serde_json::to_string(&report).map_err(|e| e.to_string())
}
