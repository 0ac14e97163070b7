//! Subcommand implementations. Each public function maps one-to-one onto a
//! CLI subcommand and returns `Result<(), CliError>`; the binary translates
//! errors into exit code 2 (validation) or 3 (I/O). Inline subcommands
//! (`sweep`, `map`) synthesize a scenario document, hash it, and go through
//! the same execution path as `run`, so files and flags cannot drift apart.

use std::fs;
use std::path::{Path, PathBuf};

use borealis_core::constellation::{default_epoch, tle};
use borealis_core::link_budget::{
    los_probability, total_path_loss, AttenuationTable, Environment, LinkBudgetInputs, LosTable,
};
use borealis_core::metrics::{coverage_map, latitude_sweep, CoverageStats};
use borealis_core::propagation::propagate;
use borealis_core::visibility::visibility_timeline;
use chrono::Utc;
use sha2::{Digest, Sha256};

use crate::outputs::{
    convention_name, write_manifest, write_map_csv, write_map_geojson, write_sites_csv,
    write_sweep_csv, write_tle, FileMeta,
};
use crate::presets;
use crate::scenario::{
    self, GridSection, MaskSection, Mode, OutputFormat, OutputSection, Overrides, RangeSection,
    RegionSection, Scenario, ScenarioFile, SweepSection,
};
use crate::CliError;

fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

// ===== run =====

/// Load, override, and validate a scenario file.
pub fn load_scenario(path: &Path, overrides: &Overrides) -> Result<Scenario, CliError> {
    let text = fs::read_to_string(path).map_err(CliError::io(path))?;
    let sha256 = sha256_hex(text.as_bytes());
    let file: ScenarioFile = toml::from_str(&text).map_err(|e| CliError::Parse {
        path: path.display().to_string(),
        source: Box::new(e),
    })?;
    scenario::resolve(file, &path.display().to_string(), sha256, overrides)
}

pub fn cmd_run(path: &Path, overrides: &Overrides) -> Result<(), CliError> {
    execute(&load_scenario(path, overrides)?)
}

/// Run a validated scenario and write its products.
pub fn execute(scenario: &Scenario) -> Result<(), CliError> {
    fs::create_dir_all(&scenario.out_dir).map_err(CliError::io(&scenario.out_dir))?;
    let meta = FileMeta::of(scenario);
    let wants = |f: OutputFormat| scenario.formats.contains(&f);
    let mut written: Vec<String> = Vec::new();

    match &scenario.mode {
        Mode::Sweep { axis, latitudes_deg } => {
            let table = latitude_sweep(
                &scenario.shell,
                axis,
                latitudes_deg,
                &scenario.grid,
                scenario.j2_enabled,
            )?;
            if wants(OutputFormat::Csv) {
                let path = scenario.out_dir.join("sweep.csv");
                write_sweep_csv(&path, &table, &meta)?;
                written.push(path.display().to_string());
            }
        }
        Mode::Map { region, resolution_deg, mask } => {
            let grid = coverage_map(
                &scenario.shell,
                *mask,
                region,
                *resolution_deg,
                &scenario.grid,
                scenario.j2_enabled,
            )?;
            if wants(OutputFormat::Csv) {
                let path = scenario.out_dir.join("map.csv");
                write_map_csv(&path, &grid, &meta)?;
                written.push(path.display().to_string());
            }
            if wants(OutputFormat::GeoJson) {
                let path = scenario.out_dir.join("map.geojson");
                write_map_geojson(&path, &grid, *resolution_deg, &meta)?;
                written.push(path.display().to_string());
            }
        }
        Mode::SingleRun { sites, mask } => {
            let elements = scenario.shell.expand()?;
            let ephemeris = propagate(&elements, &scenario.grid, scenario.j2_enabled);
            let rows: Vec<_> = sites
                .iter()
                .map(|site| {
                    let timeline = visibility_timeline(&ephemeris, site, *mask);
                    (*site, mask.eps_deg(), CoverageStats::from_timeline(&timeline))
                })
                .collect();
            if wants(OutputFormat::Csv) {
                let path = scenario.out_dir.join("sites.csv");
                write_sites_csv(&path, &rows, &meta)?;
                written.push(path.display().to_string());
            }
        }
    }

    if wants(OutputFormat::Tle) {
        let records = tle::tle_export(&scenario.shell)?;
        let path = scenario.out_dir.join("elements.tle");
        write_tle(&path, &records, &meta)?;
        written.push(path.display().to_string());
    }

    let manifest = scenario.out_dir.join("run_manifest.txt");
    write_manifest(&manifest, scenario, &written, Utc::now())?;
    for file in &written {
        println!("wrote {file}");
    }
    println!("wrote {}", manifest.display());
    Ok(())
}

/// Hash a synthesized scenario and execute it (for `sweep` and `map`).
fn run_inline(file: ScenarioFile) -> Result<(), CliError> {
    let text = toml::to_string(&file)
        .map_err(|e| CliError::Invalid(format!("cannot encode scenario: {e}")))?;
    let sha256 = sha256_hex(text.as_bytes());
    execute(&scenario::resolve(file, "<inline>", sha256, &Overrides::default())?)
}

fn grid_section(duration_s: Option<u64>, step_s: Option<u64>) -> Option<GridSection> {
    if duration_s.is_none() && step_s.is_none() {
        return None;
    }
    Some(GridSection {
        duration_s: duration_s.unwrap_or(scenario::DEFAULT_DURATION_S),
        step_s: step_s.unwrap_or(scenario::DEFAULT_STEP_S),
        epoch: None,
    })
}

// ===== sweep =====

pub struct SweepArgs {
    pub param: String,
    pub range: String,
    pub shell: String,
    pub alt: f64,
    pub mask: Option<f64>,
    pub lats: Option<String>,
    pub out_dir: PathBuf,
    pub duration_s: Option<u64>,
    pub step_s: Option<u64>,
    pub j2: bool,
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let range = scenario::parse_range(&args.range)?;
    let latitudes = match &args.lats {
        Some(text) => scenario::parse_range(text)?,
        None => RangeSection { start: 50.0, stop: 90.0, step: 5.0 },
    };
    run_inline(ScenarioFile {
        version: Some(1),
        j2_enabled: args.j2.then_some(true),
        shell: scenario::parse_shell_spec(&args.shell, args.alt)?,
        grid: grid_section(args.duration_s, args.step_s),
        mask: None,
        sweep: Some(SweepSection {
            param: args.param.clone(),
            start: range.start,
            stop: range.stop,
            step: range.step,
            latitudes,
            mask_deg: args.mask,
        }),
        region: None,
        sites: None,
        output: Some(OutputSection {
            dir: Some(args.out_dir.display().to_string()),
            formats: Some(vec!["csv".into()]),
        }),
    })
}

// ===== map =====

pub struct MapArgs {
    pub shell: String,
    pub alt: f64,
    pub mask: f64,
    pub region: String,
    pub resolution_deg: f64,
    pub out_dir: PathBuf,
    pub duration_s: Option<u64>,
    pub step_s: Option<u64>,
    pub j2: bool,
}

pub fn cmd_map(args: &MapArgs) -> Result<(), CliError> {
    let [lat_min, lat_max, lon_min, lon_max] = scenario::parse_region(&args.region)?;
    run_inline(ScenarioFile {
        version: Some(1),
        j2_enabled: args.j2.then_some(true),
        shell: scenario::parse_shell_spec(&args.shell, args.alt)?,
        grid: grid_section(args.duration_s, args.step_s),
        mask: Some(MaskSection { elevation_deg: args.mask }),
        sweep: None,
        region: Some(RegionSection {
            lat_min_deg: lat_min,
            lat_max_deg: lat_max,
            lon_min_deg: lon_min,
            lon_max_deg: lon_max,
            resolution_deg: args.resolution_deg,
        }),
        sites: None,
        output: Some(OutputSection {
            dir: Some(args.out_dir.display().to_string()),
            formats: Some(vec!["csv".into(), "geojson".into()]),
        }),
    })
}

// ===== tle =====

pub fn cmd_tle(shell_spec: &str, alt: f64, out: &Path) -> Result<(), CliError> {
    let section = scenario::parse_shell_spec(shell_spec, alt)?;
    let shell = scenario::shell_from_section(&section, default_epoch())?;
    let records = tle::tle_export(&shell)?;
    let document = toml::to_string(&section)
        .map_err(|e| CliError::Invalid(format!("cannot encode shell: {e}")))?;
    let sha256 = sha256_hex(document.as_bytes());
    let meta = FileMeta {
        scenario_sha256: &sha256,
        phasing_convention: convention_name(shell.phasing_convention),
        j2_enabled: false,
    };
    if let Some(parent) = out.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(CliError::io(parent))?;
        }
    }
    write_tle(out, &records, &meta)?;
    println!("wrote {} ({} satellites)", out.display(), records.len());
    Ok(())
}

// ===== linkbudget =====

pub fn cmd_linkbudget(
    freq_hz: f64,
    alt_km: f64,
    elev_deg: f64,
    atmos_table: Option<&Path>,
    environment: Option<&str>,
) -> Result<(), CliError> {
    let table = match atmos_table {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(CliError::io(path))?;
            AttenuationTable::from_csv(&text)?
        }
        None => AttenuationTable::builtin(),
    };
    let env = environment
        .map(|text| {
            Environment::parse(text).ok_or_else(|| {
                CliError::Argument(format!(
                    "unknown environment {text:?}; expected dense_urban, urban or suburban_rural"
                ))
            })
        })
        .transpose()?;

    let inputs = LinkBudgetInputs::new(freq_hz, alt_km, elev_deg)?;
    let result = total_path_loss(&inputs, &table)?;
    let p_los = env
        .map(|e| los_probability(e, elev_deg, &LosTable::builtin()))
        .transpose()?;

    println!("slant_range_km  = {:.3}", result.slant_range_km);
    println!("fspl_db         = {:.3}", result.fspl_db);
    println!("atmos_excess_db = {:.3}", result.atmos_excess_db);
    println!("total_db        = {:.3}", result.total_db);
    if let (Some(env), Some(p)) = (env, p_los) {
        println!("p_los[{env}]    = {p:.3}");
    }
    println!();
    println!("freq_hz,altitude_km,elevation_deg,slant_range_km,fspl_db,atmos_excess_db,total_db,environment,p_los");
    println!(
        "{},{},{},{:.6},{:.6},{:.6},{:.6},{},{}",
        freq_hz,
        alt_km,
        elev_deg,
        result.slant_range_km,
        result.fspl_db,
        result.atmos_excess_db,
        result.total_db,
        env.map(|e| e.to_string()).unwrap_or_default(),
        p_los.map(|p| format!("{p:.6}")).unwrap_or_default(),
    );
    Ok(())
}

// ===== presets =====

pub fn cmd_presets_list() {
    for preset in presets::PRESETS {
        println!("{:<16} {}", preset.name, preset.summary);
    }
}

pub fn cmd_presets_show(name: &str) -> Result<(), CliError> {
    match presets::find(name) {
        Some(preset) => {
            print!("{}", preset.toml);
            Ok(())
        }
        None => {
            let known: Vec<&str> = presets::PRESETS.iter().map(|p| p.name).collect();
            Err(CliError::Argument(format!(
                "unknown preset {name:?}; known presets: {}",
                known.join(", ")
            )))
        }
    }
}
