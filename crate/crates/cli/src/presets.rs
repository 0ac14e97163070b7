//! Built-in scenarios: the reference-figure experiments for the 75°
//! 64/8/3 reference shell, plus single-shell approximations of well-known
//! commercial constellations. `presets show <name>` prints the TOML, which
//! doubles as living documentation of the scenario grammar.
//!
//! The commercial presets approximate each system as one Walker shell.
//! Their phasing parameter is not part of the published configurations, so
//! all of them use F = 1 under the classic per-satellite convention; the
//! one-day/30-second grid keeps them quick to run. Figure presets use the
//! full five-day/ten-second default grid.

/// One named, ready-to-run scenario.
pub struct Preset {
    pub name: &'static str,
    pub summary: &'static str,
    pub toml: &'static str,
}

// ===== Study-shell figure scenarios =====

const FIG6: &str = r#"# Elevation-mask sweep of the reference shell over the high-latitude band.
version = 1

[shell]
pattern = "delta"
inclination_deg = 75.0
total_sats = 64
planes = 8
phasing = 3
altitude_km = 1000.0

[sweep]
param = "elevation"
start = 0.0
stop = 70.0
step = 10.0
latitudes = { start = 50.0, stop = 90.0, step = 1.0 }

[output]
dir = "out/fig6"
formats = ["csv"]
"#;

const FIG7A: &str = r#"# North Atlantic coverage map of the reference shell, 20-degree mask.
version = 1

[shell]
pattern = "delta"
inclination_deg = 75.0
total_sats = 64
planes = 8
phasing = 3
altitude_km = 1000.0

[mask]
elevation_deg = 20.0

[region]
lat_min_deg = 50.0
lat_max_deg = 90.0
lon_min_deg = -80.0
lon_max_deg = 40.0
resolution_deg = 1.0

[output]
dir = "out/fig7a"
formats = ["csv", "geojson"]
"#;

const FIG7B: &str = r#"# North Atlantic coverage map of the reference shell, 40-degree mask.
version = 1

[shell]
pattern = "delta"
inclination_deg = 75.0
total_sats = 64
planes = 8
phasing = 3
altitude_km = 1000.0

[mask]
elevation_deg = 40.0

[region]
lat_min_deg = 50.0
lat_max_deg = 90.0
lon_min_deg = -80.0
lon_max_deg = 40.0
resolution_deg = 1.0

[output]
dir = "out/fig7b"
formats = ["csv", "geojson"]
"#;

const FIG7C: &str = r#"# North Atlantic coverage map of the reference shell, 60-degree mask.
version = 1

[shell]
pattern = "delta"
inclination_deg = 75.0
total_sats = 64
planes = 8
phasing = 3
altitude_km = 1000.0

[mask]
elevation_deg = 60.0

[region]
lat_min_deg = 50.0
lat_max_deg = 90.0
lon_min_deg = -80.0
lon_max_deg = 40.0
resolution_deg = 1.0

[output]
dir = "out/fig7c"
formats = ["csv", "geojson"]
"#;

const FIG9: &str = r#"# Inclination sweep of the reference shell at a 40-degree mask.
version = 1

[shell]
pattern = "delta"
inclination_deg = 75.0
total_sats = 64
planes = 8
phasing = 3
altitude_km = 1000.0

[sweep]
param = "inclination"
start = 55.0
stop = 90.0
step = 5.0
mask_deg = 40.0
latitudes = { start = 50.0, stop = 90.0, step = 1.0 }

[output]
dir = "out/fig9"
formats = ["csv"]
"#;

const FIG10A: &str = r#"# North Atlantic map with the reference shell re-inclined to 55 degrees.
version = 1

[shell]
pattern = "delta"
inclination_deg = 55.0
total_sats = 64
planes = 8
phasing = 3
altitude_km = 1000.0

[mask]
elevation_deg = 40.0

[region]
lat_min_deg = 50.0
lat_max_deg = 90.0
lon_min_deg = -80.0
lon_max_deg = 40.0
resolution_deg = 1.0

[output]
dir = "out/fig10a"
formats = ["csv", "geojson"]
"#;

const FIG10B: &str = r#"# North Atlantic map with the reference shell at its native 75 degrees.
version = 1

[shell]
pattern = "delta"
inclination_deg = 75.0
total_sats = 64
planes = 8
phasing = 3
altitude_km = 1000.0

[mask]
elevation_deg = 40.0

[region]
lat_min_deg = 50.0
lat_max_deg = 90.0
lon_min_deg = -80.0
lon_max_deg = 40.0
resolution_deg = 1.0

[output]
dir = "out/fig10b"
formats = ["csv", "geojson"]
"#;

const FIG10C: &str = r#"# North Atlantic map with the reference shell re-inclined to polar.
version = 1

[shell]
pattern = "delta"
inclination_deg = 90.0
total_sats = 64
planes = 8
phasing = 3
altitude_km = 1000.0

[mask]
elevation_deg = 40.0

[region]
lat_min_deg = 50.0
lat_max_deg = 90.0
lon_min_deg = -80.0
lon_max_deg = 40.0
resolution_deg = 1.0

[output]
dir = "out/fig10c"
formats = ["csv", "geojson"]
"#;

// ===== Single-shell approximations of flown systems =====

const IRIDIUM_NEXT: &str = r#"# Iridium NEXT as one Star shell (66/6, 86.4 deg, 778 km). F assumed 1.
version = 1

[shell]
pattern = "star"
inclination_deg = 86.4
total_sats = 66
planes = 6
phasing = 1
altitude_km = 778.0

[grid]
duration_s = 86400
step_s = 30

[mask]
elevation_deg = 10.0

[[sites]]
lat_deg = 45.0
lon_deg = 0.0

[[sites]]
lat_deg = 60.0
lon_deg = 0.0

[[sites]]
lat_deg = 72.0
lon_deg = 0.0

[output]
dir = "out/iridium-next"
formats = ["csv", "tle"]
"#;

const ONEWEB: &str = r#"# OneWeb as one Star shell (648/12, 87.9 deg, 1200 km). F assumed 1.
version = 1

[shell]
pattern = "star"
inclination_deg = 87.9
total_sats = 648
planes = 12
phasing = 1
altitude_km = 1200.0

[grid]
duration_s = 86400
step_s = 30

[mask]
elevation_deg = 10.0

[[sites]]
lat_deg = 45.0
lon_deg = 0.0

[[sites]]
lat_deg = 60.0
lon_deg = 0.0

[[sites]]
lat_deg = 72.0
lon_deg = 0.0

[output]
dir = "out/oneweb"
formats = ["csv", "tle"]
"#;

const GLOBALSTAR: &str = r#"# Globalstar as one Delta shell (24/8, 52 deg, 1414 km). F assumed 1.
version = 1

[shell]
pattern = "delta"
inclination_deg = 52.0
total_sats = 24
planes = 8
phasing = 1
altitude_km = 1414.0

[grid]
duration_s = 86400
step_s = 30

[mask]
elevation_deg = 10.0

[[sites]]
lat_deg = 25.0
lon_deg = 0.0

[[sites]]
lat_deg = 45.0
lon_deg = 0.0

[[sites]]
lat_deg = 60.0
lon_deg = 0.0

[output]
dir = "out/globalstar"
formats = ["csv", "tle"]
"#;

const STARLINK_SHELL1: &str = r#"# The first Starlink shell (1584/72, 53 deg, 550 km). F assumed 1.
version = 1

[shell]
pattern = "delta"
inclination_deg = 53.0
total_sats = 1584
planes = 72
phasing = 1
altitude_km = 550.0

[grid]
duration_s = 86400
step_s = 30

[mask]
elevation_deg = 25.0

[[sites]]
lat_deg = 25.0
lon_deg = 0.0

[[sites]]
lat_deg = 45.0
lon_deg = 0.0

[[sites]]
lat_deg = 53.0
lon_deg = 0.0

[output]
dir = "out/starlink-shell1"
formats = ["csv", "tle"]
"#;

/// Every built-in preset, in listing order.
pub const PRESETS: &[Preset] = &[
    Preset {
        name: "paper-fig6",
        summary: "Elevation sweep (0-70 deg) of the 75 deg 64/8/3 shell at 1000 km, lats 50-90 N",
        toml: FIG6,
    },
    Preset {
        name: "paper-fig7a",
        summary: "North Atlantic coverage map of the reference shell at a 20 deg mask",
        toml: FIG7A,
    },
    Preset {
        name: "paper-fig7b",
        summary: "North Atlantic coverage map of the reference shell at a 40 deg mask",
        toml: FIG7B,
    },
    Preset {
        name: "paper-fig7c",
        summary: "North Atlantic coverage map of the reference shell at a 60 deg mask",
        toml: FIG7C,
    },
    Preset {
        name: "paper-fig9",
        summary: "Inclination sweep (55-90 deg) of the 64/8/3 shell at a 40 deg mask",
        toml: FIG9,
    },
    Preset {
        name: "paper-fig10a",
        summary: "North Atlantic map at a 40 deg mask, reference shell re-inclined to 55 deg",
        toml: FIG10A,
    },
    Preset {
        name: "paper-fig10b",
        summary: "North Atlantic map at a 40 deg mask, shell at its native 75 deg",
        toml: FIG10B,
    },
    Preset {
        name: "paper-fig10c",
        summary: "North Atlantic map at a 40 deg mask, reference shell re-inclined to polar",
        toml: FIG10C,
    },
    Preset {
        name: "iridium-next",
        summary: "Star 86.4 deg 66/6 at 778 km; one-day quick run with TLE export",
        toml: IRIDIUM_NEXT,
    },
    Preset {
        name: "oneweb",
        summary: "Star 87.9 deg 648/12 at 1200 km; one-day quick run with TLE export",
        toml: ONEWEB,
    },
    Preset {
        name: "globalstar",
        summary: "Delta 52 deg 24/8 at 1414 km; one-day quick run with TLE export",
        toml: GLOBALSTAR,
    },
    Preset {
        name: "starlink-shell1",
        summary: "Delta 53 deg 1584/72 at 550 km; one-day quick run with TLE export",
        toml: STARLINK_SHELL1,
    },
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{resolve, Overrides, ScenarioFile};

    #[test]
    fn every_preset_parses_and_resolves() {
        for preset in PRESETS {
            let file: ScenarioFile = toml::from_str(preset.toml)
                .unwrap_or_else(|e| panic!("{} does not parse: {e}", preset.name));
            let scenario = resolve(file, preset.name, "0".repeat(64), &Overrides::default())
                .unwrap_or_else(|e| panic!("{} does not resolve: {e}", preset.name));
            assert!(
                !scenario.formats.is_empty(),
                "{} must request at least one output",
                preset.name
            );
        }
    }

    #[test]
    fn preset_names_are_unique() {
        let mut names: Vec<&str> = PRESETS.iter().map(|p| p.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), PRESETS.len(), "duplicate preset name");
    }

    #[test]
    fn find_locates_known_names_only() {
        assert!(find("paper-fig6").is_some());
        assert!(find("iridium-next").is_some());
        assert!(find("no-such-preset").is_none());
    }
}
