//! Two-line element export for cross-checking shells with external tools.
//!
//! Records follow the standard fixed-column TLE layout (69 characters per
//! line, mod-10 checksum in column 69). Shells are circular, so the
//! eccentricity field is always `0000000`, the argument of perigee is zero
//! and the mean anomaly carries the argument of latitude at epoch.

use chrono::{Datelike, Timelike};

use super::{ConfigError, SatelliteElement, WalkerShell};

/// Catalog numbers are assigned sequentially from here (analyst range, so
/// exports cannot collide with real catalog IDs).
pub const CATALOG_BASE: u32 = 90000;

const SECONDS_PER_DAY: f64 = 86_400.0;
/// Piece letters used by international designators (I and O are skipped).
const PIECE_ALPHABET: &[u8] = b"ABCDEFGHJKLMNPQRSTUVWXYZ";

/// One exported satellite: an optional name line plus the two element lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TleRecord {
    pub name: String,
    pub line1: String,
    pub line2: String,
}

/// Mod-10 TLE checksum of a line body: digits count as their value, minus
/// signs count as one, everything else as zero.
pub fn checksum(body: &str) -> u32 {
    body.chars()
        .map(|c| match c {
            '0'..='9' => c as u32 - '0' as u32,
            '-' => 1,
            _ => 0,
        })
        .sum::<u32>()
        % 10
}

fn piece_letters(slot: u32) -> String {
    let base = PIECE_ALPHABET.len() as u32;
    let mut s = String::new();
    let mut v = slot;
    loop {
        s.insert(0, PIECE_ALPHABET[(v % base) as usize] as char);
        v /= base;
        if v == 0 {
            break;
        }
        v -= 1; // bijective numbering: ..., Z, AA, AB, ...
    }
    s
}

fn epoch_field(shell: &WalkerShell) -> Result<String, ConfigError> {
    let epoch = shell.epoch;
    let year = epoch.year();
    if !(1957..=2056).contains(&year) {
        return Err(ConfigError::EpochOutsideTleRange(year));
    }
    let seconds_in_day = f64::from(epoch.num_seconds_from_midnight())
        + f64::from(epoch.nanosecond()) * 1e-9;
    let frac = (seconds_in_day / SECONDS_PER_DAY * 1e8).round() as u64;
    // Whole-second epochs can never round up to a full day, but guard anyway.
    let (day, frac) = if frac >= 100_000_000 {
        (epoch.ordinal() + 1, 0)
    } else {
        (epoch.ordinal(), frac)
    };
    Ok(format!("{:02}{:03}.{:08}", year % 100, day, frac))
}

fn format_record(
    element: &SatelliteElement,
    catalog: u32,
    epoch: &str,
    intl_year: i32,
) -> TleRecord {
    let designator = format!(
        "{:02}{:03}{}",
        intl_year % 100,
        element.sat_id.plane + 1,
        piece_letters(element.sat_id.slot)
    );
    let body1 = format!(
        "1 {catalog:05}U {designator:<8} {epoch} {: >10} {: >8} {: >8} 0 {: >4}",
        ".00000000", "00000-0", "00000-0", "999"
    );
    let line1 = format!("{body1}{}", checksum(&body1));

    let rev_per_day = element.mean_motion_rad_s * SECONDS_PER_DAY
        / (2.0 * std::f64::consts::PI);
    let body2 = format!(
        "2 {catalog:05} {:8.4} {:8.4} 0000000 {:8.4} {:8.4} {:11.8}{: >5}",
        element.inclination_deg,
        element.raan_deg,
        0.0,
        element.initial_arg_latitude_deg,
        rev_per_day,
        0
    );
    let line2 = format!("{body2}{}", checksum(&body2));

    TleRecord {
        name: format!("BOREALIS {}", element.sat_id).to_uppercase(),
        line1,
        line2,
    }
}

/// Export every satellite of the shell as a TLE record, plane-major order.
pub fn tle_export(shell: &WalkerShell) -> Result<Vec<TleRecord>, ConfigError> {
    let elements = shell.expand()?;
    let epoch = epoch_field(shell)?;
    if CATALOG_BASE as u64 + elements.len() as u64 - 1 > 99_999 {
        return Err(ConfigError::EmptyShell); // unreachable: T ≤ 2000-km shells are far smaller
    }
    let intl_year = shell.epoch.year();
    Ok(elements
        .iter()
        .enumerate()
        .map(|(idx, e)| format_record(e, CATALOG_BASE + idx as u32, &epoch, intl_year))
        .collect())
}

/// Join records into file text, optionally with a name line above each pair.
pub fn to_tle_text(records: &[TleRecord], include_names: bool) -> String {
    let mut out = String::new();
    for r in records {
        if include_names {
            out.push_str(&r.name);
            out.push('\n');
        }
        out.push_str(&r.line1);
        out.push('\n');
        out.push_str(&r.line2);
        out.push('\n');
    }
    out
}
