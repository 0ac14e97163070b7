//! Shared oracles for the integration suites: a bisection footprint solver
//! and an independent TLE layout/checksum validator. Both are deliberately
//! written against first principles (vector geometry, byte arithmetic)
//! rather than reusing the production formulas they exist to check.
#![allow(dead_code)]

use borealis_core::geo::EARTH_RADIUS_KM;

/// Footprint radius found by bisecting the Earth-central angle until the
/// geometric elevation at the site matches the mask. Uses only planar
/// vector arithmetic; shares no trig identity with the closed form.
pub fn footprint_radius_oracle_km(altitude_km: f64, elevation_deg: f64) -> f64 {
    let r = EARTH_RADIUS_KM;
    // Site at (r, 0); satellite on the same great circle at central angle
    // gamma. Elevation is the angle of the line-of-sight above the local
    // horizon, whose "up" direction at the site is (1, 0).
    let elevation_at = |gamma: f64| -> f64 {
        let sx = (r + altitude_km) * gamma.cos();
        let sy = (r + altitude_km) * gamma.sin();
        let (dx, dy) = (sx - r, sy);
        (dx / (dx * dx + dy * dy).sqrt()).asin()
    };
    let target = elevation_deg.to_radians();
    let (mut lo, mut hi) = (0.0_f64, std::f64::consts::FRAC_PI_2);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if elevation_at(mid) >= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi) * r
}

/// Mod-10 TLE checksum computed by a bare byte walk: digits count as
/// themselves, '-' counts as one, everything else as zero.
pub fn independent_checksum(body: &str) -> u32 {
    body.bytes()
        .map(|b| match b {
            b'0'..=b'9' => u32::from(b - b'0'),
            b'-' => 1,
            _ => 0,
        })
        .sum::<u32>()
        % 10
}

/// Column-layout and checksum validation of one TLE record. Returns all
/// problems found (empty = valid). Field positions follow the fixed
/// 69-column card format.
pub fn tle_issues(name: &str, line1: &str, line2: &str) -> Vec<String> {
    let mut issues = Vec::new();
    if name.len() > 24 {
        issues.push(format!("name longer than 24 chars: {name:?}"));
    }
    for (label, line) in [("line1", line1), ("line2", line2)] {
        if !line.is_ascii() {
            issues.push(format!("{label} contains non-ASCII bytes"));
            continue;
        }
        if line.len() != 69 {
            issues.push(format!("{label} length {} != 69", line.len()));
            continue;
        }
        let (body, check) = line.split_at(68);
        let expected = independent_checksum(body);
        if check != expected.to_string() {
            issues.push(format!("{label} checksum {check} != computed {expected}"));
        }
    }
    if line1.len() != 69 || line2.len() != 69 {
        return issues; // column checks below assume full-width lines
    }
    if !line1.starts_with("1 ") {
        issues.push("line1 must start with \"1 \"".into());
    }
    if !line2.starts_with("2 ") {
        issues.push("line2 must start with \"2 \"".into());
    }
    if line1[2..7] != line2[2..7] {
        issues.push(format!(
            "catalog numbers differ: {:?} vs {:?}",
            &line1[2..7],
            &line2[2..7]
        ));
    }
    if !line1[2..7].bytes().all(|b| b.is_ascii_digit()) {
        issues.push(format!("catalog field not numeric: {:?}", &line1[2..7]));
    }
    if line1.as_bytes()[7] != b'U' {
        issues.push("classification column must be 'U'".into());
    }
    if &line2[26..33] != "0000000" {
        issues.push(format!(
            "eccentricity field must be seven zeros, got {:?}",
            &line2[26..33]
        ));
    }
    let numeric = |field: &str, what: &str, lo: f64, hi: f64, issues: &mut Vec<String>| {
        match field.trim().parse::<f64>() {
            Ok(v) if (lo..hi).contains(&v) => {}
            Ok(v) => issues.push(format!("{what} {v} outside [{lo}, {hi})")),
            Err(_) => issues.push(format!("{what} not numeric: {field:?}")),
        }
    };
    numeric(&line2[8..16], "inclination", 0.0, 180.0, &mut issues);
    numeric(&line2[17..25], "raan", 0.0, 360.0, &mut issues);
    numeric(&line2[34..42], "argument of perigee", 0.0, 360.0, &mut issues);
    numeric(&line2[43..51], "mean anomaly", 0.0, 360.0, &mut issues);
    numeric(&line2[52..63], "mean motion", 0.1, 20.0, &mut issues);
    // Epoch field: YYDDD.FFFFFFFF
    let epoch = &line1[18..32];
    if !(epoch.len() == 14 && epoch.as_bytes()[5] == b'.')
        || !epoch[..5].bytes().all(|b| b.is_ascii_digit())
        || !epoch[6..].bytes().all(|b| b.is_ascii_digit())
    {
        issues.push(format!("epoch field malformed: {epoch:?}"));
    } else {
        let day: f64 = epoch[2..].parse().unwrap_or(0.0);
        if !(1.0..367.0).contains(&day) {
            issues.push(format!("epoch day-of-year {day} outside [1, 367)"));
        }
    }
    issues
}
