//! Per-site elevation geometry and visibility timelines.
//!
//! A satellite is visible when its elevation above the site's local
//! horizon reaches the mask; the boundary case counts as visible (the
//! comparison is `>=`). Elevation is measured against the radial up-vector
//! of the spherical Earth.

use thiserror::Error;

use crate::geo::{EcefVector, GeoPoint};
use crate::propagation::{Ephemeris, TimeGrid};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VisibilityError {
    #[error("elevation mask must lie in [0, 90] degrees, got {0}")]
    MaskOutOfRange(f64),
    #[error("satellite and site positions coincide")]
    CoincidentPositions,
    #[error("site position must have positive norm")]
    SiteAtOrigin,
}

/// Minimum elevation for a satellite to count as visible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElevationMask {
    eps_deg: f64,
}

impl ElevationMask {
    pub fn new(eps_deg: f64) -> Result<Self, VisibilityError> {
        if !eps_deg.is_finite() || !(0.0..=90.0).contains(&eps_deg) {
            return Err(VisibilityError::MaskOutOfRange(eps_deg));
        }
        Ok(Self { eps_deg })
    }

    pub fn eps_deg(&self) -> f64 {
        self.eps_deg
    }

    /// Sine of the mask angle, the form the visibility kernel compares in.
    pub fn sin_eps(&self) -> f64 {
        self.eps_deg.to_radians().sin()
    }
}

/// Elevation of a satellite above a site's local horizon, degrees in
/// [-90, 90].
pub fn elevation_of(sat: EcefVector, site: EcefVector) -> Result<f64, VisibilityError> {
    let site_norm = site.norm();
    if site_norm <= 0.0 {
        return Err(VisibilityError::SiteAtOrigin);
    }
    let los = sat.sub(&site);
    let range = los.norm();
    if range == 0.0 {
        return Err(VisibilityError::CoincidentPositions);
    }
    let sin_elevation = los.dot(&site) / (site_norm * range);
    Ok(sin_elevation.clamp(-1.0, 1.0).asin().to_degrees())
}

/// Visibility of a whole shell from one site against one mask.
#[derive(Debug, Clone, PartialEq)]
pub struct VisibilityTimeline {
    pub site: GeoPoint,
    pub mask: ElevationMask,
    pub grid: TimeGrid,
    /// Number of visible satellites per grid sample.
    pub n_visible: Vec<u16>,
    /// Per-satellite visibility flags (track-major), kept only on request.
    pub indicators: Option<Vec<Vec<bool>>>,
}

/// Per-sample counts of satellites at or above each mask.
///
/// `sin_masks` must be ascending sines of the mask angles; the returned
/// outer vector follows the same order. This is the hot loop of every
/// coverage statistic: one pass over the ephemeris serves all masks, and a
/// satellite below the site's horizon is rejected with a single dot
/// product (elevation ≥ 0 is equivalent to `pos·up ≥ |site|` for any mask
/// in [0°, 90°]).
pub(crate) fn mask_counts(eph: &Ephemeris, site: EcefVector, sin_masks: &[f64]) -> Vec<Vec<u16>> {
    debug_assert!(sin_masks.windows(2).all(|w| w[0] <= w[1]));
    let n = eph.grid.n_samples();
    let mut counts = vec![vec![0u16; n]; sin_masks.len()];
    let site_norm = site.norm();
    let ux = site.x_km / site_norm;
    let uy = site.y_km / site_norm;
    let uz = site.z_km / site_norm;

    for track in &eph.tracks {
        for (k, p) in track.positions.iter().enumerate() {
            let radial = p.x_km * ux + p.y_km * uy + p.z_km * uz;
            if radial < site_norm {
                continue;
            }
            let dx = p.x_km - site.x_km;
            let dy = p.y_km - site.y_km;
            let dz = p.z_km - site.z_km;
            let along_up = dx * ux + dy * uy + dz * uz;
            let range_sq = dx * dx + dy * dy + dz * dz;
            let sin_elevation = along_up / range_sq.sqrt();
            for (m, &sin_mask) in sin_masks.iter().enumerate() {
                if sin_elevation >= sin_mask {
                    counts[m][k] += 1;
                } else {
                    break;
                }
            }
        }
    }
    counts
}

/// Visibility timeline of `site` against `mask` over the ephemeris grid.
pub fn visibility_timeline(
    eph: &Ephemeris,
    site: &GeoPoint,
    mask: ElevationMask,
) -> VisibilityTimeline {
    let counts = mask_counts(eph, site.to_ecef(), &[mask.sin_eps()]);
    VisibilityTimeline {
        site: *site,
        mask,
        grid: eph.grid,
        n_visible: counts.into_iter().next().unwrap(),
        indicators: None,
    }
}

/// As [`visibility_timeline`], additionally retaining the per-satellite
/// indicator sequences. This path recomputes each elevation explicitly, so
/// it doubles as a cross-check of the counting kernel.
pub fn visibility_timeline_with_indicators(
    eph: &Ephemeris,
    site: &GeoPoint,
    mask: ElevationMask,
) -> VisibilityTimeline {
    let site_ecef = site.to_ecef();
    let n = eph.grid.n_samples();
    let mut indicators = Vec::with_capacity(eph.tracks.len());
    let mut n_visible = vec![0u16; n];
    for track in &eph.tracks {
        let mut flags = Vec::with_capacity(n);
        for (k, p) in track.positions.iter().enumerate() {
            let visible = elevation_of(*p, site_ecef)
                .map(|e| e >= mask.eps_deg())
                .unwrap_or(false);
            if visible {
                n_visible[k] += 1;
            }
            flags.push(visible);
        }
        indicators.push(flags);
    }
    VisibilityTimeline {
        site: *site,
        mask,
        grid: eph.grid,
        n_visible,
        indicators: Some(indicators),
    }
}
