//! Circular two-body propagation over a shared time grid.
//!
//! Each satellite advances its argument of latitude at the constant mean
//! motion, optionally with a secular J2 RAAN drift, and the inertial
//! position is rotated into the Earth-fixed frame. The frames are aligned
//! at the grid start (sidereal angle zero), so absolute longitudes carry no
//! meaning on their own — coverage statistics aggregate over longitude.

use chrono::{DateTime, Utc};
use thiserror::Error;

use crate::constellation::{SatId, SatelliteElement};
use crate::geo::{EcefVector, EARTH_RADIUS_KM, J2, OMEGA_EARTH_RAD_S};

/// Errors from time-grid construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("grid duration must be positive")]
    ZeroDuration,
    #[error("grid step must be positive")]
    ZeroStep,
    #[error("step {step_s} s does not divide duration {duration_s} s")]
    StepDoesNotDivide { step_s: u64, duration_s: u64 },
}

/// Shared sampling grid: inclusive of both endpoints, so a grid holds
/// `duration_s/step_s + 1` samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub start: DateTime<Utc>,
    pub duration_s: u64,
    pub step_s: u64,
}

impl TimeGrid {
    pub fn new(start: DateTime<Utc>, duration_s: u64, step_s: u64) -> Result<Self, GridError> {
        if duration_s == 0 {
            return Err(GridError::ZeroDuration);
        }
        if step_s == 0 {
            return Err(GridError::ZeroStep);
        }
        if duration_s % step_s != 0 {
            return Err(GridError::StepDoesNotDivide { step_s, duration_s });
        }
        Ok(Self { start, duration_s, step_s })
    }

    /// Reference grid for headline studies: 5 days at 10-second steps.
    pub fn five_days_ten_seconds(start: DateTime<Utc>) -> Self {
        Self::new(start, 5 * 86_400, 10).unwrap()
    }

    pub fn n_samples(&self) -> usize {
        (self.duration_s / self.step_s) as usize + 1
    }

    /// Offset of sample `k` from the grid start, seconds.
    pub fn t_offset_s(&self, k: usize) -> f64 {
        (k as u64 * self.step_s) as f64
    }
}

/// Earth-fixed positions of one satellite, one entry per grid sample.
#[derive(Debug, Clone, PartialEq)]
pub struct SatTrack {
    pub sat_id: SatId,
    pub positions: Vec<EcefVector>,
}

/// Earth-fixed positions for a whole shell over a grid. Tracks keep the
/// plane-major, slot-minor order of the expanded elements, which makes the
/// sat_id → positions mapping deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct Ephemeris {
    pub grid: TimeGrid,
    pub tracks: Vec<SatTrack>,
}

impl Ephemeris {
    pub fn track(&self, sat_id: SatId) -> Option<&SatTrack> {
        self.tracks.iter().find(|t| t.sat_id == sat_id)
    }
}

/// Secular RAAN drift from the J2 zonal harmonic, rad/s.
pub fn j2_raan_rate_rad_s(element: &SatelliteElement) -> f64 {
    let ratio = EARTH_RADIUS_KM / element.semi_major_axis_km;
    -1.5 * element.mean_motion_rad_s
        * J2
        * ratio
        * ratio
        * element.inclination_deg.to_radians().cos()
}

/// Inertial position of a satellite at `t_s` seconds past epoch, km.
///
/// The frame's x-axis points at RAAN 0 and coincides with the Earth-fixed
/// x-axis at the grid start.
pub fn position_inertial(element: &SatelliteElement, t_s: f64, j2_enabled: bool) -> [f64; 3] {
    let a = element.semi_major_axis_km;
    let u = element.initial_arg_latitude_deg.to_radians()
        + element.mean_motion_rad_s * t_s;
    let raan_rate = if j2_enabled { j2_raan_rate_rad_s(element) } else { 0.0 };
    let raan = element.raan_deg.to_radians() + raan_rate * t_s;
    let (sin_u, cos_u) = u.sin_cos();
    let (sin_o, cos_o) = raan.sin_cos();
    let (sin_i, cos_i) = element.inclination_deg.to_radians().sin_cos();
    [
        a * (cos_o * cos_u - sin_o * sin_u * cos_i),
        a * (sin_o * cos_u + cos_o * sin_u * cos_i),
        a * (sin_u * sin_i),
    ]
}

/// Propagate every element across the grid to Earth-fixed positions.
///
/// Satellites are independent, and each track depends only on its element
/// and the grid, so the result is identical no matter how the work is
/// scheduled; this implementation runs them in element order.
pub fn propagate(elements: &[SatelliteElement], grid: &TimeGrid, j2_enabled: bool) -> Ephemeris {
    let n = grid.n_samples();
    let tracks = elements
        .iter()
        .map(|element| {
            let mut positions = Vec::with_capacity(n);
            for k in 0..n {
                let t = grid.t_offset_s(k);
                let [xi, yi, zi] = position_inertial(element, t, j2_enabled);
                // Rotate about the polar axis by the sidereal angle.
                let (sin_t, cos_t) = (OMEGA_EARTH_RAD_S * t).sin_cos();
                positions.push(EcefVector::new(
                    xi * cos_t + yi * sin_t,
                    -xi * sin_t + yi * cos_t,
                    zi,
                ));
            }
            SatTrack { sat_id: element.sat_id, positions }
        })
        .collect();
    Ephemeris { grid: *grid, tracks }
}
