//! Walker shell definitions and their expansion into per-satellite elements.
//!
//! A shell is written `i:T/P/F`: inclination, total satellites, orbital
//! planes, and the phasing parameter controlling how slots in adjacent
//! planes are offset. Walker Delta spreads plane RAANs over 360 degrees,
//! Walker Star over 180 degrees.

use chrono::{DateTime, TimeZone, Utc};
use thiserror::Error;

use crate::geo::{EARTH_RADIUS_KM, MU_KM3_S2};

pub mod tle;

/// Errors from shell configuration.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("planes must divide the total satellite count: {planes} does not divide {total}")]
    PlanesDoNotDivideTotal { planes: u32, total: u32 },
    #[error("phasing must lie in [0, planes-1] = [0, {max}], got {got}")]
    PhasingOutOfRange { got: u32, max: u32 },
    #[error("inclination must lie in [0, 180) degrees, got {0}")]
    InclinationOutOfRange(f64),
    #[error("altitude must lie in (0, 2000] km, got {0}")]
    AltitudeOutOfRange(f64),
    #[error("a shell needs at least one plane and one satellite")]
    EmptyShell,
    #[error("epoch year {0} is outside the TLE-representable range 1957-2056")]
    EpochOutsideTleRange(i32),
}

/// RAAN spread of the shell's orbital planes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkerPattern {
    /// Planes spread over 360 degrees of RAAN.
    Delta,
    /// Planes spread over 180 degrees of RAAN (polar "street of coverage").
    Star,
}

impl WalkerPattern {
    /// Total RAAN span occupied by the shell's planes, degrees.
    pub fn raan_span_deg(self) -> f64 {
        match self {
            WalkerPattern::Delta => 360.0,
            WalkerPattern::Star => 180.0,
        }
    }
}

/// How the phasing parameter F maps to an argument-of-latitude shift
/// between satellites in adjacent planes.
///
/// The two conventions in circulation differ by a factor of T/P. With the
/// reference shell 64/8 they produce very different geometries: the
/// per-plane shift `F·360°/P` is an exact multiple of the 45-degree
/// in-plane spacing, so slots in all planes stay aligned, while the
/// classical per-satellite shift `F·360°/T` staggers the planes uniformly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhasingConvention {
    /// Adjacent planes shift by `F·360°/P` (Delta) or `F·180°/P` (Star).
    PerPlane,
    /// Adjacent planes shift by `F·360°/T` — the classical Walker
    /// definition, and the default.
    #[default]
    ClassicPerSat,
}

/// Walker shell: a single altitude/inclination layer of a constellation.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkerShell {
    pub pattern: WalkerPattern,
    pub inclination_deg: f64,
    /// Total satellite count T.
    pub total_sats: u32,
    /// Orbital plane count P; must divide T.
    pub planes: u32,
    /// Phasing parameter F in [0, P-1].
    pub phasing: u32,
    /// Orbit altitude above the spherical Earth, km, in (0, 2000].
    pub altitude_km: f64,
    /// Element epoch; positions at grid offset 0 refer to this instant.
    pub epoch: DateTime<Utc>,
    /// RAAN of plane 0, degrees.
    pub raan0_deg: f64,
    pub phasing_convention: PhasingConvention,
}

/// Default element epoch: fixed so identical configurations expand
/// identically across runs.
pub fn default_epoch() -> DateTime<Utc> {
    Utc.with_ymd_and_hms(2025, 1, 1, 0, 0, 0).unwrap()
}

impl WalkerShell {
    /// Shell with the default epoch, RAAN origin 0 and classical phasing.
    pub fn new(
        pattern: WalkerPattern,
        inclination_deg: f64,
        total_sats: u32,
        planes: u32,
        phasing: u32,
        altitude_km: f64,
    ) -> Result<Self, ConfigError> {
        let shell = Self {
            pattern,
            inclination_deg,
            total_sats,
            planes,
            phasing,
            altitude_km,
            epoch: default_epoch(),
            raan0_deg: 0.0,
            phasing_convention: PhasingConvention::default(),
        };
        shell.validate()?;
        Ok(shell)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.total_sats == 0 || self.planes == 0 {
            return Err(ConfigError::EmptyShell);
        }
        if self.total_sats % self.planes != 0 {
            return Err(ConfigError::PlanesDoNotDivideTotal {
                planes: self.planes,
                total: self.total_sats,
            });
        }
        if self.phasing >= self.planes {
            return Err(ConfigError::PhasingOutOfRange {
                got: self.phasing,
                max: self.planes - 1,
            });
        }
        if !self.inclination_deg.is_finite()
            || !(0.0..180.0).contains(&self.inclination_deg)
        {
            return Err(ConfigError::InclinationOutOfRange(self.inclination_deg));
        }
        if !self.altitude_km.is_finite()
            || self.altitude_km <= 0.0
            || self.altitude_km > 2000.0
        {
            return Err(ConfigError::AltitudeOutOfRange(self.altitude_km));
        }
        Ok(())
    }

    pub fn sats_per_plane(&self) -> u32 {
        self.total_sats / self.planes
    }

    pub fn semi_major_axis_km(&self) -> f64 {
        EARTH_RADIUS_KM + self.altitude_km
    }

    /// Argument-of-latitude shift between adjacent planes, degrees.
    pub fn inter_plane_shift_deg(&self) -> f64 {
        match self.phasing_convention {
            PhasingConvention::PerPlane => {
                self.phasing as f64 * self.pattern.raan_span_deg() / self.planes as f64
            }
            PhasingConvention::ClassicPerSat => {
                self.phasing as f64 * 360.0 / self.total_sats as f64
            }
        }
    }

    /// Expand the shell into per-satellite elements, plane-major then
    /// slot-minor.
    pub fn expand(&self) -> Result<Vec<SatelliteElement>, ConfigError> {
        self.validate()?;
        let per_plane = self.sats_per_plane();
        let raan_step = self.pattern.raan_span_deg() / self.planes as f64;
        let slot_step = 360.0 / per_plane as f64;
        let plane_shift = self.inter_plane_shift_deg();
        let a = self.semi_major_axis_km();
        let n = (MU_KM3_S2 / (a * a * a)).sqrt();

        let mut elements = Vec::with_capacity(self.total_sats as usize);
        for plane in 0..self.planes {
            let raan = (self.raan0_deg + plane as f64 * raan_step).rem_euclid(360.0);
            for slot in 0..per_plane {
                let u0 = (plane as f64 * plane_shift + slot as f64 * slot_step)
                    .rem_euclid(360.0);
                elements.push(SatelliteElement {
                    sat_id: SatId { plane, slot },
                    raan_deg: raan,
                    initial_arg_latitude_deg: u0,
                    inclination_deg: self.inclination_deg,
                    semi_major_axis_km: a,
                    mean_motion_rad_s: n,
                });
            }
        }
        Ok(elements)
    }

    /// Orbital period 2π·sqrt(a³/μ), seconds.
    pub fn period_s(&self) -> f64 {
        let a = self.semi_major_axis_km();
        2.0 * std::f64::consts::PI * (a * a * a / MU_KM3_S2).sqrt()
    }
}

/// Satellite identity inside a shell: plane index and in-plane slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SatId {
    pub plane: u32,
    pub slot: u32,
}

impl std::fmt::Display for SatId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "p{:02}s{:02}", self.plane, self.slot)
    }
}

/// Orbital elements of one circular-orbit satellite at the shell epoch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatelliteElement {
    pub sat_id: SatId,
    /// Right ascension of the ascending node, degrees in [0, 360).
    pub raan_deg: f64,
    /// Argument of latitude at epoch, degrees in [0, 360).
    pub initial_arg_latitude_deg: f64,
    pub inclination_deg: f64,
    pub semi_major_axis_km: f64,
    /// Mean motion sqrt(μ/a³), rad/s.
    pub mean_motion_rad_s: f64,
}
