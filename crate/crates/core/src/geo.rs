//! Physical constants and spherical-Earth geometry.
//!
//! The Earth is a sphere of radius [`EARTH_RADIUS_KM`] throughout; no
//! flattening, no terrain. That keeps every derived quantity closed-form
//! and testable against an independent numeric solution of the
//! site/satellite/Earth-centre triangle.

use std::f64::consts::{FRAC_PI_2, PI};

use thiserror::Error;

// ===== Physical constants =====

/// Earth radius, km (spherical model).
pub const EARTH_RADIUS_KM: f64 = 6378.0;
/// Earth surface area, km².
pub const EARTH_SURFACE_AREA_KM2: f64 = 510_072_000.0;
/// Geocentric gravitational constant, km³/s².
pub const MU_KM3_S2: f64 = 398_600.4418;
/// Earth rotation rate, rad/s.
pub const OMEGA_EARTH_RAD_S: f64 = 7.292_115_9e-5;
/// Speed of light, km/s.
pub const SPEED_OF_LIGHT_KM_S: f64 = 299_792.458;
/// Second zonal harmonic of the geopotential (used by the optional
/// secular RAAN drift in propagation).
pub const J2: f64 = 1.082_63e-3;

/// Errors from geometric preconditions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeoError {
    #[error("altitude must be positive, got {0} km")]
    AltitudeNotPositive(f64),
    #[error("elevation must lie in [0, 90] degrees, got {0}")]
    ElevationOutOfRange(f64),
    #[error("latitude must lie in [-90, 90] degrees, got {0}")]
    LatitudeOutOfRange(f64),
    #[error("site altitude must be non-negative, got {0} km")]
    SiteAltitudeNegative(f64),
    #[error("coordinates must be finite")]
    NonFinite,
    #[error("footprint radius is zero at 90 degrees elevation; the satellite count is unbounded")]
    UnboundedCoverage,
}

// ===== Coordinate types =====

/// Ground point on the spherical Earth. Construct through [`GeoPoint::new`],
/// which validates latitude/altitude and normalizes longitude into
/// [-180, 180).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeoPoint {
    lat_deg: f64,
    lon_deg: f64,
    alt_km: f64,
}

impl GeoPoint {
    pub fn new(lat_deg: f64, lon_deg: f64, alt_km: f64) -> Result<Self, GeoError> {
        if !(lat_deg.is_finite() && lon_deg.is_finite() && alt_km.is_finite()) {
            return Err(GeoError::NonFinite);
        }
        if !(-90.0..=90.0).contains(&lat_deg) {
            return Err(GeoError::LatitudeOutOfRange(lat_deg));
        }
        if alt_km < 0.0 {
            return Err(GeoError::SiteAltitudeNegative(alt_km));
        }
        let lon_deg = (lon_deg + 180.0).rem_euclid(360.0) - 180.0;
        Ok(Self { lat_deg, lon_deg, alt_km })
    }

    /// Sea-level point, the common case for coverage studies.
    pub fn at_sea_level(lat_deg: f64, lon_deg: f64) -> Result<Self, GeoError> {
        Self::new(lat_deg, lon_deg, 0.0)
    }

    pub fn lat_deg(&self) -> f64 {
        self.lat_deg
    }

    pub fn lon_deg(&self) -> f64 {
        self.lon_deg
    }

    pub fn alt_km(&self) -> f64 {
        self.alt_km
    }

    /// Earth-fixed Cartesian position of the point.
    pub fn to_ecef(&self) -> EcefVector {
        geodetic_to_ecef(self)
    }
}

/// Earth-centred, Earth-fixed Cartesian position, km.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EcefVector {
    pub x_km: f64,
    pub y_km: f64,
    pub z_km: f64,
}

impl EcefVector {
    pub fn new(x_km: f64, y_km: f64, z_km: f64) -> Self {
        Self { x_km, y_km, z_km }
    }

    pub fn dot(&self, other: &EcefVector) -> f64 {
        self.x_km * other.x_km + self.y_km * other.y_km + self.z_km * other.z_km
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn sub(&self, other: &EcefVector) -> EcefVector {
        EcefVector::new(
            self.x_km - other.x_km,
            self.y_km - other.y_km,
            self.z_km - other.z_km,
        )
    }

    /// Geocentric latitude of the position, degrees.
    pub fn geocentric_lat_deg(&self) -> f64 {
        (self.z_km / self.norm()).asin().to_degrees()
    }
}

/// Spherical mapping of a ground point to Earth-fixed Cartesian axes
/// (x towards lat 0/lon 0, z towards the north pole).
pub fn geodetic_to_ecef(p: &GeoPoint) -> EcefVector {
    let lat = p.lat_deg.to_radians();
    let lon = p.lon_deg.to_radians();
    let r = EARTH_RADIUS_KM + p.alt_km;
    EcefVector::new(
        r * lat.cos() * lon.cos(),
        r * lat.cos() * lon.sin(),
        r * lat.sin(),
    )
}

// ===== Footprint geometry =====

/// Solved triangle behind a footprint computation: `alpha` at the ground
/// point, `beta` at the satellite, `gamma` at the Earth centre. The
/// footprint radius is the arc `gamma` subtends on the surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FootprintSolution {
    pub alpha_rad: f64,
    pub beta_rad: f64,
    pub gamma_rad: f64,
    pub radius_km: f64,
}

fn check_altitude_elevation(alt_km: f64, eps_deg: f64) -> Result<(), GeoError> {
    if !alt_km.is_finite() || alt_km <= 0.0 {
        return Err(GeoError::AltitudeNotPositive(alt_km));
    }
    if !eps_deg.is_finite() || !(0.0..=90.0).contains(&eps_deg) {
        return Err(GeoError::ElevationOutOfRange(eps_deg));
    }
    Ok(())
}

/// Complete triangle solution for a satellite at altitude `alt_km` seen at
/// elevation `eps_deg` from the footprint edge.
///
/// The ground-point angle between the local horizon-tangent ray and the
/// Earth-centre direction is `alpha = 90° + eps`; the law of sines gives the
/// satellite angle `beta`, and the central angle follows from the angle sum.
pub fn footprint_solution(alt_km: f64, eps_deg: f64) -> Result<FootprintSolution, GeoError> {
    check_altitude_elevation(alt_km, eps_deg)?;
    let eps = eps_deg.to_radians();
    let alpha = FRAC_PI_2 + eps;
    let beta = (EARTH_RADIUS_KM * eps.cos() / (EARTH_RADIUS_KM + alt_km)).asin();
    let gamma = (PI - alpha - beta).max(0.0);
    Ok(FootprintSolution {
        alpha_rad: alpha,
        beta_rad: beta,
        gamma_rad: gamma,
        radius_km: gamma * EARTH_RADIUS_KM,
    })
}

/// Radius of the ground footprint inside which a satellite at `alt_km`
/// appears at or above elevation `eps_deg`, km.
///
/// Closed form: `r = (arccos(R_e·cos ε / (R_e + h)) − ε) · R_e`.
pub fn footprint_radius_km(alt_km: f64, eps_deg: f64) -> Result<f64, GeoError> {
    check_altitude_elevation(alt_km, eps_deg)?;
    let eps = eps_deg.to_radians();
    let cos_ratio = EARTH_RADIUS_KM * eps.cos() / (EARTH_RADIUS_KM + alt_km);
    Ok(((cos_ratio.acos() - eps) * EARTH_RADIUS_KM).max(0.0))
}

/// Straight-line distance from a ground site to a satellite at altitude
/// `alt_km` seen at elevation `eps_deg`, km.
///
/// Closed form: `d = sqrt((R_e+h)² − R_e²·cos²ε) − R_e·sin ε`.
pub fn slant_range_km(alt_km: f64, eps_deg: f64) -> Result<f64, GeoError> {
    check_altitude_elevation(alt_km, eps_deg)?;
    let eps = eps_deg.to_radians();
    let r_sat = EARTH_RADIUS_KM + alt_km;
    let cos_term = EARTH_RADIUS_KM * eps.cos();
    Ok((r_sat * r_sat - cos_term * cos_term).sqrt() - EARTH_RADIUS_KM * eps.sin())
}

/// Lower bound on the satellites needed for seamless global coverage:
/// the Earth's surface area divided by one footprint disc, rounded up.
///
/// The bound ignores footprint overlap, so real constellations need more;
/// it is exactly the sizing curve a feasibility sketch wants.
pub fn min_satellites_lower_bound(alt_km: f64, eps_deg: f64) -> Result<u64, GeoError> {
    let r = footprint_radius_km(alt_km, eps_deg)?;
    if r <= 0.0 {
        return Err(GeoError::UnboundedCoverage);
    }
    Ok((EARTH_SURFACE_AREA_KM2 / (PI * r * r)).ceil() as u64)
}
