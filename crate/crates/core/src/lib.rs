//! Constellation coverage analysis for high-latitude regions.
//!
//! The crate models Walker Delta / Walker Star shells of circular LEO orbits
//! over a spherical Earth and derives the quantities a coverage study needs:
//!
//! - footprint radius, slant range and constellation sizing bounds ([`geo`])
//! - shell expansion into per-satellite elements and TLE export
//!   ([`constellation`])
//! - two-body propagation to Earth-fixed positions on a shared time grid
//!   ([`propagation`])
//! - per-site elevation and visibility timelines ([`visibility`])
//! - coverage probability, mean visible count, revisit times, latitude
//!   sweeps and geographic coverage grids ([`metrics`])
//! - free-space path loss, table-driven atmospheric excess attenuation and
//!   line-of-sight probability ([`link_budget`])
//!
//! Everything is deterministic: the same inputs produce bit-identical
//! outputs, independent of evaluation order. Distances are kilometres and
//! angles are degrees at every public boundary unless a name says otherwise.

pub mod constellation;
pub mod geo;
pub mod link_budget;
pub mod metrics;
pub mod propagation;
pub mod visibility;

pub use constellation::{PhasingConvention, SatId, SatelliteElement, WalkerPattern, WalkerShell};
pub use geo::{EcefVector, GeoPoint};
pub use link_budget::{
    AttenuationTable, Environment, LinkBudgetInputs, LinkBudgetResult, LosTable,
};
pub use metrics::{CoverageGrid, CoverageStats, Region, RevisitEvent};
pub use propagation::{Ephemeris, TimeGrid};
pub use visibility::{ElevationMask, VisibilityTimeline};
