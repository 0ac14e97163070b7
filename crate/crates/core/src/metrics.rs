//! Coverage statistics: availability, mean visible count, revisit times,
//! latitude sweeps and geographic coverage grids.
//!
//! All statistics reduce a visibility timeline per site. Latitude sweeps
//! aggregate each latitude over eight equally spaced longitudes — Earth
//! rotation makes coverage longitude-stationary over multi-day windows, so
//! the small fixed set is enough (and is itself checked by a property
//! test). Revisit gaps touching the first or last grid sample are
//! discarded: their true duration is unknowable from the window.

use thiserror::Error;

use crate::constellation::{ConfigError, WalkerShell};
use crate::geo::{GeoError, GeoPoint};
use crate::propagation::{propagate, GridError, TimeGrid};
use crate::visibility::{mask_counts, ElevationMask, VisibilityError, VisibilityTimeline};

/// Longitudes (degrees) a latitude sweep aggregates over.
pub const SWEEP_LONGITUDES_DEG: [f64; 8] =
    [0.0, 45.0, 90.0, 135.0, 180.0, 225.0, 270.0, 315.0];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Geo(#[from] GeoError),
    #[error(transparent)]
    Visibility(#[from] VisibilityError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("sweep and latitude axes must be non-empty")]
    EmptyAxis,
    #[error("region bounds invalid: {0}")]
    InvalidRegion(String),
    #[error("resolution must be positive and fit inside the region")]
    InvalidResolution,
}

// ===== Per-site statistics =====

/// One closed visibility gap: sight lost at `t_loss_s`, regained at
/// `t_recover_s` (offsets from the grid start).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RevisitEvent {
    pub t_loss_s: u64,
    pub t_recover_s: u64,
    pub tau_s: u64,
}

/// Summary of a site's visibility timeline.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageStats {
    /// Fraction of samples with at least one satellite visible.
    pub p_cover: f64,
    /// Arithmetic mean of the visible-satellite count.
    pub mean_visible: f64,
    /// Interior visibility gaps, ordered by loss time.
    pub revisit: Vec<RevisitEvent>,
    /// Lower median of the gap durations; absent when there are no gaps.
    pub tau_median_s: Option<u64>,
    /// Longest gap duration; absent when there are no gaps.
    pub tau_max_s: Option<u64>,
}

impl CoverageStats {
    pub fn from_timeline(tl: &VisibilityTimeline) -> Self {
        Self::from_counts(&tl.n_visible, tl.grid.step_s)
    }

    /// Reduce a per-sample visible-count sequence sampled every `step_s`
    /// seconds.
    pub fn from_counts(n_visible: &[u16], step_s: u64) -> Self {
        let total = n_visible.len();
        let covered = n_visible.iter().filter(|&&v| v >= 1).count();
        let sum: u64 = n_visible.iter().map(|&v| u64::from(v)).sum();
        let revisit = revisit_from_counts(n_visible, step_s);
        let mut taus: Vec<u64> = revisit.iter().map(|e| e.tau_s).collect();
        taus.sort_unstable();
        CoverageStats {
            p_cover: covered as f64 / total as f64,
            mean_visible: sum as f64 / total as f64,
            tau_median_s: lower_median(&taus),
            tau_max_s: taus.last().copied(),
            revisit,
        }
    }
}

/// Fraction of samples with at least one visible satellite.
pub fn coverage_probability(tl: &VisibilityTimeline) -> f64 {
    let covered = tl.n_visible.iter().filter(|&&v| v >= 1).count();
    covered as f64 / tl.n_visible.len() as f64
}

/// Arithmetic mean of the visible-satellite count.
pub fn mean_visible(tl: &VisibilityTimeline) -> f64 {
    let sum: u64 = tl.n_visible.iter().map(|&v| u64::from(v)).sum();
    sum as f64 / tl.n_visible.len() as f64
}

/// Interior visibility gaps of a timeline (see module docs for the
/// boundary rule).
pub fn revisit_times(tl: &VisibilityTimeline) -> Vec<RevisitEvent> {
    revisit_from_counts(&tl.n_visible, tl.grid.step_s)
}

fn revisit_from_counts(n_visible: &[u16], step_s: u64) -> Vec<RevisitEvent> {
    let mut events = Vec::new();
    let n = n_visible.len();
    let mut k = 0;
    while k < n {
        if n_visible[k] == 0 {
            let gap_start = k;
            while k < n && n_visible[k] == 0 {
                k += 1;
            }
            // Keep only gaps bounded by visibility on both sides.
            if gap_start > 0 && k < n {
                events.push(RevisitEvent {
                    t_loss_s: gap_start as u64 * step_s,
                    t_recover_s: k as u64 * step_s,
                    tau_s: (k - gap_start) as u64 * step_s,
                });
            }
        } else {
            k += 1;
        }
    }
    events
}

/// Lower median: element at index (n-1)/2 of the sorted list.
fn lower_median(sorted: &[u64]) -> Option<u64> {
    if sorted.is_empty() {
        None
    } else {
        Some(sorted[(sorted.len() - 1) / 2])
    }
}

// ===== Latitude sweeps =====

/// The swept parameter of a latitude sweep.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepAxis {
    /// Vary the elevation mask for a fixed shell.
    Elevation { masks_deg: Vec<f64> },
    /// Vary the shell inclination for a fixed mask.
    Inclination { inclinations_deg: Vec<f64>, mask_deg: f64 },
}

/// One (parameter value, latitude) aggregate of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub param_value: f64,
    pub lat_deg: f64,
    /// Coverage probability averaged over the sample longitudes.
    pub p_cover: f64,
    /// Mean visible count averaged over the sample longitudes.
    pub mean_visible: f64,
    /// Lower median of gap durations pooled across the sample longitudes.
    pub tau_median_s: Option<u64>,
    pub tau_max_s: Option<u64>,
    /// Total pooled gap count.
    pub n_events: usize,
}

/// Sweep output, rows ordered parameter-major then latitude.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    /// Name of the swept parameter: "elevation_deg" or "inclination_deg".
    pub param_name: &'static str,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn row(&self, param_value: f64, lat_deg: f64) -> Option<&SweepRow> {
        self.rows
            .iter()
            .find(|r| r.param_value == param_value && r.lat_deg == lat_deg)
    }
}

struct LonAggregate {
    p_sum: f64,
    mean_sum: f64,
    taus: Vec<u64>,
}

impl LonAggregate {
    fn new() -> Self {
        Self { p_sum: 0.0, mean_sum: 0.0, taus: Vec::new() }
    }

    fn add(&mut self, stats: &CoverageStats) {
        self.p_sum += stats.p_cover;
        self.mean_sum += stats.mean_visible;
        self.taus.extend(stats.revisit.iter().map(|e| e.tau_s));
    }

    fn into_row(mut self, param_value: f64, lat_deg: f64, n_lons: usize) -> SweepRow {
        self.taus.sort_unstable();
        SweepRow {
            param_value,
            lat_deg,
            p_cover: self.p_sum / n_lons as f64,
            mean_visible: self.mean_sum / n_lons as f64,
            tau_median_s: lower_median(&self.taus),
            tau_max_s: self.taus.last().copied(),
            n_events: self.taus.len(),
        }
    }
}

/// Sweep coverage statistics over latitudes for each parameter value.
///
/// Each (parameter, latitude) row aggregates the eight
/// [`SWEEP_LONGITUDES_DEG`] sites: probabilities and means are averaged,
/// revisit events are pooled before taking median and maximum.
pub fn latitude_sweep(
    shell: &WalkerShell,
    axis: &SweepAxis,
    lat_axis_deg: &[f64],
    grid: &TimeGrid,
    j2_enabled: bool,
) -> Result<SweepTable, MetricsError> {
    if lat_axis_deg.is_empty() {
        return Err(MetricsError::EmptyAxis);
    }
    match axis {
        SweepAxis::Elevation { masks_deg } => {
            elevation_sweep(shell, masks_deg, lat_axis_deg, grid, j2_enabled)
        }
        SweepAxis::Inclination { inclinations_deg, mask_deg } => {
            inclination_sweep(shell, inclinations_deg, *mask_deg, lat_axis_deg, grid, j2_enabled)
        }
    }
}

fn elevation_sweep(
    shell: &WalkerShell,
    masks_deg: &[f64],
    lat_axis_deg: &[f64],
    grid: &TimeGrid,
    j2_enabled: bool,
) -> Result<SweepTable, MetricsError> {
    if masks_deg.is_empty() {
        return Err(MetricsError::EmptyAxis);
    }
    let masks: Vec<ElevationMask> = masks_deg
        .iter()
        .map(|&m| ElevationMask::new(m))
        .collect::<Result<_, _>>()?;

    // The kernel wants ascending masks; remember where each one came from.
    let mut order: Vec<usize> = (0..masks.len()).collect();
    order.sort_by(|&a, &b| masks[a].eps_deg().total_cmp(&masks[b].eps_deg()));
    let sin_masks: Vec<f64> = order.iter().map(|&i| masks[i].sin_eps()).collect();

    let eph = propagate(&shell.expand()?, grid, j2_enabled);

    // aggregates[mask_index][lat_index], in caller's mask order
    let mut aggregates: Vec<Vec<LonAggregate>> = (0..masks.len())
        .map(|_| lat_axis_deg.iter().map(|_| LonAggregate::new()).collect())
        .collect();

    for (i_lat, &lat) in lat_axis_deg.iter().enumerate() {
        for &lon in &SWEEP_LONGITUDES_DEG {
            let site = GeoPoint::at_sea_level(lat, lon)?;
            let counts = mask_counts(&eph, site.to_ecef(), &sin_masks);
            for (sorted_idx, counts_for_mask) in counts.iter().enumerate() {
                let stats = CoverageStats::from_counts(counts_for_mask, grid.step_s);
                aggregates[order[sorted_idx]][i_lat].add(&stats);
            }
        }
    }

    let mut rows = Vec::with_capacity(masks.len() * lat_axis_deg.len());
    for (i_mask, per_lat) in aggregates.into_iter().enumerate() {
        for (i_lat, agg) in per_lat.into_iter().enumerate() {
            rows.push(agg.into_row(
                masks_deg[i_mask],
                lat_axis_deg[i_lat],
                SWEEP_LONGITUDES_DEG.len(),
            ));
        }
    }
    Ok(SweepTable { param_name: "elevation_deg", rows })
}

fn inclination_sweep(
    shell: &WalkerShell,
    inclinations_deg: &[f64],
    mask_deg: f64,
    lat_axis_deg: &[f64],
    grid: &TimeGrid,
    j2_enabled: bool,
) -> Result<SweepTable, MetricsError> {
    if inclinations_deg.is_empty() {
        return Err(MetricsError::EmptyAxis);
    }
    let mask = ElevationMask::new(mask_deg)?;
    let mut rows = Vec::with_capacity(inclinations_deg.len() * lat_axis_deg.len());
    for &incl in inclinations_deg {
        let mut variant = shell.clone();
        variant.inclination_deg = incl;
        variant.validate()?;
        let eph = propagate(&variant.expand()?, grid, j2_enabled);
        for &lat in lat_axis_deg {
            let mut agg = LonAggregate::new();
            for &lon in &SWEEP_LONGITUDES_DEG {
                let site = GeoPoint::at_sea_level(lat, lon)?;
                let counts = mask_counts(&eph, site.to_ecef(), &[mask.sin_eps()]);
                agg.add(&CoverageStats::from_counts(&counts[0], grid.step_s));
            }
            rows.push(agg.into_row(incl, lat, SWEEP_LONGITUDES_DEG.len()));
        }
    }
    Ok(SweepTable { param_name: "inclination_deg", rows })
}

// ===== Geographic coverage grids =====

/// Rectangular latitude/longitude window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub lat_min_deg: f64,
    pub lat_max_deg: f64,
    pub lon_min_deg: f64,
    pub lon_max_deg: f64,
}

impl Region {
    pub fn new(
        lat_min_deg: f64,
        lat_max_deg: f64,
        lon_min_deg: f64,
        lon_max_deg: f64,
    ) -> Result<Self, MetricsError> {
        let r = Self { lat_min_deg, lat_max_deg, lon_min_deg, lon_max_deg };
        if !(lat_min_deg.is_finite()
            && lat_max_deg.is_finite()
            && lon_min_deg.is_finite()
            && lon_max_deg.is_finite())
        {
            return Err(MetricsError::InvalidRegion("bounds must be finite".into()));
        }
        if !(-90.0..=90.0).contains(&lat_min_deg) || !(-90.0..=90.0).contains(&lat_max_deg) {
            return Err(MetricsError::InvalidRegion(
                "latitudes must lie in [-90, 90]".into(),
            ));
        }
        if lat_min_deg >= lat_max_deg {
            return Err(MetricsError::InvalidRegion(
                "lat_min must be below lat_max".into(),
            ));
        }
        if lon_min_deg >= lon_max_deg || lon_max_deg - lon_min_deg > 360.0 {
            return Err(MetricsError::InvalidRegion(
                "lon_min must be below lon_max, spanning at most 360 degrees".into(),
            ));
        }
        Ok(r)
    }

    /// Default analysis window: the North Atlantic and the Arctic approaches,
    /// 50–90°N and 80°W–40°E.
    pub fn north_atlantic() -> Self {
        Self {
            lat_min_deg: 50.0,
            lat_max_deg: 90.0,
            lon_min_deg: -80.0,
            lon_max_deg: 40.0,
        }
    }
}

/// Coverage statistics per grid cell. Axes hold cell centres in ascending
/// order; `cells` is row-major, latitude index outermost.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageGrid {
    pub lat_axis_deg: Vec<f64>,
    pub lon_axis_deg: Vec<f64>,
    pub cells: Vec<CoverageStats>,
}

impl CoverageGrid {
    pub fn cell(&self, i_lat: usize, i_lon: usize) -> &CoverageStats {
        &self.cells[i_lat * self.lon_axis_deg.len() + i_lon]
    }
}

fn cell_centres(min: f64, max: f64, resolution: f64) -> Result<Vec<f64>, MetricsError> {
    if !(resolution.is_finite() && resolution > 0.0) {
        return Err(MetricsError::InvalidResolution);
    }
    // Small tolerance so spans like 40/1.0 survive binary rounding.
    let n = ((max - min) / resolution + 1e-9).floor() as usize;
    if n == 0 {
        return Err(MetricsError::InvalidResolution);
    }
    Ok((0..n).map(|k| min + (k as f64 + 0.5) * resolution).collect())
}

/// Coverage statistics over a geographic window, evaluated at the centre
/// of each `resolution_deg`-sized cell.
pub fn coverage_map(
    shell: &WalkerShell,
    mask: ElevationMask,
    region: &Region,
    resolution_deg: f64,
    grid: &TimeGrid,
    j2_enabled: bool,
) -> Result<CoverageGrid, MetricsError> {
    Region::new(
        region.lat_min_deg,
        region.lat_max_deg,
        region.lon_min_deg,
        region.lon_max_deg,
    )?;
    let lat_axis = cell_centres(region.lat_min_deg, region.lat_max_deg, resolution_deg)?;
    let lon_axis = cell_centres(region.lon_min_deg, region.lon_max_deg, resolution_deg)?;
    let eph = propagate(&shell.expand()?, grid, j2_enabled);
    let sin_mask = [mask.sin_eps()];

    let mut cells = Vec::with_capacity(lat_axis.len() * lon_axis.len());
    for &lat in &lat_axis {
        for &lon in &lon_axis {
            let site = GeoPoint::at_sea_level(lat, lon)?;
            let counts = mask_counts(&eph, site.to_ecef(), &sin_mask);
            cells.push(CoverageStats::from_counts(&counts[0], grid.step_s));
        }
    }
    Ok(CoverageGrid { lat_axis_deg: lat_axis, lon_axis_deg: lon_axis, cells })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constellation::{default_epoch, WalkerPattern};

    fn stats(counts: &[u16], step: u64) -> CoverageStats {
        CoverageStats::from_counts(counts, step)
    }

    #[test]
    fn revisit_hand_traced_single_gap() {
        let s = stats(&[1, 1, 0, 0, 0, 1], 10);
        assert_eq!(s.revisit.len(), 1);
        let e = s.revisit[0];
        assert_eq!((e.t_loss_s, e.t_recover_s, e.tau_s), (20, 50, 30));
        assert_eq!(s.tau_median_s, Some(30));
        assert_eq!(s.tau_max_s, Some(30));
    }

    #[test]
    fn revisit_boundary_gaps_discarded() {
        let s = stats(&[0, 0, 1, 1, 0, 0], 10);
        assert!(s.revisit.is_empty());
        assert_eq!(s.tau_median_s, None);
        assert_eq!(s.tau_max_s, None);
        // ... even when the whole window is one gap.
        assert!(stats(&[0, 0, 0], 10).revisit.is_empty());
    }

    #[test]
    fn revisit_multiple_gaps_ordered() {
        let s = stats(&[1, 0, 1, 0, 0, 1], 10);
        let spans: Vec<_> = s.revisit.iter().map(|e| (e.t_loss_s, e.t_recover_s)).collect();
        assert_eq!(spans, vec![(10, 20), (30, 50)]);
        assert_eq!(s.tau_median_s, Some(10), "lower median of [10, 20]");
        assert_eq!(s.tau_max_s, Some(20));
        assert_eq!(
            s.revisit.iter().map(|e| e.tau_s).sum::<u64>(),
            30,
            "interior gap time accounts for every uncovered interior sample"
        );
    }

    #[test]
    fn coverage_fractions_exact() {
        let s = stats(&[1, 1, 0, 0, 0, 1], 10);
        assert_eq!(s.p_cover, 0.5);
        assert_eq!(s.mean_visible, 0.5);
        let all = stats(&[2, 2, 2], 10);
        assert_eq!(all.p_cover, 1.0);
        assert_eq!(all.mean_visible, 2.0);
        assert!(all.revisit.is_empty());
        assert_eq!(stats(&[0, 0, 0, 0], 10).p_cover, 0.0);
    }

    #[test]
    fn full_coverage_iff_no_gaps_and_all_visible() {
        let cases: Vec<Vec<u16>> = vec![
            vec![1, 1, 1, 1],
            vec![1, 0, 1, 1],
            vec![0, 1, 1, 1],
            vec![1, 1, 1, 0],
            vec![3, 1, 2, 9],
        ];
        for counts in cases {
            let s = stats(&counts, 10);
            let full = s.p_cover == 1.0;
            let characterized = s.revisit.is_empty()
                && counts.iter().all(|&v| v >= 1)
                && counts[0] >= 1
                && counts[counts.len() - 1] >= 1;
            assert_eq!(full, characterized, "counts {counts:?}");
        }
    }

    #[test]
    fn lower_median_is_order_statistic() {
        assert_eq!(lower_median(&[]), None);
        assert_eq!(lower_median(&[3]), Some(3));
        assert_eq!(lower_median(&[3, 9]), Some(3));
        assert_eq!(lower_median(&[3, 9, 11]), Some(9));
        assert_eq!(lower_median(&[3, 9, 11, 20]), Some(9));
    }

    #[test]
    fn sweep_rows_cover_axis_product() {
        let shell = WalkerShell::new(WalkerPattern::Delta, 75.0, 8, 4, 1, 1000.0).unwrap();
        let grid = TimeGrid::new(default_epoch(), 7200, 60).unwrap();
        let axis = SweepAxis::Elevation { masks_deg: vec![0.0, 40.0] };
        let table = latitude_sweep(&shell, &axis, &[60.0, 70.0], &grid, false).unwrap();
        assert_eq!(table.param_name, "elevation_deg");
        assert_eq!(table.rows.len(), 4);
        assert!(table.row(40.0, 70.0).is_some());
        // Raising the mask cannot raise the aggregated coverage.
        let p0 = table.row(0.0, 60.0).unwrap().p_cover;
        let p40 = table.row(40.0, 60.0).unwrap().p_cover;
        assert!(p40 <= p0);
    }

    #[test]
    fn inclination_sweep_labels_rows() {
        let shell = WalkerShell::new(WalkerPattern::Delta, 75.0, 8, 4, 1, 1000.0).unwrap();
        let grid = TimeGrid::new(default_epoch(), 7200, 60).unwrap();
        let axis = SweepAxis::Inclination {
            inclinations_deg: vec![60.0, 80.0],
            mask_deg: 40.0,
        };
        let table = latitude_sweep(&shell, &axis, &[65.0], &grid, false).unwrap();
        assert_eq!(table.param_name, "inclination_deg");
        assert_eq!(
            table.rows.iter().map(|r| r.param_value).collect::<Vec<_>>(),
            vec![60.0, 80.0]
        );
    }

    #[test]
    fn sweep_is_deterministic() {
        let shell = WalkerShell::new(WalkerPattern::Delta, 75.0, 8, 4, 1, 1000.0).unwrap();
        let grid = TimeGrid::new(default_epoch(), 7200, 60).unwrap();
        let axis = SweepAxis::Elevation { masks_deg: vec![10.0, 30.0] };
        let a = latitude_sweep(&shell, &axis, &[55.0, 65.0, 75.0], &grid, false).unwrap();
        let b = latitude_sweep(&shell, &axis, &[55.0, 65.0, 75.0], &grid, false).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_axes_rejected() {
        let shell = WalkerShell::new(WalkerPattern::Delta, 75.0, 8, 4, 1, 1000.0).unwrap();
        let grid = TimeGrid::new(default_epoch(), 3600, 60).unwrap();
        let axis = SweepAxis::Elevation { masks_deg: vec![] };
        assert_eq!(
            latitude_sweep(&shell, &axis, &[60.0], &grid, false),
            Err(MetricsError::EmptyAxis)
        );
        let axis = SweepAxis::Elevation { masks_deg: vec![10.0] };
        assert_eq!(
            latitude_sweep(&shell, &axis, &[], &grid, false),
            Err(MetricsError::EmptyAxis)
        );
    }

    #[test]
    fn map_cells_sit_at_cell_centres() {
        let shell = WalkerShell::new(WalkerPattern::Delta, 75.0, 8, 4, 1, 1000.0).unwrap();
        let grid = TimeGrid::new(default_epoch(), 3600, 60).unwrap();
        let region = Region::new(55.0, 57.0, 5.0, 8.0).unwrap();
        let map = coverage_map(
            &shell,
            ElevationMask::new(10.0).unwrap(),
            &region,
            1.0,
            &grid,
            false,
        )
        .unwrap();
        assert_eq!(map.lat_axis_deg, vec![55.5, 56.5]);
        assert_eq!(map.lon_axis_deg, vec![5.5, 6.5, 7.5]);
        assert_eq!(map.cells.len(), 6);
        let _ = map.cell(1, 2); // last cell is addressable
    }

    #[test]
    fn north_atlantic_window_dimensions() {
        let region = Region::north_atlantic();
        let lats = cell_centres(region.lat_min_deg, region.lat_max_deg, 1.0).unwrap();
        let lons = cell_centres(region.lon_min_deg, region.lon_max_deg, 1.0).unwrap();
        assert_eq!(lats.len(), 40);
        assert_eq!(lons.len(), 120);
        assert_eq!(lats[0], 50.5);
        assert_eq!(*lats.last().unwrap(), 89.5);
        assert_eq!(lons[0], -79.5);
        assert_eq!(*lons.last().unwrap(), 39.5);
    }

    #[test]
    fn bad_regions_rejected() {
        assert!(Region::new(60.0, 55.0, 0.0, 10.0).is_err());
        assert!(Region::new(50.0, 95.0, 0.0, 10.0).is_err());
        assert!(Region::new(50.0, 60.0, 10.0, 10.0).is_err());
        assert!(Region::new(50.0, 60.0, -200.0, 200.0).is_err());
        assert!(cell_centres(0.0, 10.0, -1.0).is_err());
        assert!(cell_centres(0.0, 1.0, 5.0).is_err());
    }
}
