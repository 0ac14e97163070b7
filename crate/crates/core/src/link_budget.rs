//! Link budget pieces: free-space path loss, table-calibrated atmospheric
//! excess attenuation, and line-of-sight probability by ground environment.
//!
//! Atmospheric excess is deliberately data-driven. Recomputing the ITU-R
//! statistical chains (gases, precipitation, scintillation) is out of
//! scope, so the shipped table anchors the quoted reference losses at
//! {2, 10, 28, 50} GHz and {10°, 25°, 90°} elevation and interpolates
//! bilinearly in (log10 f, ε) between them. Queries outside the table
//! hull are refused rather than extrapolated: attenuation near the 60 GHz
//! oxygen line is non-monotone in frequency, and guessing there would be
//! worse than failing.

use std::f64::consts::PI;
use std::fmt;

use thiserror::Error;

use crate::geo::{slant_range_km, GeoError, SPEED_OF_LIGHT_KM_S};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinkBudgetError {
    #[error("frequency must lie in (1e8, 1e11) Hz, got {0}")]
    FrequencyOutOfRange(f64),
    #[error("elevation must lie in [0, 90] degrees, got {0}")]
    ElevationOutOfRange(f64),
    #[error("altitude must be positive, at most 2000 km, got {0}")]
    AltitudeOutOfRange(f64),
    #[error("frequency and distance must be finite and positive")]
    NonPositive,
    #[error("frequency {0} Hz is outside the table hull; extrapolation is not supported")]
    FrequencyOutsideTable(f64),
    #[error("elevation {0} deg is outside the table hull; extrapolation is not supported")]
    ElevationOutsideTable(f64),
    #[error("environment {0} has no row in this table")]
    MissingEnvironment(Environment),
    #[error("malformed table: {0}")]
    BadTable(String),
    #[error(transparent)]
    Geo(#[from] GeoError),
}

// ===== Free-space path loss =====

/// Free-space path loss in dB for frequency `f` (Hz) over distance `d`
/// (km): 20·log10(4π·d·f/c), the Friis formula with path loss exponent
/// two.
pub fn fspl(frequency_hz: f64, distance_km: f64) -> Result<f64, LinkBudgetError> {
    if !(frequency_hz.is_finite()
        && distance_km.is_finite()
        && frequency_hz > 0.0
        && distance_km > 0.0)
    {
        return Err(LinkBudgetError::NonPositive);
    }
    Ok(20.0 * (4.0 * PI * distance_km * frequency_hz / SPEED_OF_LIGHT_KM_S).log10())
}

// ===== Shared interpolation helpers =====

/// Index of the left node of the bracketing interval, or None when `x`
/// falls outside the axis. The last axis value maps to the final interval
/// so that interpolation hits it with weight exactly one.
fn bracket(axis: &[f64], x: f64) -> Option<usize> {
    if !x.is_finite() || x < axis[0] || x > *axis.last().expect("axes are non-empty") {
        return None;
    }
    let above = axis.partition_point(|&a| a <= x);
    Some((above - 1).min(axis.len() - 2))
}

/// Weighted-form linear interpolation: exact at t = 0 and t = 1, which
/// keeps table nodes bit-identical through the interpolator.
fn lerp(a: f64, b: f64, t: f64) -> f64 {
    a * (1.0 - t) + b * t
}

fn fraction(lo: f64, hi: f64, x: f64) -> f64 {
    (x - lo) / (hi - lo)
}

// ===== Atmospheric excess attenuation =====

/// Excess attenuation (dB) over frequency and elevation nodes,
/// interpolated bilinearly in (log10 f, ε).
#[derive(Debug, Clone, PartialEq)]
pub struct AttenuationTable {
    freq_axis_hz: Vec<f64>,
    elev_axis_deg: Vec<f64>,
    /// excess_db[i][j] is the loss at freq_axis_hz[i], elev_axis_deg[j].
    excess_db: Vec<Vec<f64>>,
}

impl AttenuationTable {
    pub fn new(
        freq_axis_hz: Vec<f64>,
        elev_axis_deg: Vec<f64>,
        excess_db: Vec<Vec<f64>>,
    ) -> Result<Self, LinkBudgetError> {
        let bad = |msg: &str| Err(LinkBudgetError::BadTable(msg.to_string()));
        if freq_axis_hz.len() < 2 || elev_axis_deg.len() < 2 {
            return bad("each axis needs at least two nodes");
        }
        if !strictly_increasing(&freq_axis_hz) || freq_axis_hz[0] <= 0.0 {
            return bad("frequency axis must be positive and strictly increasing");
        }
        if !strictly_increasing(&elev_axis_deg)
            || elev_axis_deg[0] < 0.0
            || *elev_axis_deg.last().unwrap() != 90.0
        {
            return bad("elevation axis must be strictly increasing within [0, 90] and end at 90");
        }
        if excess_db.len() != freq_axis_hz.len() {
            return bad("one row of losses is required per frequency node");
        }
        for row in &excess_db {
            if row.len() != elev_axis_deg.len() {
                return bad("each row needs one loss per elevation node");
            }
            if row.iter().any(|v| !v.is_finite() || *v < 0.0) {
                return bad("losses must be finite and non-negative");
            }
            if row.windows(2).any(|w| w[1] > w[0]) {
                return bad("losses must not increase with elevation");
            }
        }
        Ok(Self { freq_axis_hz, elev_axis_deg, excess_db })
    }

    /// Default table: reference excess losses at {2, 10, 28, 50} GHz and
    /// {10, 25, 90} degrees elevation.
    pub fn builtin() -> Self {
        Self::new(
            vec![2.0e9, 1.0e10, 2.8e10, 5.0e10],
            vec![10.0, 25.0, 90.0],
            vec![
                vec![0.8, 0.3, 0.1],
                vec![3.0, 1.0, 0.3],
                vec![10.0, 5.0, 2.0],
                vec![32.0, 14.0, 7.0],
            ],
        )
        .expect("builtin attenuation table is valid")
    }

    /// Parse the CSV exchange format: a header row whose cells after the
    /// first are elevation nodes in degrees, then one row per frequency
    /// node (first cell Hz, remaining cells dB).
    pub fn from_csv(text: &str) -> Result<Self, LinkBudgetError> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let headers = reader
            .headers()
            .map_err(|e| LinkBudgetError::BadTable(e.to_string()))?
            .clone();
        if headers.len() < 3 {
            return Err(LinkBudgetError::BadTable(
                "header must list at least two elevation nodes".into(),
            ));
        }
        let elev_axis_deg: Vec<f64> = headers
            .iter()
            .skip(1)
            .map(|h| parse_f64(h, "elevation header"))
            .collect::<Result<_, _>>()?;
        let mut freq_axis_hz = Vec::new();
        let mut excess_db = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| LinkBudgetError::BadTable(e.to_string()))?;
            let mut fields = record.iter();
            let freq = fields.next().ok_or_else(|| {
                LinkBudgetError::BadTable("empty row in attenuation table".into())
            })?;
            freq_axis_hz.push(parse_f64(freq, "frequency")?);
            excess_db.push(
                fields
                    .map(|c| parse_f64(c, "loss cell"))
                    .collect::<Result<Vec<f64>, _>>()?,
            );
        }
        Self::new(freq_axis_hz, elev_axis_deg, excess_db)
    }

    /// Serialize in the same CSV exchange format `from_csv` accepts.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("freq_hz");
        for e in &self.elev_axis_deg {
            out.push(',');
            out.push_str(&format!("{e}"));
        }
        out.push('\n');
        for (f, row) in self.freq_axis_hz.iter().zip(&self.excess_db) {
            out.push_str(&format!("{f}"));
            for v in row {
                out.push(',');
                out.push_str(&format!("{v}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn freq_axis_hz(&self) -> &[f64] {
        &self.freq_axis_hz
    }

    pub fn elev_axis_deg(&self) -> &[f64] {
        &self.elev_axis_deg
    }
}

fn strictly_increasing(axis: &[f64]) -> bool {
    axis.iter().all(|v| v.is_finite()) && axis.windows(2).all(|w| w[0] < w[1])
}

fn parse_f64(text: &str, what: &str) -> Result<f64, LinkBudgetError> {
    text.trim()
        .parse::<f64>()
        .map_err(|_| LinkBudgetError::BadTable(format!("{what} is not a number: {text:?}")))
}

/// Excess atmospheric loss (dB) at (f, ε), bilinear in (log10 f, ε).
/// Exact at table nodes; refuses queries outside the hull.
pub fn atmospheric_excess(
    frequency_hz: f64,
    elevation_deg: f64,
    table: &AttenuationTable,
) -> Result<f64, LinkBudgetError> {
    let i = bracket(&table.freq_axis_hz, frequency_hz)
        .ok_or(LinkBudgetError::FrequencyOutsideTable(frequency_hz))?;
    let j = bracket(&table.elev_axis_deg, elevation_deg)
        .ok_or(LinkBudgetError::ElevationOutsideTable(elevation_deg))?;
    let tf = fraction(
        table.freq_axis_hz[i].log10(),
        table.freq_axis_hz[i + 1].log10(),
        frequency_hz.log10(),
    );
    let te = fraction(
        table.elev_axis_deg[j],
        table.elev_axis_deg[j + 1],
        elevation_deg,
    );
    let lo = lerp(table.excess_db[i][j], table.excess_db[i][j + 1], te);
    let hi = lerp(table.excess_db[i + 1][j], table.excess_db[i + 1][j + 1], te);
    Ok(lerp(lo, hi, tf))
}

// ===== Combined budget =====

/// Query point of a link budget evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudgetInputs {
    pub frequency_hz: f64,
    pub altitude_km: f64,
    pub elevation_deg: f64,
}

impl LinkBudgetInputs {
    pub fn new(
        frequency_hz: f64,
        altitude_km: f64,
        elevation_deg: f64,
    ) -> Result<Self, LinkBudgetError> {
        let inputs = Self { frequency_hz, altitude_km, elevation_deg };
        inputs.validate()?;
        Ok(inputs)
    }

    pub fn validate(&self) -> Result<(), LinkBudgetError> {
        if !(self.frequency_hz.is_finite()
            && self.frequency_hz > 1.0e8
            && self.frequency_hz < 1.0e11)
        {
            return Err(LinkBudgetError::FrequencyOutOfRange(self.frequency_hz));
        }
        if !(self.altitude_km.is_finite()
            && self.altitude_km > 0.0
            && self.altitude_km <= 2000.0)
        {
            return Err(LinkBudgetError::AltitudeOutOfRange(self.altitude_km));
        }
        if !(self.elevation_deg.is_finite() && (0.0..=90.0).contains(&self.elevation_deg)) {
            return Err(LinkBudgetError::ElevationOutOfRange(self.elevation_deg));
        }
        Ok(())
    }
}

/// One evaluated link budget; `total_db` is exactly
/// `fspl_db + atmos_excess_db`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudgetResult {
    pub slant_range_km: f64,
    pub fspl_db: f64,
    pub atmos_excess_db: f64,
    pub total_db: f64,
}

/// Slant range from the geometry, FSPL from Friis, excess from the table.
pub fn total_path_loss(
    inputs: &LinkBudgetInputs,
    table: &AttenuationTable,
) -> Result<LinkBudgetResult, LinkBudgetError> {
    inputs.validate()?;
    let slant_range_km = slant_range_km(inputs.altitude_km, inputs.elevation_deg)?;
    let fspl_db = fspl(inputs.frequency_hz, slant_range_km)?;
    let atmos_excess_db = atmospheric_excess(inputs.frequency_hz, inputs.elevation_deg, table)?;
    Ok(LinkBudgetResult {
        slant_range_km,
        fspl_db,
        atmos_excess_db,
        total_db: fspl_db + atmos_excess_db,
    })
}

// ===== Line-of-sight probability =====

/// Ground environment classes of the LoS statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Environment {
    DenseUrban,
    Urban,
    SuburbanRural,
}

impl Environment {
    pub const ALL: [Environment; 3] =
        [Environment::DenseUrban, Environment::Urban, Environment::SuburbanRural];

    pub fn as_str(self) -> &'static str {
        match self {
            Environment::DenseUrban => "dense_urban",
            Environment::Urban => "urban",
            Environment::SuburbanRural => "suburban_rural",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text.trim() {
            "dense_urban" => Some(Environment::DenseUrban),
            "urban" => Some(Environment::Urban),
            "suburban_rural" => Some(Environment::SuburbanRural),
            _ => None,
        }
    }
}

impl fmt::Display for Environment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Line-of-sight probability per environment over elevation nodes at
/// 10-degree spacing from 10° to 90°.
#[derive(Debug, Clone, PartialEq)]
pub struct LosTable {
    elev_axis_deg: Vec<f64>,
    /// One probability row per environment, ordered as [`Environment::ALL`].
    p_los: Vec<(Environment, Vec<f64>)>,
}

const LOS_ELEV_NODES_DEG: [f64; 9] =
    [10.0, 20.0, 30.0, 40.0, 50.0, 60.0, 70.0, 80.0, 90.0];

impl LosTable {
    pub fn new(
        elev_axis_deg: Vec<f64>,
        p_los: Vec<(Environment, Vec<f64>)>,
    ) -> Result<Self, LinkBudgetError> {
        let bad = |msg: String| Err(LinkBudgetError::BadTable(msg));
        if elev_axis_deg != LOS_ELEV_NODES_DEG {
            return bad("elevation axis must be 10..90 degrees in steps of 10".into());
        }
        if p_los.is_empty() {
            return bad("at least one environment row is required".into());
        }
        for (env, row) in &p_los {
            if row.len() != elev_axis_deg.len() {
                return bad(format!("{env}: expected one probability per elevation node"));
            }
            if row.iter().any(|p| !p.is_finite() || !(0.0..=1.0).contains(p)) {
                return bad(format!("{env}: probabilities must lie in [0, 1]"));
            }
            if row.windows(2).any(|w| w[1] < w[0]) {
                return bad(format!("{env}: probabilities must not decrease with elevation"));
            }
        }
        for window in p_los.windows(2) {
            if window[1].0 as usize <= window[0].0 as usize {
                return bad("environment rows must be unique and ordered".into());
            }
        }
        // Open terrain can only improve the odds over built-up terrain.
        let find = |e: Environment| p_los.iter().find(|(env, _)| *env == e).map(|(_, r)| r);
        if let (Some(urban), Some(rural)) =
            (find(Environment::Urban), find(Environment::SuburbanRural))
        {
            if urban.iter().zip(rural).any(|(u, r)| r < u) {
                return bad("suburban_rural must dominate urban at every node".into());
            }
        }
        Ok(Self { elev_axis_deg, p_los })
    }

    /// Default table for the three reference environments.
    pub fn builtin() -> Self {
        Self::new(
            LOS_ELEV_NODES_DEG.to_vec(),
            vec![
                (
                    Environment::DenseUrban,
                    vec![0.28, 0.331, 0.398, 0.46875, 0.53125, 0.616, 0.738, 0.875, 0.925],
                ),
                (
                    Environment::Urban,
                    vec![0.24, 0.386, 0.50, 0.613, 0.726, 0.805, 0.90, 0.945, 0.99],
                ),
                (
                    Environment::SuburbanRural,
                    vec![0.782, 0.869, 0.919, 0.929, 0.935, 0.94, 0.949, 0.952, 0.998],
                ),
            ],
        )
        .expect("builtin LoS table is valid")
    }

    /// Parse the CSV exchange format with columns
    /// (environment, elevation_deg, p_los).
    pub fn from_csv(text: &str) -> Result<Self, LinkBudgetError> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let headers = reader
            .headers()
            .map_err(|e| LinkBudgetError::BadTable(e.to_string()))?;
        let expected = ["environment", "elevation_deg", "p_los"];
        if headers.iter().collect::<Vec<_>>() != expected {
            return Err(LinkBudgetError::BadTable(format!(
                "header must be {}",
                expected.join(",")
            )));
        }
        let mut per_env: Vec<(Environment, Vec<(f64, f64)>)> =
            Environment::ALL.iter().map(|&e| (e, Vec::new())).collect();
        for record in reader.records() {
            let record = record.map_err(|e| LinkBudgetError::BadTable(e.to_string()))?;
            let env = Environment::parse(&record[0]).ok_or_else(|| {
                LinkBudgetError::BadTable(format!("unknown environment {:?}", &record[0]))
            })?;
            let elev = parse_f64(&record[1], "elevation_deg")?;
            let p = parse_f64(&record[2], "p_los")?;
            per_env
                .iter_mut()
                .find(|(e, _)| *e == env)
                .expect("all environments are pre-seeded")
                .1
                .push((elev, p));
        }
        let mut rows = Vec::new();
        for (env, mut nodes) in per_env {
            if nodes.is_empty() {
                continue;
            }
            nodes.sort_by(|a, b| a.0.total_cmp(&b.0));
            let elevations: Vec<f64> = nodes.iter().map(|n| n.0).collect();
            if elevations != LOS_ELEV_NODES_DEG {
                return Err(LinkBudgetError::BadTable(format!(
                    "{env}: rows must cover exactly the nodes 10..90 step 10"
                )));
            }
            rows.push((env, nodes.into_iter().map(|n| n.1).collect()));
        }
        Self::new(LOS_ELEV_NODES_DEG.to_vec(), rows)
    }

    /// Serialize in the same CSV exchange format `from_csv` accepts.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("environment,elevation_deg,p_los\n");
        for (env, row) in &self.p_los {
            for (e, p) in self.elev_axis_deg.iter().zip(row) {
                out.push_str(&format!("{env},{e},{p}\n"));
            }
        }
        out
    }

    pub fn environments(&self) -> Vec<Environment> {
        self.p_los.iter().map(|(e, _)| *e).collect()
    }

    pub fn elev_axis_deg(&self) -> &[f64] {
        &self.elev_axis_deg
    }

    fn row(&self, env: Environment) -> Result<&[f64], LinkBudgetError> {
        self.p_los
            .iter()
            .find(|(e, _)| *e == env)
            .map(|(_, row)| row.as_slice())
            .ok_or(LinkBudgetError::MissingEnvironment(env))
    }
}

/// LoS probability for an environment at elevation ε ∈ [10°, 90°], linear
/// between the 10-degree nodes and exact at them.
pub fn los_probability(
    env: Environment,
    elevation_deg: f64,
    table: &LosTable,
) -> Result<f64, LinkBudgetError> {
    let row = table.row(env)?;
    let j = bracket(&table.elev_axis_deg, elevation_deg)
        .ok_or(LinkBudgetError::ElevationOutsideTable(elevation_deg))?;
    let t = fraction(
        table.elev_axis_deg[j],
        table.elev_axis_deg[j + 1],
        elevation_deg,
    );
    Ok(lerp(row[j], row[j + 1], t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geo::slant_range_km;
    use approx::assert_abs_diff_eq;

    // ===== FSPL =====

    #[test]
    fn fspl_matches_reference_values_at_zenith() {
        let d = slant_range_km(800.0, 90.0).unwrap();
        assert_eq!(d, 800.0, "zenith slant range is the altitude itself");
        let at = |f| fspl(f, d).unwrap();
        assert_abs_diff_eq!(at(2.0e9), 156.53, epsilon = 0.01);
        assert_abs_diff_eq!(at(1.0e10), 170.51, epsilon = 0.01);
        assert!((at(2.0e9) - 157.0).abs() < 0.5);
        assert!((at(1.0e10) - 171.0).abs() < 0.5);
        assert!((at(2.8e10) - 179.0).abs() < 0.5);
        assert!((at(5.0e10) - 184.0).abs() < 0.5);
    }

    #[test]
    fn fspl_at_low_elevation_reference() {
        let d = slant_range_km(800.0, 10.0).unwrap();
        let loss = fspl(2.0e9, d).unwrap();
        assert_abs_diff_eq!(loss, 165.95, epsilon = 0.01);
        assert!((loss - 166.0).abs() < 0.5);
    }

    #[test]
    fn fspl_doubling_frequency_adds_six_db() {
        let base = fspl(3.7e9, 1234.5).unwrap();
        let doubled = fspl(7.4e9, 1234.5).unwrap();
        assert_abs_diff_eq!(doubled - base, 20.0 * 2.0_f64.log10(), epsilon = 1e-9);
    }

    #[test]
    fn fspl_monotone_in_frequency_and_distance() {
        let mut prev = f64::MIN;
        for k in 1..=40 {
            let v = fspl(1.0e8 * k as f64, 800.0).unwrap();
            assert!(v > prev, "fspl must strictly increase with frequency");
            prev = v;
        }
        prev = f64::MIN;
        for k in 1..=40 {
            let v = fspl(2.0e9, 100.0 * k as f64).unwrap();
            assert!(v > prev, "fspl must strictly increase with distance");
            prev = v;
        }
    }

    #[test]
    fn fspl_rejects_degenerate_inputs() {
        assert!(fspl(0.0, 800.0).is_err());
        assert!(fspl(2.0e9, 0.0).is_err());
        assert!(fspl(-2.0e9, 800.0).is_err());
        assert!(fspl(f64::NAN, 800.0).is_err());
        assert!(fspl(2.0e9, f64::INFINITY).is_err());
    }

    // ===== Atmospheric excess =====

    #[test]
    fn excess_reproduces_every_node_exactly() {
        let table = AttenuationTable::builtin();
        let expected = [
            (2.0e9, [0.8, 0.3, 0.1]),
            (1.0e10, [3.0, 1.0, 0.3]),
            (2.8e10, [10.0, 5.0, 2.0]),
            (5.0e10, [32.0, 14.0, 7.0]),
        ];
        for (f, row) in expected {
            for (eps, want) in [10.0, 25.0, 90.0].into_iter().zip(row) {
                let got = atmospheric_excess(f, eps, &table).unwrap();
                assert_eq!(got, want, "node ({f} Hz, {eps} deg) must be exact");
            }
        }
    }

    #[test]
    fn excess_anchor_values() {
        let table = AttenuationTable::builtin();
        assert_eq!(atmospheric_excess(2.8e10, 90.0, &table).unwrap(), 2.0);
        assert_eq!(atmospheric_excess(5.0e10, 90.0, &table).unwrap(), 7.0);
        assert_eq!(atmospheric_excess(5.0e10, 10.0, &table).unwrap(), 32.0);
        assert_eq!(atmospheric_excess(2.8e10, 25.0, &table).unwrap(), 5.0);
        assert_eq!(atmospheric_excess(5.0e10, 25.0, &table).unwrap(), 14.0);
        assert!(
            atmospheric_excess(2.0e9, 90.0, &table).unwrap() < 0.2,
            "S-band zenith excess is practically negligible"
        );
    }

    #[test]
    fn excess_interpolates_in_log_frequency() {
        let table = AttenuationTable::builtin();
        // Geometric mean of 2 and 10 GHz sits halfway in log10 space.
        let f_mid = (2.0e9_f64 * 1.0e10).sqrt();
        let v = atmospheric_excess(f_mid, 90.0, &table).unwrap();
        assert_abs_diff_eq!(v, 0.2, epsilon = 1e-9);
        // Elevation midpoint between 25 and 90 at a node frequency.
        let v = atmospheric_excess(5.0e10, 57.5, &table).unwrap();
        assert_abs_diff_eq!(v, 10.5, epsilon = 1e-12);
    }

    #[test]
    fn excess_refuses_extrapolation() {
        let table = AttenuationTable::builtin();
        assert!(matches!(
            atmospheric_excess(1.0e9, 45.0, &table),
            Err(LinkBudgetError::FrequencyOutsideTable(_))
        ));
        assert!(matches!(
            atmospheric_excess(6.0e10, 45.0, &table),
            Err(LinkBudgetError::FrequencyOutsideTable(_))
        ));
        assert!(matches!(
            atmospheric_excess(2.0e9, 5.0, &table),
            Err(LinkBudgetError::ElevationOutsideTable(_))
        ));
        assert!(matches!(
            atmospheric_excess(2.0e9, 90.5, &table),
            Err(LinkBudgetError::ElevationOutsideTable(_))
        ));
        // Hull corners are inside.
        assert!(atmospheric_excess(2.0e9, 10.0, &table).is_ok());
        assert!(atmospheric_excess(5.0e10, 90.0, &table).is_ok());
    }

    #[test]
    fn excess_ordering_between_bands() {
        let table = AttenuationTable::builtin();
        for eps in [10.0, 17.0, 25.0, 57.5, 90.0] {
            let ka = atmospheric_excess(2.8e10, eps, &table).unwrap();
            let v = atmospheric_excess(5.0e10, eps, &table).unwrap();
            assert!(
                v > ka,
                "50 GHz sits closer to the oxygen band than 28 GHz at eps {eps}"
            );
        }
    }

    #[test]
    fn excess_non_increasing_in_elevation() {
        let table = AttenuationTable::builtin();
        for f in [2.0e9, 5.5e9, 1.0e10, 2.8e10, 4.0e10, 5.0e10] {
            let mut prev = f64::MAX;
            for k in 0..=80 {
                let eps = 10.0 + k as f64;
                let v = atmospheric_excess(f, eps, &table).unwrap();
                assert!(v <= prev, "excess must not grow toward zenith at {f} Hz");
                prev = v;
            }
        }
    }

    #[test]
    fn attenuation_csv_round_trip() {
        let table = AttenuationTable::builtin();
        let parsed = AttenuationTable::from_csv(&table.to_csv()).unwrap();
        assert_eq!(parsed, table);
    }

    #[test]
    fn attenuation_table_validation() {
        let ok_axis = vec![10.0, 25.0, 90.0];
        // Non-increasing frequency axis.
        assert!(AttenuationTable::new(
            vec![2.0e9, 2.0e9],
            ok_axis.clone(),
            vec![vec![1.0, 0.5, 0.1], vec![1.0, 0.5, 0.1]],
        )
        .is_err());
        // Elevation axis not ending at zenith.
        assert!(AttenuationTable::new(
            vec![2.0e9, 1.0e10],
            vec![10.0, 25.0, 80.0],
            vec![vec![1.0, 0.5, 0.1], vec![1.0, 0.5, 0.1]],
        )
        .is_err());
        // Loss increasing with elevation.
        assert!(AttenuationTable::new(
            vec![2.0e9, 1.0e10],
            ok_axis.clone(),
            vec![vec![1.0, 0.5, 0.6], vec![1.0, 0.5, 0.1]],
        )
        .is_err());
        // Negative loss.
        assert!(AttenuationTable::new(
            vec![2.0e9, 1.0e10],
            ok_axis,
            vec![vec![1.0, 0.5, -0.1], vec![1.0, 0.5, 0.1]],
        )
        .is_err());
        // Malformed CSV cell.
        assert!(AttenuationTable::from_csv("freq_hz,10,90\n2e9,oops,0.1\n").is_err());
    }

    // ===== Combined budget =====

    #[test]
    fn total_is_exact_sum_of_parts() {
        let table = AttenuationTable::builtin();
        let inputs = LinkBudgetInputs::new(2.8e10, 800.0, 25.0).unwrap();
        let result = total_path_loss(&inputs, &table).unwrap();
        assert_eq!(result.total_db, result.fspl_db + result.atmos_excess_db);
        assert_eq!(result.atmos_excess_db, 5.0);
        assert_eq!(
            result.slant_range_km,
            slant_range_km(800.0, 25.0).unwrap()
        );
        assert!(result.fspl_db > 0.0 && result.total_db > 0.0);
    }

    #[test]
    fn total_non_increasing_toward_zenith() {
        let table = AttenuationTable::builtin();
        for f in [2.0e9, 1.0e10, 2.8e10, 5.0e10] {
            let mut prev = f64::MAX;
            for k in 0..=16 {
                let eps = 10.0 + 5.0 * k as f64;
                let inputs = LinkBudgetInputs::new(f, 800.0, eps).unwrap();
                let total = total_path_loss(&inputs, &table).unwrap().total_db;
                assert!(total <= prev, "raising elevation cannot raise total loss");
                prev = total;
            }
        }
    }

    #[test]
    fn inputs_validated() {
        assert!(LinkBudgetInputs::new(1.0e8, 800.0, 45.0).is_err());
        assert!(LinkBudgetInputs::new(1.0e11, 800.0, 45.0).is_err());
        assert!(LinkBudgetInputs::new(2.0e9, 0.0, 45.0).is_err());
        assert!(LinkBudgetInputs::new(2.0e9, 2000.5, 45.0).is_err());
        assert!(LinkBudgetInputs::new(2.0e9, 800.0, -0.1).is_err());
        assert!(LinkBudgetInputs::new(2.0e9, 800.0, 90.1).is_err());
        assert!(LinkBudgetInputs::new(2.0e9, 800.0, 45.0).is_ok());
    }

    // ===== LoS probability =====

    #[test]
    fn los_quoted_anchors() {
        let table = LosTable::builtin();
        let p = |env, eps| los_probability(env, eps, &table).unwrap();
        assert_eq!(p(Environment::SuburbanRural, 10.0), 0.782);
        assert_eq!(p(Environment::DenseUrban, 10.0), 0.28);
        assert_eq!(p(Environment::Urban, 10.0), 0.24);
        assert_eq!(p(Environment::Urban, 30.0), 0.50);
        assert_eq!(p(Environment::Urban, 70.0), 0.90);
        // Between-node anchors; the builtin nodes are chosen so these land
        // exactly despite interpolation.
        assert_eq!(p(Environment::DenseUrban, 45.0), 0.5);
        assert_eq!(p(Environment::DenseUrban, 85.0), 0.9);
    }

    #[test]
    fn los_nodes_exact_and_interior_linear() {
        let table = LosTable::builtin();
        for (env, eps, want) in [
            (Environment::DenseUrban, 90.0, 0.925),
            (Environment::SuburbanRural, 90.0, 0.998),
            (Environment::Urban, 80.0, 0.945),
        ] {
            assert_eq!(los_probability(env, eps, &table).unwrap(), want);
        }
        let mid = los_probability(Environment::Urban, 15.0, &table).unwrap();
        assert_abs_diff_eq!(mid, (0.24 + 0.386) / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn los_monotone_and_ordered() {
        let table = LosTable::builtin();
        for env in Environment::ALL {
            let mut prev = -1.0;
            for k in 0..=80 {
                let eps = 10.0 + k as f64;
                let p = los_probability(env, eps, &table).unwrap();
                assert!((0.0..=1.0).contains(&p));
                assert!(p >= prev, "{env} LoS must not decrease with elevation");
                prev = p;
            }
        }
        for eps in &LOS_ELEV_NODES_DEG {
            let urban = los_probability(Environment::Urban, *eps, &table).unwrap();
            let rural = los_probability(Environment::SuburbanRural, *eps, &table).unwrap();
            assert!(rural >= urban, "open terrain dominates urban at {eps} deg");
        }
    }

    #[test]
    fn los_domain_enforced() {
        let table = LosTable::builtin();
        assert!(matches!(
            los_probability(Environment::Urban, 9.9, &table),
            Err(LinkBudgetError::ElevationOutsideTable(_))
        ));
        assert!(matches!(
            los_probability(Environment::Urban, 90.1, &table),
            Err(LinkBudgetError::ElevationOutsideTable(_))
        ));
        assert!(los_probability(Environment::Urban, 10.0, &table).is_ok());
        assert!(los_probability(Environment::Urban, 90.0, &table).is_ok());
    }

    #[test]
    fn los_csv_round_trip_and_validation() {
        let table = LosTable::builtin();
        let parsed = LosTable::from_csv(&table.to_csv()).unwrap();
        assert_eq!(parsed, table);

        // Missing environments are allowed at parse time but refused on query.
        let partial: String = table
            .to_csv()
            .lines()
            .filter(|l| !l.starts_with("dense_urban"))
            .map(|l| format!("{l}\n"))
            .collect();
        let parsed = LosTable::from_csv(&partial).unwrap();
        assert!(matches!(
            los_probability(Environment::DenseUrban, 45.0, &parsed),
            Err(LinkBudgetError::MissingEnvironment(Environment::DenseUrban))
        ));
        assert!(los_probability(Environment::Urban, 45.0, &parsed).is_ok());

        // Incomplete node coverage is an error.
        let truncated = "environment,elevation_deg,p_los\nurban,10,0.2\nurban,20,0.3\n";
        assert!(LosTable::from_csv(truncated).is_err());
        // Unknown environment token.
        let unknown = "environment,elevation_deg,p_los\nmarine,10,0.2\n";
        assert!(LosTable::from_csv(unknown).is_err());
        // Decreasing probabilities.
        let mut rows = String::from("environment,elevation_deg,p_los\n");
        for (k, eps) in LOS_ELEV_NODES_DEG.iter().enumerate() {
            let p = if k == 8 { 0.1 } else { 0.2 + 0.01 * k as f64 };
            rows.push_str(&format!("urban,{eps},{p}\n"));
        }
        assert!(LosTable::from_csv(&rows).is_err());
    }
}
