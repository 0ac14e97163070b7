//! Property-based invariants over randomly generated inputs. These cover
//! the claims the example-based tests can only spot-check: monotonicity of
//! the geometry kernels, exactness of revisit bookkeeping, interpolation
//! bounds, longitude normalization, and TLE well-formedness for arbitrary
//! small shells.

mod common;

use borealis_core::constellation::{tle, WalkerPattern, WalkerShell};
use borealis_core::geo::{footprint_radius_km, slant_range_km, EARTH_RADIUS_KM};
use borealis_core::link_budget::{
    atmospheric_excess, fspl, los_probability, AttenuationTable, Environment, LosTable,
};
use borealis_core::metrics::CoverageStats;
use borealis_core::GeoPoint;
use proptest::prelude::*;

// ===== Strategies =====

fn altitude() -> impl Strategy<Value = f64> {
    200.0..2000.0f64
}

fn elevation() -> impl Strategy<Value = f64> {
    0.0..84.0f64
}

fn environment() -> impl Strategy<Value = Environment> {
    prop_oneof![
        Just(Environment::DenseUrban),
        Just(Environment::Urban),
        Just(Environment::SuburbanRural),
    ]
}

/// (pattern, inclination, planes, sats-per-plane, phasing) for small shells.
fn small_shell() -> impl Strategy<Value = WalkerShell> {
    (
        prop_oneof![Just(WalkerPattern::Delta), Just(WalkerPattern::Star)],
        5.0..175.0f64,
        1u32..=6,
        1u32..=6,
        200.0..2000.0f64,
    )
        .prop_flat_map(|(pattern, incl, planes, per_plane, alt)| {
            (0..planes).prop_map(move |phasing| {
                WalkerShell::new(pattern, incl, planes * per_plane, planes, phasing, alt)
                    .expect("generated shell is valid")
            })
        })
}

proptest! {
    // ===== Geometry monotonicity =====

    #[test]
    fn footprint_shrinks_as_elevation_rises(
        h in altitude(),
        eps in elevation(),
        step in 0.01..5.0f64,
    ) {
        let lo = footprint_radius_km(h, eps).unwrap();
        let hi = footprint_radius_km(h, (eps + step).min(89.9)).unwrap();
        prop_assert!(
            hi < lo,
            "footprint grew with elevation: {lo} -> {hi} at h={h}, eps={eps}+{step}"
        );
    }

    #[test]
    fn footprint_grows_with_altitude(
        h in 200.0..1800.0f64,
        bump in 1.0..200.0f64,
        eps in elevation(),
    ) {
        let lo = footprint_radius_km(h, eps).unwrap();
        let hi = footprint_radius_km(h + bump, eps).unwrap();
        prop_assert!(hi > lo, "footprint shrank with altitude at eps={eps}");
    }

    #[test]
    fn slant_range_shrinks_toward_zenith(
        h in altitude(),
        eps in elevation(),
        step in 0.01..5.0f64,
    ) {
        let far = slant_range_km(h, eps).unwrap();
        let near = slant_range_km(h, (eps + step).min(90.0)).unwrap();
        prop_assert!(near < far, "slant range grew with elevation at h={h}");
    }

    #[test]
    fn slant_range_at_zenith_is_the_altitude(h in altitude()) {
        let d = slant_range_km(h, 90.0).unwrap();
        prop_assert!((d - h).abs() < 1e-6, "slant(h, 90) = {d}, want {h}");
    }

    // ===== FSPL =====

    #[test]
    fn fspl_increases_with_frequency_and_distance(
        f in 1.0e8..5.0e10f64,
        d in 100.0..5000.0f64,
        f_scale in 1.01..4.0f64,
        d_scale in 1.01..4.0f64,
    ) {
        let base = fspl(f, d).unwrap();
        prop_assert!(fspl(f * f_scale, d).unwrap() > base);
        prop_assert!(fspl(f, d * d_scale).unwrap() > base);
    }

    #[test]
    fn fspl_doubling_distance_adds_six_db(f in 1.0e8..1.0e11f64, d in 100.0..5000.0f64) {
        let gain = fspl(f, 2.0 * d).unwrap() - fspl(f, d).unwrap();
        let want = 20.0 * 2.0f64.log10();
        prop_assert!((gain - want).abs() < 1e-9, "doubling added {gain} dB");
    }

    // ===== Revisit bookkeeping =====

    #[test]
    fn revisit_accounts_for_every_interior_gap_second(
        counts in prop::collection::vec(0u16..3, 0..200),
        step in 1u64..=60,
    ) {
        let stats = CoverageStats::from_counts(&counts, step);
        let leading = counts.iter().take_while(|&&v| v == 0).count();
        let trailing = if leading == counts.len() {
            0
        } else {
            counts.iter().rev().take_while(|&&v| v == 0).count()
        };
        let zeros = counts.iter().filter(|&&v| v == 0).count();
        let interior = (zeros - leading - trailing) as u64;
        let booked: u64 = stats.revisit.iter().map(|e| e.tau_s).sum();
        prop_assert_eq!(booked, interior * step, "interior gap seconds must match");

        let mut last_end = 0;
        for e in &stats.revisit {
            prop_assert!(e.t_loss_s >= last_end, "events must not overlap");
            prop_assert!(e.t_loss_s > 0, "a leading gap is not a revisit");
            prop_assert_eq!(e.tau_s, e.t_recover_s - e.t_loss_s);
            last_end = e.t_recover_s;
        }
        if !counts.is_empty() {
            let horizon = (counts.len() as u64 - 1) * step;
            prop_assert!(last_end <= horizon, "recovery beyond the window");
        }
    }

    #[test]
    fn revisit_median_and_max_come_from_the_gap_multiset(
        counts in prop::collection::vec(0u16..2, 1..120),
    ) {
        let stats = CoverageStats::from_counts(&counts, 10);
        let taus: Vec<u64> = stats.revisit.iter().map(|e| e.tau_s).collect();
        match stats.tau_median_s {
            Some(median) => {
                prop_assert!(taus.contains(&median), "median {median} not an observed gap");
                let mut sorted = taus.clone();
                sorted.sort_unstable();
                prop_assert_eq!(median, sorted[(sorted.len() - 1) / 2]);
                prop_assert_eq!(stats.tau_max_s, sorted.last().copied());
            }
            None => prop_assert!(taus.is_empty(), "gaps present but no median"),
        }
    }

    // ===== Longitude normalization =====

    #[test]
    fn longitude_normalizes_into_half_open_range(
        lat in -90.0..=90.0f64,
        lon in -1.0e4..1.0e4f64,
    ) {
        let p = GeoPoint::at_sea_level(lat, lon).unwrap();
        prop_assert!((-180.0..180.0).contains(&p.lon_deg()));
        // The normalized longitude is the same angle. rem_euclid of the
        // difference is either ~0 or ~360 depending on rounding direction.
        let wrap = (lon - p.lon_deg()).rem_euclid(360.0);
        prop_assert!(
            wrap < 1e-6 || (360.0 - wrap) < 1e-6,
            "normalization changed the angle: {lon} -> {} (wrap {wrap})",
            p.lon_deg()
        );
        // Re-normalizing is angularly a no-op as well.
        let q = GeoPoint::at_sea_level(lat, p.lon_deg()).unwrap();
        let again = (p.lon_deg() - q.lon_deg()).rem_euclid(360.0);
        prop_assert!(again < 1e-6 || (360.0 - again) < 1e-6);
    }

    #[test]
    fn ecef_norm_matches_geocentric_radius(
        lat in -90.0..=90.0f64,
        lon in -180.0..180.0f64,
        alt in 0.0..2000.0f64,
    ) {
        let r = GeoPoint::new(lat, lon, alt).unwrap().to_ecef().norm();
        let want = EARTH_RADIUS_KM + alt;
        prop_assert!((r - want).abs() < 1e-6, "|ecef| = {r}, want {want}");
    }

    // ===== Link-budget interpolation bounds =====

    #[test]
    fn atmospheric_excess_is_bounded_and_monotone(
        log_f in 9.31..10.69f64,
        eps in 10.0..89.0f64,
        de in 0.01..10.0f64,
    ) {
        let table = AttenuationTable::builtin();
        let f = 10.0f64.powf(log_f);
        let at = atmospheric_excess(f, eps, &table).unwrap();
        prop_assert!((0.0..=32.0).contains(&at), "excess {at} dB outside table range");
        let higher = atmospheric_excess(f, (eps + de).min(90.0), &table).unwrap();
        prop_assert!(higher <= at, "excess grew toward zenith: {at} -> {higher}");
    }

    #[test]
    fn los_probability_is_bounded_and_monotone(
        env in environment(),
        eps in 10.0..89.0f64,
        de in 0.01..10.0f64,
    ) {
        let table = LosTable::builtin();
        let p = los_probability(env, eps, &table).unwrap();
        prop_assert!((0.0..=1.0).contains(&p));
        let higher = los_probability(env, (eps + de).min(90.0), &table).unwrap();
        prop_assert!(higher >= p, "LoS probability fell with elevation for {env}");
    }

    #[test]
    fn open_terrain_beats_urban_canyons(eps in 10.0..=90.0f64) {
        let table = LosTable::builtin();
        let rural = los_probability(Environment::SuburbanRural, eps, &table).unwrap();
        let urban = los_probability(Environment::Urban, eps, &table).unwrap();
        prop_assert!(rural >= urban, "rural {rural} < urban {urban} at eps={eps}");
    }
}

proptest! {
    // Shell expansion is heavier per case, so run fewer.
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tle_export_is_well_formed_for_arbitrary_small_shells(shell in small_shell()) {
        let records = tle::tle_export(&shell).unwrap();
        prop_assert_eq!(records.len(), shell.total_sats as usize);
        for record in &records {
            let issues = common::tle_issues(&record.name, &record.line1, &record.line2);
            prop_assert!(
                issues.is_empty(),
                "{}: {}",
                record.name,
                issues.join("; ")
            );
            // The library checksum and the independent byte-walk agree.
            for line in [&record.line1, &record.line2] {
                prop_assert_eq!(
                    tle::checksum(&line[..68]),
                    common::independent_checksum(&line[..68]),
                    "checksum mismatch on {}",
                    line
                );
            }
        }
    }

    #[test]
    fn expansion_spaces_planes_and_slots_uniformly(shell in small_shell()) {
        let elements = shell.expand().unwrap();
        let per_plane = shell.sats_per_plane();
        let slot_gap = 360.0 / f64::from(per_plane);
        let plane_gap = shell.pattern.raan_span_deg() / f64::from(shell.planes);
        for e in &elements {
            let want_raan = (shell.raan0_deg
                + f64::from(e.sat_id.plane) * plane_gap).rem_euclid(360.0);
            prop_assert!((e.raan_deg - want_raan).abs() < 1e-9);
            let want_u = (f64::from(e.sat_id.slot) * slot_gap
                + f64::from(e.sat_id.plane) * shell.inter_plane_shift_deg())
                .rem_euclid(360.0);
            prop_assert!((e.initial_arg_latitude_deg - want_u).abs() < 1e-9);
        }
    }
}
