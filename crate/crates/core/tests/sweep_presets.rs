//! Small-resolution classification runs of the remaining sweep presets.

use nlms_core::minimize::{stickiness_sweep, Classification, SolverConfig, SweepPreset};
use nlms_core::quad::QuadratureConfig;

#[test]
fn bounded_exterior_is_empty_at_every_s() {
    let table = stickiness_sweep(
        SweepPreset::BoundedExterior,
        &[0.3, 0.1],
        16,
        &SolverConfig::default(),
        &QuadratureConfig::default(),
    )
    .unwrap();
    assert!((table.alpha_bar - 0.0).abs() < 1e-12);
    for row in &table.rows {
        assert_eq!(row.classification, Classification::Empty, "{row:?}");
    }
}

#[test]
fn halfplane_preset_keeps_its_trace() {
    // alpha_bar = omega_2 / 2: outside the dichotomy; the minimizer keeps
    // the half-plane trace, classified as "other".
    let table = stickiness_sweep(
        SweepPreset::HalfplaneInDisc,
        &[0.3],
        16,
        &SolverConfig::default(),
        &QuadratureConfig::default(),
    )
    .unwrap();
    let row = &table.rows[0];
    assert_eq!(row.classification, Classification::Other);
    assert!(
        (row.occupancy - 0.5).abs() < 0.08,
        "expected a half trace, got occupancy {}",
        row.occupancy
    );
    assert!(row.delta_s.is_none());
}

#[test]
fn candy_preset_empties_for_small_s() {
    let table = stickiness_sweep(
        SweepPreset::Candy,
        &[0.05],
        16,
        &SolverConfig::default(),
        &QuadratureConfig::default(),
    )
    .unwrap();
    // alpha_bar = 0 for the sublinear band minus the disc.
    assert!((table.alpha_bar - 0.0).abs() < 1e-12);
    let row = &table.rows[0];
    assert!(row.occupancy < 0.1, "{row:?}");
}

#[test]
fn phase_table_csv_shape() {
    let table = stickiness_sweep(
        SweepPreset::BoundedExterior,
        &[0.2],
        12,
        &SolverConfig::default(),
        &QuadratureConfig::default(),
    )
    .unwrap();
    let csv = table.to_csv();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "s,classification,occupancy,energy,restarts_agreeing,low_confidence,delta_s,delta_clamped"
    );
    assert!(lines.next().unwrap().starts_with("0.2,empty,"));
}
