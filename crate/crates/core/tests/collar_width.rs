//! Collar-width validation: widening the rasterized collar (trading
//! analytic tail for rasterized cells) must not shift energies.

use nlms_core::geom::{canonical_set, Domain, Family};
use nlms_core::minimize::GridProblem;
use nlms_core::quad::QuadratureConfig;

#[test]
fn doubling_the_collar_leaves_energy_unchanged() {
    let cfg = QuadratureConfig::default();
    let quadrant = canonical_set(&Family::Quadrant { dim: 2 }).unwrap();
    let energy_at = |collar: usize| {
        let p = GridProblem::build_with_collar(
            Domain::ball(vec![0.0, 0.0], 1.0),
            24,
            quadrant.clone(),
            0.3,
            collar,
            &cfg,
        )
        .unwrap();
        let empty = vec![false; p.cell_count()];
        p.discrete_perimeter(&empty)
    };
    let base = energy_at(8);
    let wide = energy_at(16);
    let shift = (base - wide).abs() / base.abs();
    assert!(shift < 1e-4, "collar doubling shifted energy by {shift:.2e}");
}
