//! The uniform positive-curvature bound, its precondition/error paths,
//! and degenerate cases of the sign-change root finder.

use nlms_core::geom::{canonical_set, Family, SetSpec};
use nlms_core::quad::QuadratureConfig;
use nlms_core::thresholds::{
    positive_curvature_check, sign_change_root, RootOutcome, TangentBallWitness,
};

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

#[test]
fn bounded_complement_is_rejected() {
    // E = complement of the unit ball: alpha_bar(E) = omega_2, so beta < 0
    // and the positive-curvature regime does not apply.
    let e = SetSpec::Ball {
        center: vec![0.0, 0.0],
        radius: 1.0,
    }
    .complement();
    let witness = TangentBallWitness {
        center: vec![0.5, 0.0],
        radius: 0.5,
    };
    let err = positive_curvature_check(
        &e,
        &[1.0, 0.0],
        &witness,
        2.0 * std::f64::consts::PI,
        0.05,
        0.1,
        &cfg(),
    )
    .unwrap_err();
    let text = err.to_string();
    assert!(text.contains("beta") || text.contains("omega"), "{text}");
}

#[test]
fn quadrant_apex_satisfies_the_bound() {
    // Quadrant cone: alpha_bar = pi/2, beta = pi/4, bound beta/s = 5 pi at
    // s = 0.05.  The witness ball sits in the opposite quadrant, tangent
    // at the apex.
    let e = canonical_set(&Family::Quadrant { dim: 2 }).unwrap();
    let d = 0.2f64;
    let witness = TangentBallWitness {
        center: vec![-d / 2f64.sqrt(), -d / 2f64.sqrt()],
        radius: d,
    };
    let report = positive_curvature_check(
        &e,
        &[0.0, 0.0],
        &witness,
        std::f64::consts::FRAC_PI_2,
        0.05,
        0.05,
        &cfg(),
    )
    .unwrap();
    assert!(report.pass, "{report:?}");
    assert!(report.liminf_proxy >= report.bound, "{report:?}");
    // The witness radius dominates the threshold radius.
    assert!(report.witness_radius >= report.delta_sigma, "{report:?}");
}

#[test]
fn dimpled_cone_edge_passes_with_matching_sigma() {
    // Quadrant cone with a hemispherical dimple of radius delta pressed
    // into the flat edge at (1, 0); the dimple top is a smooth boundary
    // point with the dimple ball as its exterior tangent ball.  An exact
    // half-space would sit at beta = 0, outside the regime, so the cone
    // supplies the sub-half-space opening.
    let delta = 0.3;
    let e = SetSpec::Intersection(vec![
        canonical_set(&Family::Quadrant { dim: 2 }).unwrap(),
        SetSpec::Ball {
            center: vec![1.0, 0.0],
            radius: delta,
        }
        .complement(),
    ]);
    let witness = TangentBallWitness {
        center: vec![1.0, 0.0],
        radius: delta,
    };
    // sigma chosen so that delta_sigma <= delta.
    let alpha_bar = std::f64::consts::FRAC_PI_2;
    let sigma = 0.05;
    let report = positive_curvature_check(
        &e,
        &[1.0, delta],
        &witness,
        alpha_bar,
        0.05,
        sigma,
        &cfg(),
    )
    .unwrap();
    assert!(
        report.delta_sigma <= delta,
        "delta_sigma {} vs {delta}",
        report.delta_sigma
    );
    assert!(report.pass, "{report:?}");
}

#[test]
fn invalid_witness_is_caught() {
    // A witness ball poking into E.
    let e = canonical_set(&Family::Quadrant { dim: 2 }).unwrap();
    let witness = TangentBallWitness {
        center: vec![0.3, 0.3],
        radius: 0.3 * 2f64.sqrt(),
    };
    let err = positive_curvature_check(
        &e,
        &[0.0, 0.0],
        &witness,
        std::f64::consts::FRAC_PI_2,
        0.05,
        0.05,
        &cfg(),
    )
    .unwrap_err();
    assert!(err.to_string().contains("witness"), "{err}");
}

#[test]
fn same_sign_bracket_is_an_error() {
    let ball = SetSpec::Ball {
        center: vec![0.0, 0.0],
        radius: 1.0,
    };
    // Curvature of a ball is positive for every s: same-sign bracket.
    let err = sign_change_root(&ball, &[1.0, 0.0], (0.1, 0.2), 1e-3, &cfg()).unwrap_err();
    assert!(err.to_string().contains("same-sign"), "{err}");
}

#[test]
fn symmetric_set_reports_degenerate() {
    let halfplane = canonical_set(&Family::HalfSpace { dim: 2 }).unwrap();
    match sign_change_root(&halfplane, &[0.0, 0.0], (0.2, 0.8), 1e-3, &cfg()).unwrap() {
        RootOutcome::Degenerate { max_abs, .. } => {
            assert!(max_abs < 1e-6, "{max_abs}");
        }
        other => panic!("expected degenerate outcome, got {other:?}"),
    }
}
