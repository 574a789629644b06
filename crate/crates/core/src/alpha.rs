//! The contribution from infinity
//! `alpha_s(q, r, E) = int_{CB_r(q)} chi_E(y) / |q-y|^{n+s} dy`
//! and its `s -> 0` limit `alpha(E)`, with closed forms for the canonical
//! families, Richardson extrapolation along a geometric s-grid, an
//! oscillation detector, the alpha calculus (monotonicity, additivity,
//! invariances, scaling, symmetric difference) and the
//! `mu_bar = alpha_bar |Omega|` consistency check.

use crate::geom::{Domain, GrowthTag, Membership, SetSpec};
use crate::quad::{self, QuadratureConfig};
use crate::thresholds::omega;
use crate::util::{self, SeededRng};
use crate::{Error, Result};

/// Default geometric s-grid for limits: 0.2 down to 0.003125, ratio 1/2.
pub fn default_s_grid() -> Vec<f64> {
    (0..7).map(|k| 0.2 * 0.5f64.powi(k)).collect()
}

/// Scan values and extrapolated limit of s |-> s * alpha_s(q, r, E).
#[derive(Debug, Clone)]
pub struct AlphaEstimate {
    pub s_grid: Vec<f64>,
    /// s * alpha_s along the grid.
    pub scaled_values: Vec<f64>,
    pub extrapolated_limit: f64,
    pub error_bar: f64,
    /// (limsup, liminf) estimates when the scaled values oscillate.
    pub limsup_liminf_split: Option<(f64, f64)>,
    /// Closed form with a family tag, when the structure provides one.
    pub closed_form: Option<(f64, String)>,
}

/// Closed-form alpha(E) read off the structure of the set, when available.
pub fn closed_form_alpha(e: &SetSpec) -> Option<(f64, String)> {
    let n = e.dim();
    let w = omega(n);
    if let Some(_b) = e.bounding_radius() {
        return Some((0.0, "finite measure".into()));
    }
    match e {
        SetSpec::Full { .. } => Some((w, "full space".into())),
        SetSpec::HalfSpace { .. } => Some((0.5 * w, "half-space".into())),
        SetSpec::SphericalCone { cap, .. } => Some((cap.measure(), "cone opening".into())),
        SetSpec::Supergraph { graph, .. } => match &graph.growth {
            GrowthTag::Bounded(_) => Some((0.5 * w, "bounded graph".into())),
            GrowthTag::Sublinear => Some((0.5 * w, "sublinear graph".into())),
            GrowthTag::CubicLike => Some((0.5 * w, "odd superlinear graph".into())),
            GrowthTag::Superlinear => Some((0.0, "superlinear graph".into())),
            GrowthTag::LinearCone { k, cap } => {
                let weight = util::gauss_on(
                    |t| (1.0 + t * t).powf(-0.5 * n as f64),
                    0.0,
                    *k,
                    64,
                );
                Some((
                    0.5 * w - cap.measure() * weight,
                    "linear growth on a small cone".into(),
                ))
            }
            GrowthTag::Custom => None,
        },
        SetSpec::Complement(inner) => {
            let (a, tag) = closed_form_alpha(inner)?;
            Some((w - a, format!("complement of {tag}")))
        }
        SetSpec::Translate(inner, _) | SetSpec::Rotate(inner, _) | SetSpec::Scale(inner, _) => {
            closed_form_alpha(inner)
        }
        SetSpec::Union(parts) => {
            // A union with at most one unbounded member keeps that member's
            // contribution; bounded members vanish at infinity.
            let mut unbounded = Vec::new();
            for p in parts {
                if p.bounding_radius().is_none() {
                    unbounded.push(p);
                }
            }
            match unbounded.len() {
                0 => Some((0.0, "finite measure".into())),
                1 => closed_form_alpha(unbounded[0]),
                _ => None,
            }
        }
        SetSpec::Intersection(parts) => {
            // Band between two bounded/sublinear graphs over the same axis.
            if let [SetSpec::Supergraph { graph: lo, axis: a1, .. }, SetSpec::Complement(upper)] =
                parts.as_slice()
            {
                if let SetSpec::Supergraph { graph: hi, axis: a2, .. } = upper.as_ref() {
                    let slow = |g: &GrowthTag| {
                        matches!(g, GrowthTag::Bounded(_) | GrowthTag::Sublinear)
                    };
                    if a1 == a2 && slow(&lo.growth) && slow(&hi.growth) {
                        return Some((0.0, "sublinear band".into()));
                    }
                }
            }
            // Removing bounded sets does not change the contribution from
            // infinity: X cap (complement of bounded) keeps alpha(X).
            let mut main = Vec::new();
            for p in parts {
                match p {
                    SetSpec::Complement(inner) if inner.bounding_radius().is_some() => {}
                    other => main.push(other),
                }
            }
            if main.len() == 1 && main.len() < parts.len() {
                let (a, tag) = closed_form_alpha(main[0])?;
                return Some((a, format!("{tag} minus a bounded set")));
            }
            None
        }
        _ => None,
    }
}

/// alpha_s(q, r, E), closed form for cone/half-space probes at their
/// distinguished point, generic ray quadrature otherwise.
pub fn alpha_s(e: &SetSpec, q: &[f64], r: f64, s: f64, cfg: &QuadratureConfig) -> Result<f64> {
    alpha_s_impl(e, q, r, s, cfg, true).map(|(v, _)| v)
}

/// Quadrature-only path, bypassing closed forms; used to test them.
pub fn alpha_s_numeric(
    e: &SetSpec,
    q: &[f64],
    r: f64,
    s: f64,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64)> {
    alpha_s_impl(e, q, r, s, cfg, false)
}

fn alpha_s_impl(
    e: &SetSpec,
    q: &[f64],
    r: f64,
    s: f64,
    cfg: &QuadratureConfig,
    allow_closed: bool,
) -> Result<(f64, f64)> {
    if r <= 0.0 {
        return Err(Error::InvalidParameter("alpha_s needs r > 0".into()));
    }
    if !(0.0 < s && s < 1.0) {
        return Err(Error::InvalidParameter(format!("s = {s} outside (0,1)")));
    }
    let n = q.len();
    if allow_closed {
        match e {
            SetSpec::Empty { .. } => return Ok((0.0, 0.0)),
            SetSpec::Full { .. } => return Ok((omega(n) * r.powf(-s) / s, 0.0)),
            SetSpec::SphericalCone { apex, cap } if util::dist(apex, q) < 1e-14 => {
                return Ok((cap.measure() * r.powf(-s) / s, 0.0));
            }
            SetSpec::HalfSpace { normal, offset }
                if (util::dot(normal, q) - offset).abs() < 1e-14 =>
            {
                return Ok((0.5 * omega(n) * r.powf(-s) / s, 0.0));
            }
            _ => {
                if let Some(b) = e.bounding_radius() {
                    if b + util::norm(q) <= r {
                        return Ok((0.0, 0.0));
                    }
                }
            }
        }
    }
    let (value, err) = quad::chi_weight_integral(e, q, r, s, cfg)?;
    if err > 0.5 * value.abs() + 1.0 {
        return Err(Error::UnclassifiedSet(format!(
            "weighted occupancy integral did not stabilize (value {value}, error {err})"
        )));
    }
    Ok((value, err))
}

/// Evaluate s * alpha_s along a geometric grid and extrapolate the limit.
pub fn alpha_limit(e: &SetSpec, q: &[f64], r: f64, cfg: &QuadratureConfig) -> Result<AlphaEstimate> {
    alpha_limit_on_grid(e, q, r, &default_s_grid(), cfg)
}

pub fn alpha_limit_on_grid(
    e: &SetSpec,
    q: &[f64],
    r: f64,
    s_grid: &[f64],
    cfg: &QuadratureConfig,
) -> Result<AlphaEstimate> {
    if s_grid.len() < 3 {
        return Err(Error::InvalidParameter(
            "alpha limit needs at least 3 grid points".into(),
        ));
    }
    let evals: Vec<Result<(f64, f64)>> = util::par_map(s_grid, |&s| {
        alpha_s_impl(e, q, r, s, cfg, true)
    });
    let mut scaled = Vec::with_capacity(s_grid.len());
    let mut scaled_err = 0.0f64;
    for (s, ev) in s_grid.iter().zip(evals) {
        let (v, err) = ev?;
        scaled.push(s * v);
        scaled_err = scaled_err.max(s * err);
    }

    let m = scaled.len();
    let oscillating = detect_oscillation(&scaled);
    if oscillating {
        let tail = &scaled[m.saturating_sub(4)..];
        let hi = tail.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let lo = tail.iter().cloned().fold(f64::INFINITY, f64::min);
        return Ok(AlphaEstimate {
            s_grid: s_grid.to_vec(),
            scaled_values: scaled,
            extrapolated_limit: 0.5 * (hi + lo),
            error_bar: 0.5 * (hi - lo) + scaled_err,
            limsup_liminf_split: Some((hi, lo)),
            closed_form: closed_form_alpha(e),
        });
    }

    // Model s alpha_s = L + c s + o(s) on the halving grid:
    // L = 2 f(s/2) - f(s).
    let l_last = 2.0 * scaled[m - 1] - scaled[m - 2];
    let l_prev = 2.0 * scaled[m - 2] - scaled[m - 3];
    Ok(AlphaEstimate {
        s_grid: s_grid.to_vec(),
        scaled_values: scaled,
        extrapolated_limit: l_last,
        error_bar: (l_last - l_prev).abs() + 3.0 * scaled_err,
        limsup_liminf_split: None,
        closed_form: closed_form_alpha(e),
    })
}

/// Non-Cauchy detection on the scaled values: alternating differences of
/// non-decreasing magnitude over the tail of the grid.
fn detect_oscillation(scaled: &[f64]) -> bool {
    let m = scaled.len();
    if m < 4 {
        return false;
    }
    let d: Vec<f64> = scaled.windows(2).map(|w| w[1] - w[0]).collect();
    let tail = &d[d.len().saturating_sub(3)..];
    let alternating = tail.windows(2).all(|w| w[0] * w[1] < 0.0);
    let growing = tail.windows(2).all(|w| w[1].abs() >= 0.8 * w[0].abs());
    let significant = tail.iter().any(|v| v.abs() > 1e-6);
    alternating && growing && significant
}

/// Relations of the alpha calculus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CalculusRelation {
    /// E \ B subset of F \ B implies alpha_s(E) <= alpha_s(F).
    Monotone,
    /// Eventually disjoint unions are additive.
    Additive,
    /// Invariance under translations and rotations.
    RigidMotion,
    /// alpha_s(q, r, lambda E) = lambda^{-s} alpha_s(q/l, r/l, E).
    Scaling,
    /// |alpha_s(E) - alpha_s(F)| <= alpha_s(E delta F).
    SymmDiff,
}

#[derive(Debug, Clone)]
pub struct CalculusSample {
    pub params: String,
    pub lhs: f64,
    pub rhs: f64,
    /// Positive amount by which the identity/inequality fails.
    pub violation: f64,
}

#[derive(Debug, Clone)]
pub struct CalculusReport {
    pub relation: CalculusRelation,
    pub samples: Vec<CalculusSample>,
    pub max_violation: f64,
}

/// Evaluate both sides of an alpha-calculus relation at seeded random
/// probes (q, r, s, lambda) and report the worst violation.
pub fn alpha_calculus_check(
    e: &SetSpec,
    f: &SetSpec,
    relation: CalculusRelation,
    probes: usize,
    seed: u64,
    cfg: &QuadratureConfig,
) -> Result<CalculusReport> {
    let n = e.dim();
    let mut rng = SeededRng::new(seed);
    let mut samples = Vec::with_capacity(probes);
    let mut max_violation = 0.0f64;
    for _ in 0..probes {
        let s = rng.range(0.05, 0.6);
        let r = rng.range(0.5, 2.0);
        let q: Vec<f64> = (0..n).map(|_| rng.range(-0.5, 0.5)).collect();
        let tol = |v: f64| 20.0 * cfg.rel_tol * (v.abs() + 1.0);
        let (lhs, rhs, params) = match relation {
            CalculusRelation::Monotone => {
                let a = alpha_s(e, &q, r, s, cfg)?;
                let b = alpha_s(f, &q, r, s, cfg)?;
                (a, b, format!("s={s:.3} r={r:.3} q={q:?}"))
            }
            CalculusRelation::Additive => {
                let union = SetSpec::Union(vec![e.clone(), f.clone()]);
                let a = alpha_s(&union, &q, r, s, cfg)?;
                let b = alpha_s(e, &q, r, s, cfg)? + alpha_s(f, &q, r, s, cfg)?;
                (a, b, format!("s={s:.3} r={r:.3} q={q:?}"))
            }
            CalculusRelation::RigidMotion => {
                let v: Vec<f64> = (0..n).map(|_| rng.range(-1.0, 1.0)).collect();
                let moved = e.clone().translate(v.clone());
                let q_moved = util::add(&q, &v);
                let a = alpha_s(&moved, &q_moved, r, s, cfg)?;
                let b = alpha_s(e, &q, r, s, cfg)?;
                (a, b, format!("s={s:.3} r={r:.3} v={v:?}"))
            }
            CalculusRelation::Scaling => {
                let lambda = rng.range(0.4, 3.0);
                let scaled = e.clone().scaled(lambda);
                let a = alpha_s(&scaled, &q, r, s, cfg)?;
                let q_over: Vec<f64> = q.iter().map(|x| x / lambda).collect();
                let b = lambda.powf(-s) * alpha_s(e, &q_over, r / lambda, s, cfg)?;
                (a, b, format!("s={s:.3} r={r:.3} lambda={lambda:.3}"))
            }
            CalculusRelation::SymmDiff => {
                let a = (alpha_s(e, &q, r, s, cfg)? - alpha_s(f, &q, r, s, cfg)?).abs();
                let b = alpha_s(&SetSpec::symm_diff(e.clone(), f.clone()), &q, r, s, cfg)?;
                (a, b, format!("s={s:.3} r={r:.3} q={q:?}"))
            }
        };
        let violation = match relation {
            CalculusRelation::Monotone | CalculusRelation::SymmDiff => {
                (lhs - rhs - tol(rhs)).max(0.0)
            }
            _ => ((lhs - rhs).abs() - tol(rhs)).max(0.0),
        };
        max_violation = max_violation.max(violation);
        samples.push(CalculusSample {
            params,
            lhs,
            rhs,
            violation,
        });
    }
    Ok(CalculusReport {
        relation,
        samples,
        max_violation,
    })
}

#[derive(Debug, Clone)]
pub struct MuBarReport {
    pub s_values: Vec<f64>,
    /// s P_s(E_0, Omega) along the grid.
    pub scaled: Vec<f64>,
    pub extrapolated: f64,
    pub alpha_bar: f64,
    pub volume: f64,
    /// alpha_bar * |Omega|.
    pub target: f64,
    pub rel_err: f64,
}

/// Check mu_bar(E_0) = alpha_bar(E_0) |Omega| by extrapolating the scaled
/// discrete fractional perimeter of the empty state.
pub fn mu_bar_check(
    e0: &SetSpec,
    domain: &Domain,
    s_grid: &[f64],
    resolution: usize,
    cfg: &QuadratureConfig,
) -> Result<MuBarReport> {
    validate_disjoint_from(e0, domain)?;
    let alpha_bar = match closed_form_alpha(e0) {
        Some((a, _)) => a,
        None => alpha_limit(e0, &vec![0.0; domain.dim()], 1.0, cfg)?.extrapolated_limit,
    };
    let mut scaled = Vec::with_capacity(s_grid.len());
    for &s in s_grid {
        let problem = crate::minimize::GridProblem::build(domain.clone(), resolution, e0.clone(), s, cfg)?;
        let empty = vec![false; problem.cell_count()];
        let p_s = problem.discrete_perimeter(&empty);
        scaled.push(s * p_s);
    }
    let m = scaled.len();
    let extrapolated = if m >= 2 {
        2.0 * scaled[m - 1] - scaled[m - 2]
    } else {
        scaled[m - 1]
    };
    let volume = domain.volume();
    let target = alpha_bar * volume;
    Ok(MuBarReport {
        s_values: s_grid.to_vec(),
        scaled,
        extrapolated,
        alpha_bar,
        volume,
        target,
        rel_err: (extrapolated - target).abs() / target.abs().max(1e-12),
    })
}

fn validate_disjoint_from(e0: &SetSpec, domain: &Domain) -> Result<()> {
    let (lo, hi) = domain.bounding_box();
    let n = lo.len();
    let grid = 17usize;
    let mut idx = vec![0usize; n];
    loop {
        let p: Vec<f64> = (0..n)
            .map(|i| lo[i] + (hi[i] - lo[i]) * (idx[i] as f64 + 0.5) / grid as f64)
            .collect();
        if domain.contains(&p) && e0.membership(&p) == Membership::Inside {
            return Err(Error::Precondition(format!(
                "exterior datum intersects Omega at {p:?}"
            )));
        }
        let mut axis = 0;
        loop {
            idx[axis] += 1;
            if idx[axis] < grid {
                break;
            }
            idx[axis] = 0;
            axis += 1;
            if axis == n {
                return Ok(());
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{canonical_set, Family};

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn quadrant_cone_closed_form() {
        // alpha_s(0, 1, C) = o / s with o = pi/2 (n = 2, s = 0.1 -> 5 pi).
        let c = canonical_set(&Family::Quadrant { dim: 2 }).unwrap();
        let v = alpha_s(&c, &[0.0, 0.0], 1.0, 0.1, &cfg()).unwrap();
        assert!((v - 5.0 * std::f64::consts::PI).abs() < 1e-12);
        let (num, err) = alpha_s_numeric(&c, &[0.0, 0.0], 1.0, 0.1, &cfg()).unwrap();
        assert!((num - v).abs() < 1e-4 * v + err);
    }

    #[test]
    fn empty_set_is_zero() {
        let e = SetSpec::Empty { dim: 2 };
        assert_eq!(alpha_s(&e, &[0.3, 0.1], 1.0, 0.3, &cfg()).unwrap(), 0.0);
    }

    #[test]
    fn halfspace_closed_form_and_quadrature() {
        // Half-space through q: omega_n / (2 s) at r = 1.
        let e = canonical_set(&Family::HalfSpace { dim: 2 }).unwrap();
        let s = 0.25;
        let v = alpha_s(&e, &[0.7, 0.0], 1.0, s, &cfg()).unwrap();
        let expected = omega(2) / (2.0 * s);
        assert!((v - expected).abs() < 1e-12);
        let (num, err) = alpha_s_numeric(&e, &[0.7, 0.0], 1.0, s, &cfg()).unwrap();
        assert!((num - expected).abs() < 1e-4 * expected + err);
    }

    #[test]
    fn closed_forms_route_families() {
        let w = omega(2);
        let cases: Vec<(SetSpec, f64)> = vec![
            (canonical_set(&Family::CubicSupergraph).unwrap(), 0.5 * w),
            (
                canonical_set(&Family::Parabola { dim: 2 }).unwrap(),
                0.0,
            ),
            (
                canonical_set(&Family::TanhGraph { dim: 2 }).unwrap(),
                0.5 * w,
            ),
            (
                canonical_set(&Family::Candy {
                    dim: 2,
                    c: 1.0,
                    p: 0.5,
                })
                .unwrap(),
                0.0,
            ),
            (
                canonical_set(&Family::Annulus {
                    dim: 2,
                    inner: 1.0,
                    outer: 2.0,
                })
                .unwrap(),
                0.0,
            ),
        ];
        for (set, expected) in cases {
            let (a, tag) = closed_form_alpha(&set).expect("closed form");
            assert!((a - expected).abs() < 1e-12, "{tag}: {a} vs {expected}");
        }
    }

    #[test]
    fn complement_duality_in_closed_form() {
        let c = canonical_set(&Family::Quadrant { dim: 2 }).unwrap();
        let (a, _) = closed_form_alpha(&c).unwrap();
        let (ac, _) = closed_form_alpha(&c.clone().complement()).unwrap();
        assert!((a + ac - omega(2)).abs() < 1e-12);
    }

    #[test]
    fn alphasigma_closed_form_value() {
        // n = 3, S~ of length 1, k = 1:
        // alpha = omega_3/2 - 1 * int_0^1 (1+t^2)^{-3/2} dt = 2 pi - 1/sqrt(2).
        let e = canonical_set(&Family::LinearConeGraph {
            eps_bar: 0.5,
            k: 1.0,
        })
        .unwrap();
        let (a, _) = closed_form_alpha(&e).unwrap();
        let expected = 2.0 * std::f64::consts::PI - 1.0 / 2f64.sqrt();
        assert!((a - expected).abs() < 1e-10, "{a} vs {expected}");
    }

    #[test]
    fn scaling_identity_exact_for_cone() {
        // Cones are scale invariant: both routes agree to quadrature tol.
        let c = canonical_set(&Family::Quadrant { dim: 2 }).unwrap();
        let report = alpha_calculus_check(
            &c,
            &c,
            CalculusRelation::Scaling,
            6,
            0xa1fa,
            &cfg(),
        )
        .unwrap();
        assert_eq!(report.samples.len(), 6);
        assert!(
            report.max_violation == 0.0,
            "violation {}",
            report.max_violation
        );
    }

    #[test]
    fn oscillation_detector_on_synthetic_sequences() {
        // Alternating, non-shrinking differences trigger the detector;
        // smooth decay and noise-level wiggles do not.
        assert!(detect_oscillation(&[1.0, 2.0, 1.0, 2.1, 0.9, 2.2, 0.8]));
        assert!(!detect_oscillation(&[2.0, 1.5, 1.25, 1.125, 1.0625]));
        assert!(!detect_oscillation(&[
            1.0,
            1.0 + 1e-9,
            1.0 - 1e-9,
            1.0 + 1e-9,
            1.0 - 1e-9
        ]));
    }

    #[test]
    fn bounded_scan_decreases_to_zero() {
        let b = canonical_set(&Family::Ball { dim: 2, radius: 1.0 }).unwrap();
        let est = alpha_limit(&b, &[3.0, 0.0], 1.0, &cfg()).unwrap();
        assert!(est.extrapolated_limit.abs() < 0.05);
        for w in est.scaled_values.windows(2) {
            assert!(w[1] <= w[0] + 1e-9);
        }
    }
}
