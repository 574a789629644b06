//! Classification checkers on minimizer outputs: delta-density, the
//! density estimate, the plane maximum principle, and the stickiness
//! phase sweep.

use super::{minimize, GridProblem, MinimizeResult, SolverConfig};
use crate::geom::{canonical_set, Domain, Family, Membership, SetSpec};
use crate::quad::QuadratureConfig;
use crate::thresholds::{omega, ThresholdSet};
use crate::{Error, Result};

/// Occupancy view accepted by the delta-density checker.
pub enum SetView<'a> {
    Raster {
        problem: &'a GridProblem,
        state: &'a [bool],
    },
    Spec(&'a SetSpec),
}

impl SetView<'_> {
    fn cell_size(&self) -> f64 {
        match self {
            SetView::Raster { problem, .. } => problem.h,
            SetView::Spec(_) => 0.0,
        }
    }

    /// Does E meet B_delta(x) in positive measure?
    fn meets_ball(&self, x: &[f64], delta: f64) -> bool {
        match self {
            SetView::Raster { problem, state } => {
                for (i, &occ) in state.iter().enumerate() {
                    if !occ {
                        continue;
                    }
                    let c = problem.cell_center(i);
                    if crate::util::dist(&c, x) < delta {
                        return true;
                    }
                }
                false
            }
            SetView::Spec(e) => {
                let n = x.len();
                let pitch = delta / 6.0;
                let steps = (2.0 * delta / pitch).ceil() as i64;
                let mut idx = vec![0i64; n];
                loop {
                    let p: Vec<f64> = (0..n)
                        .map(|k| x[k] - delta + (idx[k] as f64 + 0.5) * pitch)
                        .collect();
                    if crate::util::dist(&p, x) < delta
                        && e.membership(&p) == Membership::Inside
                    {
                        return true;
                    }
                    let mut axis = 0;
                    loop {
                        idx[axis] += 1;
                        if idx[axis] < steps {
                            break;
                        }
                        idx[axis] = 0;
                        axis += 1;
                        if axis == n {
                            return false;
                        }
                    }
                }
            }
        }
    }
}

/// Is the set delta-dense in Omega: |B_delta(x) cap E| > 0 for every ball
/// B_delta(x) compactly contained in Omega?  Returns the first witness
/// ball center when the answer is no.
pub fn is_delta_dense(
    view: &SetView,
    domain: &Domain,
    delta: f64,
) -> Result<(bool, Option<Vec<f64>>)> {
    let h = view.cell_size();
    if h > 0.0 && delta <= h {
        return Err(Error::InvalidParameter(format!(
            "delta = {delta} at or below the raster resolution {h}"
        )));
    }
    let n = domain.dim();
    let (lo, hi) = domain.bounding_box();
    let pitch = delta / 4.0;
    let margin = if h > 0.0 { 0.5 * h } else { 0.01 * delta };
    let steps: Vec<usize> = (0..n)
        .map(|i| ((hi[i] - lo[i]) / pitch).ceil() as usize + 1)
        .collect();
    let mut idx = vec![0usize; n];
    let mut any_center = false;
    loop {
        let x: Vec<f64> = (0..n).map(|i| lo[i] + idx[i] as f64 * pitch).collect();
        // Admissible: B_delta(x) compactly inside Omega.
        if domain.signed_distance(&x) < -(delta + margin) {
            any_center = true;
            if !view.meets_ball(&x, delta) {
                return Ok((false, Some(x)));
            }
        }
        let mut axis = 0;
        loop {
            idx[axis] += 1;
            if idx[axis] < steps[axis] {
                break;
            }
            idx[axis] = 0;
            axis += 1;
            if axis == n {
                let _ = any_center;
                return Ok((true, None));
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct DensityReport {
    pub delta: f64,
    pub gamma: f64,
    /// gamma (omega_n - 2 alpha_bar) / (omega_n - alpha_bar).
    pub required_fraction: f64,
    /// min over admissible centers of achieved/required (with one
    /// cell-layer slack).
    pub worst_ratio: f64,
    pub worst_center: Option<Vec<f64>>,
    pub centers: usize,
    pub pass: bool,
}

/// Check the uniform density estimate
/// |(Omega cap B_delta(x)) \ E| >= gamma ((w - 2a)/(w - a)) |Omega cap
/// B_delta(x)| at every lattice center of the closed domain.
pub fn density_estimate_check(
    problem: &GridProblem,
    state: &[bool],
    alpha_bar: f64,
    delta: f64,
    gamma: f64,
) -> Result<DensityReport> {
    if !(0.0 < gamma && gamma < 1.0) {
        return Err(Error::InvalidParameter("gamma must lie in (0,1)".into()));
    }
    let n = problem.n;
    let w = omega(n);
    let required_fraction = gamma * (w - 2.0 * alpha_bar) / (w - alpha_bar);
    let h = problem.h;
    // Discretization slack: half of the cell ring crossing the ball
    // boundary (a full ring would swallow the estimate at coarse h).
    let layer = match n {
        1 => 1.0,
        _ => std::f64::consts::PI * delta / h + 2.0,
    };

    let mut worst_ratio = f64::INFINITY;
    let mut worst_center = None;
    let mut centers = 0usize;
    for i in 0..problem.cell_count() {
        let x = problem.cell_center(i);
        if problem.domain.signed_distance(&x) > h {
            continue;
        }
        let mut total = 0usize;
        let mut empty = 0usize;
        for (j, &occ) in state.iter().enumerate() {
            let c = problem.cell_center(j);
            if crate::util::dist(&c, &x) < delta {
                total += 1;
                if !occ {
                    empty += 1;
                }
            }
        }
        if total == 0 {
            continue;
        }
        centers += 1;
        let required = required_fraction * total as f64;
        let achieved = empty as f64 + layer;
        let ratio = if required > 0.0 {
            achieved / required
        } else {
            f64::INFINITY
        };
        if ratio < worst_ratio {
            worst_ratio = ratio;
            worst_center = Some(x);
        }
    }
    Ok(DensityReport {
        delta,
        gamma,
        required_fraction,
        worst_ratio,
        worst_center,
        centers,
        pass: worst_ratio >= 1.0,
    })
}

#[derive(Debug, Clone)]
pub struct MaxPrincipleReport {
    pub nu: Vec<f64>,
    pub a: f64,
    pub violations: Vec<Vec<f64>>,
    pub pass: bool,
}

/// Plane maximum principle: if { x . nu <= a } \ Omega avoids the exterior
/// datum, no occupied domain cell may have center with x . nu <= a - h.
pub fn maximum_principle_check(
    problem: &GridProblem,
    state: &[bool],
    nu: &[f64],
    a: f64,
) -> Result<MaxPrincipleReport> {
    // Hypothesis on the collar raster.
    for (c, &occ) in problem.collar_cells.iter().zip(&problem.exterior_occ) {
        if occ {
            let center: Vec<f64> = (0..problem.n)
                .map(|k| problem.origin[k] + (c[k] as f64 + 0.5) * problem.h)
                .collect();
            if crate::util::dot(&center, nu) <= a {
                return Err(Error::Precondition(format!(
                    "exterior datum occupies {center:?} below the plane"
                )));
            }
        }
    }
    // Hypothesis beyond the collar, sampled.
    let n = problem.n;
    let mut rng = crate::util::SeededRng::new(0x6d61_7870);
    let box_reach: f64 = problem
        .lattice
        .iter()
        .zip(&problem.origin)
        .map(|(&cells, &o)| (o + cells as f64 * problem.h).abs().max(o.abs()))
        .fold(0.0, f64::max);
    for _ in 0..2000 {
        let radius = box_reach * (1.0 + 99.0 * rng.uniform());
        let dir = rng.direction(n);
        let p: Vec<f64> = dir.iter().map(|d| d * radius).collect();
        if crate::util::dot(&p, nu) <= a && problem.exterior.membership(&p) == Membership::Inside
        {
            return Err(Error::Precondition(format!(
                "exterior datum occupies {p:?} below the plane"
            )));
        }
    }

    let mut violations = Vec::new();
    for (i, &occ) in state.iter().enumerate() {
        if occ {
            let c = problem.cell_center(i);
            if crate::util::dot(&c, nu) <= a - problem.h {
                violations.push(c);
            }
        }
    }
    Ok(MaxPrincipleReport {
        nu: nu.to_vec(),
        a,
        pass: violations.is_empty(),
        violations,
    })
}

/// Geometry presets of the stickiness sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepPreset {
    /// Omega = B_1, exterior = first quadrant minus the disc.
    QuadrantInDisc,
    /// Omega = B_1, exterior = lower half-plane minus the disc.
    HalfplaneInDisc,
    /// Omega = B_1, exterior = a sublinear band minus the disc.
    Candy,
    /// Omega = B_1, exterior = a far bounded ball.
    BoundedExterior,
}

impl SweepPreset {
    pub fn name(&self) -> &'static str {
        match self {
            SweepPreset::QuadrantInDisc => "quadrant-in-disc",
            SweepPreset::HalfplaneInDisc => "halfplane-in-disc",
            SweepPreset::Candy => "candy",
            SweepPreset::BoundedExterior => "bounded-E0",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "quadrant-in-disc" => Ok(SweepPreset::QuadrantInDisc),
            "halfplane-in-disc" => Ok(SweepPreset::HalfplaneInDisc),
            "candy" => Ok(SweepPreset::Candy),
            "bounded-E0" | "bounded-e0" => Ok(SweepPreset::BoundedExterior),
            other => Err(Error::InvalidParameter(format!(
                "unknown preset '{other}'"
            ))),
        }
    }

    /// Domain and exterior datum (already restricted off the domain).
    pub fn geometry(&self) -> Result<(Domain, SetSpec)> {
        let domain = Domain::ball(vec![0.0, 0.0], 1.0);
        let cut = SetSpec::Ball {
            center: vec![0.0, 0.0],
            radius: 1.0,
        }
        .complement();
        let raw = match self {
            SweepPreset::QuadrantInDisc => canonical_set(&Family::Quadrant { dim: 2 })?,
            SweepPreset::HalfplaneInDisc => SetSpec::HalfSpace {
                normal: vec![0.0, -1.0],
                offset: 0.0,
            },
            SweepPreset::Candy => canonical_set(&Family::Candy {
                dim: 2,
                c: 0.6,
                p: 0.5,
            })?,
            SweepPreset::BoundedExterior => SetSpec::Ball {
                center: vec![3.0, 0.0],
                radius: 0.5,
            },
        };
        Ok((domain, SetSpec::Intersection(vec![raw, cut])))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Empty,
    Full,
    DeltaDense,
    Other,
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::Empty => "empty",
            Classification::Full => "full",
            Classification::DeltaDense => "delta-dense",
            Classification::Other => "other",
        }
    }
}

#[derive(Debug, Clone)]
pub struct PhaseRow {
    pub s: f64,
    pub classification: Classification,
    pub occupancy: f64,
    pub energy: f64,
    pub restarts_agreeing: usize,
    pub low_confidence: bool,
    pub delta_s: Option<f64>,
    pub delta_clamped: bool,
}

#[derive(Debug, Clone)]
pub struct PhaseTable {
    pub preset: &'static str,
    pub alpha_bar: f64,
    pub resolution: usize,
    pub rows: Vec<PhaseRow>,
    pub results: Vec<MinimizeResult>,
}

impl PhaseTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "s,classification,occupancy,energy,restarts_agreeing,low_confidence,delta_s,delta_clamped\n",
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.s,
                r.classification.name(),
                r.occupancy,
                r.energy,
                r.restarts_agreeing,
                r.low_confidence,
                r.delta_s.map_or(String::new(), |d| d.to_string()),
                r.delta_clamped
            ));
        }
        out
    }
}

/// Minimize a preset geometry across an s-list and classify each result
/// as empty / full / delta_s-dense / other.
pub fn stickiness_sweep(
    preset: SweepPreset,
    s_list: &[f64],
    resolution: usize,
    solver: &SolverConfig,
    cfg: &QuadratureConfig,
) -> Result<PhaseTable> {
    let (domain, exterior) = preset.geometry()?;
    let alpha_bar = crate::alpha::closed_form_alpha(&exterior)
        .map(|(a, _)| a)
        .ok_or_else(|| {
            Error::UnclassifiedSet("sweep presets must have closed-form alpha".into())
        })?;
    let thresholds = ThresholdSet::new(2, alpha_bar)?;

    let mut rows = Vec::new();
    let mut results = Vec::new();
    for &s in s_list {
        let problem = GridProblem::build(domain.clone(), resolution, exterior.clone(), s, cfg)?;
        let result = minimize(&problem, solver)?;
        let occupied = result.state.iter().filter(|&&b| b).count();
        let total = result.state.len();

        let (delta_s, delta_clamped, classification) = if occupied == 0 {
            (thresholds.delta_of_s(s).ok(), false, Classification::Empty)
        } else if occupied == total {
            (thresholds.delta_of_s(s).ok(), false, Classification::Full)
        } else if thresholds.beta > 0.0 {
            let raw_delta = thresholds.delta_of_s(s)?;
            let clamped = raw_delta < 2.0 * problem.h;
            let delta = raw_delta.max(2.0 * problem.h);
            let view = SetView::Raster {
                problem: &problem,
                state: &result.state,
            };
            let (dense, _witness) = is_delta_dense(&view, &domain, delta)?;
            let class = if dense {
                Classification::DeltaDense
            } else {
                Classification::Other
            };
            (Some(raw_delta), clamped, class)
        } else {
            // alpha_bar >= omega/2: outside the dichotomy regime.
            (None, false, Classification::Other)
        };

        rows.push(PhaseRow {
            s,
            classification,
            occupancy: occupied as f64 / total as f64,
            energy: result.energy,
            restarts_agreeing: result.restarts_agreeing,
            low_confidence: result.low_confidence,
            delta_s,
            delta_clamped,
        });
        results.push(result);
    }
    Ok(PhaseTable {
        preset: preset.name(),
        alpha_bar,
        resolution,
        rows,
        results,
    })
}
