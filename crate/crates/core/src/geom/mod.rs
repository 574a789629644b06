//! Algebraic set representations with decidable membership.
//!
//! A [`SetSpec`] is a tree of geometric primitives (half-spaces, balls,
//! spherical cones, supergraphs, rasters) combined by boolean operations,
//! rigid motions and dilations.  Membership queries return a tristate: a
//! query point within geometric tolerance of a primitive boundary is
//! reported as [`Membership::Boundary`] rather than silently classified.
//! Quadrature nodes avoid primitive boundaries by construction, so the
//! tristate never leaks into integral values.

mod canonical;
mod domain;
mod graph;
mod json;
mod raster;

pub use canonical::{canonical_set, Family};
pub use domain::{Domain, DomainShape};
pub use graph::{GraphFunction, GraphKind, GrowthTag};
pub use raster::RasterSet;

use std::sync::Arc;

use crate::util::{dist, dot, mat_t_vec, norm, sub};
use crate::{Error, Result};

/// Tristate membership answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Outside,
    /// Within `eps_geo` of a primitive boundary; the classification is not
    /// trusted there.
    Boundary,
}

impl Membership {
    pub fn flip(self) -> Self {
        match self {
            Membership::Inside => Membership::Outside,
            Membership::Outside => Membership::Inside,
            Membership::Boundary => Membership::Boundary,
        }
    }

    pub fn is_inside(self) -> bool {
        matches!(self, Membership::Inside)
    }
}

/// Boundary tolerance: membership within `eps_geo(x)` of a primitive
/// boundary is reported as uncertain.
pub fn eps_geo(x: &[f64]) -> f64 {
    1e-12 * (1.0 + norm(x))
}

/// A spherical cap, the generator of a [`SetSpec::SphericalCone`].
///
/// Either an axis/half-angle cap, or a product of angle intervals in the
/// spherical coordinates sigma = (cos s1, sin s1 cos s2, ...).
#[derive(Debug, Clone)]
pub enum SphereCap {
    HalfAngle { axis: Vec<f64>, angle: f64 },
    AngleIntervals { dim: usize, intervals: Vec<(f64, f64)> },
}

impl SphereCap {
    /// Ambient dimension d of the sphere S^{d-1} the cap lives on.
    pub fn dim(&self) -> usize {
        match self {
            SphereCap::HalfAngle { axis, .. } => axis.len(),
            SphereCap::AngleIntervals { dim, .. } => *dim,
        }
    }

    /// Signed angular margin of a unit direction: positive inside the cap,
    /// comparable to the angular distance to the cap boundary.
    pub fn angular_margin(&self, dir: &[f64]) -> f64 {
        match self {
            SphereCap::HalfAngle { axis, angle } => {
                let c = dot(axis, dir).clamp(-1.0, 1.0);
                angle - c.acos()
            }
            SphereCap::AngleIntervals { intervals, .. } => {
                let angles = spherical_angles(dir);
                let mut margin = f64::INFINITY;
                for (a, &(lo, hi)) in angles.iter().zip(intervals) {
                    margin = margin.min((a - lo).min(hi - a));
                }
                margin
            }
        }
    }

    /// H^{d-1} measure of the cap on S^{d-1}.
    ///
    /// Closed form for axis/half-angle caps, product-of-interval quadrature
    /// otherwise.
    pub fn measure(&self) -> f64 {
        match self {
            SphereCap::HalfAngle { axis, angle } => cap_measure(axis.len(), *angle),
            SphereCap::AngleIntervals { dim, intervals } => {
                // dH = prod_{i<k} sin^{k-1-i}(s_i) ds_1..ds_k on S^k, k = dim-1.
                let k = dim - 1;
                let mut total = 1.0;
                for (i, &(lo, hi)) in intervals.iter().enumerate() {
                    let power = (k - 1 - i) as i32;
                    if power == 0 {
                        total *= hi - lo;
                    } else {
                        total *= crate::util::gauss_on(
                            |t| t.sin().powi(power),
                            lo,
                            hi,
                            32,
                        );
                    }
                }
                total
            }
        }
    }
}

/// H^{d-1} measure of the axis cap of half-angle `angle` on S^{d-1}.
pub fn cap_measure(d: usize, angle: f64) -> f64 {
    match d {
        1 => {
            // S^0: two points; the cap contains one of them (or both at pi).
            if angle >= std::f64::consts::PI {
                2.0
            } else {
                1.0
            }
        }
        2 => 2.0 * angle,
        _ => {
            let omega_prev = crate::thresholds::omega(d - 1);
            omega_prev * crate::util::gauss_on(|t| t.sin().powi(d as i32 - 2), 0.0, angle, 48)
        }
    }
}

/// Spherical coordinates of a unit vector: x1 = cos s1,
/// x2 = sin s1 cos s2, ..., with the last angle in [0, 2pi).
pub fn spherical_angles(dir: &[f64]) -> Vec<f64> {
    let d = dir.len();
    let mut angles = Vec::with_capacity(d - 1);
    let mut sin_prod: f64 = 1.0;
    for i in 0..d - 1 {
        if i == d - 2 {
            let denom = if sin_prod.abs() < 1e-300 { 1e-300 } else { sin_prod };
            let mut a = (dir[d - 1] / denom).atan2(dir[d - 2] / denom);
            if a < 0.0 {
                a += 2.0 * std::f64::consts::PI;
            }
            angles.push(a);
        } else {
            let c = (dir[i] / sin_prod).clamp(-1.0, 1.0);
            let a = c.acos();
            angles.push(a);
            sin_prod *= a.sin();
            if sin_prod.abs() < 1e-300 {
                sin_prod = 1e-300;
            }
        }
    }
    angles
}

/// Algebraic description of a measurable set E in R^n.
#[derive(Debug, Clone)]
pub enum SetSpec {
    Empty { dim: usize },
    Full { dim: usize },
    /// { x : x . normal >= offset }, `normal` a unit vector.
    HalfSpace { normal: Vec<f64>, offset: f64 },
    Ball { center: Vec<f64>, radius: f64 },
    /// { apex + t sigma : t >= 0, sigma in cap }.
    SphericalCone { apex: Vec<f64>, cap: SphereCap },
    /// { x : x_axis >= u(x') } for a graph u over the remaining coordinates.
    Supergraph {
        graph: Arc<GraphFunction>,
        axis: usize,
        dim: usize,
    },
    Raster(Arc<RasterSet>),
    Complement(Box<SetSpec>),
    Union(Vec<SetSpec>),
    Intersection(Vec<SetSpec>),
    Translate(Box<SetSpec>, Vec<f64>),
    /// Rotate(E, R) = { R x : x in E }; `matrix` is row-major orthogonal.
    Rotate(Box<SetSpec>, Vec<Vec<f64>>),
    /// Scale(E, l) = { l x : x in E }, l > 0.
    Scale(Box<SetSpec>, f64),
}

impl SetSpec {
    pub fn complement(self) -> SetSpec {
        SetSpec::Complement(Box::new(self))
    }

    pub fn translate(self, v: Vec<f64>) -> SetSpec {
        SetSpec::Translate(Box::new(self), v)
    }

    pub fn rotate(self, m: Vec<Vec<f64>>) -> SetSpec {
        SetSpec::Rotate(Box::new(self), m)
    }

    pub fn scaled(self, lambda: f64) -> SetSpec {
        SetSpec::Scale(Box::new(self), lambda)
    }

    pub fn union(parts: Vec<SetSpec>) -> SetSpec {
        SetSpec::Union(parts)
    }

    pub fn intersection(parts: Vec<SetSpec>) -> SetSpec {
        SetSpec::Intersection(parts)
    }

    /// E triangle F, the symmetric difference.
    pub fn symm_diff(e: SetSpec, f: SetSpec) -> SetSpec {
        SetSpec::Union(vec![
            SetSpec::Intersection(vec![e.clone(), f.clone().complement()]),
            SetSpec::Intersection(vec![f, e.complement()]),
        ])
    }

    /// Ambient dimension, if the tree pins one.
    pub fn dim(&self) -> usize {
        match self {
            SetSpec::Empty { dim } | SetSpec::Full { dim } => *dim,
            SetSpec::HalfSpace { normal, .. } => normal.len(),
            SetSpec::Ball { center, .. } => center.len(),
            SetSpec::SphericalCone { apex, .. } => apex.len(),
            SetSpec::Supergraph { dim, .. } => *dim,
            SetSpec::Raster(r) => r.dim(),
            SetSpec::Complement(e) | SetSpec::Scale(e, _) => e.dim(),
            SetSpec::Translate(e, _) | SetSpec::Rotate(e, _) => e.dim(),
            SetSpec::Union(parts) | SetSpec::Intersection(parts) => {
                parts.first().map_or(0, |e| e.dim())
            }
        }
    }

    /// Signed pseudo-distance: positive inside, negative outside, magnitude
    /// bounded below by (a constant times) the distance to the nearest
    /// primitive boundary.
    pub fn margin(&self, x: &[f64]) -> f64 {
        match self {
            SetSpec::Empty { .. } => f64::NEG_INFINITY,
            SetSpec::Full { .. } => f64::INFINITY,
            SetSpec::HalfSpace { normal, offset } => dot(normal, x) - offset,
            SetSpec::Ball { center, radius } => radius - dist(center, x),
            SetSpec::SphericalCone { apex, cap } => {
                let v = sub(x, apex);
                let r = norm(&v);
                if r < 1e-300 {
                    return 0.0;
                }
                let dir: Vec<f64> = v.iter().map(|t| t / r).collect();
                r * cap.angular_margin(&dir)
            }
            SetSpec::Supergraph { graph, axis, .. } => {
                let (base, height) = split_axis(x, *axis);
                height - graph.eval(&base)
            }
            SetSpec::Raster(r) => r.margin(x),
            SetSpec::Complement(e) => -e.margin(x),
            SetSpec::Union(parts) => parts
                .iter()
                .map(|e| e.margin(x))
                .fold(f64::NEG_INFINITY, f64::max),
            SetSpec::Intersection(parts) => parts
                .iter()
                .map(|e| e.margin(x))
                .fold(f64::INFINITY, f64::min),
            SetSpec::Translate(e, v) => e.margin(&sub(x, v)),
            SetSpec::Rotate(e, m) => e.margin(&mat_t_vec(m, x)),
            SetSpec::Scale(e, l) => {
                let y: Vec<f64> = x.iter().map(|t| t / l).collect();
                l * e.margin(&y)
            }
        }
    }

    /// Tristate membership query.
    pub fn contains(&self, x: &[f64]) -> Result<Membership> {
        let d = self.dim();
        if d != 0 && d != x.len() {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: x.len(),
            });
        }
        if x.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidParameter("non-finite query point".into()));
        }
        Ok(self.membership(x))
    }

    /// Membership without the dimension check; used on hot paths where the
    /// caller guarantees consistent dimensions.
    pub fn membership(&self, x: &[f64]) -> Membership {
        let m = self.margin(x);
        if m.abs() <= eps_geo(x) {
            Membership::Boundary
        } else if m > 0.0 {
            Membership::Inside
        } else {
            Membership::Outside
        }
    }

    /// Strict indicator used by quadrature: boundary-uncertain points count
    /// as inside (they form a null set and never coincide with nodes).
    pub fn indicator(&self, x: &[f64]) -> bool {
        self.margin(x) >= 0.0
    }

    /// A radius R such that E is contained in B_R(0), when the structure
    /// guarantees one.
    pub fn bounding_radius(&self) -> Option<f64> {
        match self {
            SetSpec::Empty { .. } => Some(0.0),
            SetSpec::Ball { center, radius } => Some(norm(center) + radius),
            SetSpec::Raster(r) => Some(r.bounding_radius()),
            SetSpec::Union(parts) => {
                let mut acc: f64 = 0.0;
                for p in parts {
                    acc = acc.max(p.bounding_radius()?);
                }
                Some(acc)
            }
            SetSpec::Intersection(parts) => {
                parts.iter().filter_map(|p| p.bounding_radius()).fold(
                    None,
                    |best: Option<f64>, r| Some(best.map_or(r, |b| b.min(r))),
                )
            }
            SetSpec::Complement(_) | SetSpec::Full { .. } => None,
            SetSpec::HalfSpace { .. }
            | SetSpec::SphericalCone { .. }
            | SetSpec::Supergraph { .. } => None,
            SetSpec::Translate(e, v) => Some(e.bounding_radius()? + norm(v)),
            SetSpec::Rotate(e, _) => e.bounding_radius(),
            SetSpec::Scale(e, l) => Some(e.bounding_radius()? * l),
        }
    }

}

/// Split a point into (coordinates without `axis`, coordinate at `axis`).
pub fn split_axis(x: &[f64], axis: usize) -> (Vec<f64>, f64) {
    let mut base = Vec::with_capacity(x.len() - 1);
    for (i, &v) in x.iter().enumerate() {
        if i != axis {
            base.push(v);
        }
    }
    (base, x[axis])
}

/// Inverse of [`split_axis`].
pub fn join_axis(base: &[f64], axis: usize, height: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(base.len() + 1);
    out.extend_from_slice(&base[..axis]);
    out.push(height);
    out.extend_from_slice(&base[axis..]);
    out
}

/// Planar rotation matrix by `theta` (n = 2, row-major).
pub fn rotation_2d(theta: f64) -> Vec<Vec<f64>> {
    let (s, c) = theta.sin_cos();
    vec![vec![c, -s], vec![s, c]]
}

pub use json::{set_from_json, set_from_json_str, set_to_json, set_to_json_string};
