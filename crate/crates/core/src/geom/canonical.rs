//! Canonical example sets: cones, supergraph families, the annular
//! "topologically dense" generator, bands and annuli.

use std::sync::Arc;

use super::{GraphFunction, SetSpec, SphereCap};
use crate::{Error, Result};

/// Named set families with their parameters.
#[derive(Debug, Clone)]
pub enum Family {
    /// First quadrant/orthant cone, apex at the origin.
    Quadrant { dim: usize },
    /// Half-space { x_n >= 0 }.
    HalfSpace { dim: usize },
    /// Cone of opening `o` (arc length of the cap on S^1), apex at origin,
    /// bisected by the positive x-axis.  n = 2 only.
    Cone { opening: f64 },
    /// B_eps union thin annuli around radii i/2^k; delta-dense generator.
    GammaKEps { dim: usize, k: u32, eps: f64 },
    /// Supergraph of x^3 in R^2.
    CubicSupergraph,
    /// Supergraph of |x'|^2.
    Parabola { dim: usize },
    /// Supergraph of tanh x_1.
    TanhGraph { dim: usize },
    /// Sublinear band { |x_n| < c (1 + |x'|)^p }, p in (0, 1).
    Candy { dim: usize, c: f64, p: f64 },
    /// B_outer minus closed B_inner.
    Annulus { dim: usize, inner: f64, outer: f64 },
    Ball { dim: usize, radius: f64 },
    /// Supergraph of k|x'| on the cone generated by angle intervals around
    /// pi/2 of half-width eps_bar (zero off the cone); n = 3.
    LinearConeGraph { eps_bar: f64, k: f64 },
}

/// Build a canonical paper-example set.
pub fn canonical_set(family: &Family) -> Result<SetSpec> {
    match family {
        Family::Quadrant { dim } => {
            if *dim == 2 {
                // Cap [0, pi/2] on S^1: opening pi/2.
                Ok(SetSpec::SphericalCone {
                    apex: vec![0.0; 2],
                    cap: SphereCap::AngleIntervals {
                        dim: 2,
                        intervals: vec![(0.0, std::f64::consts::FRAC_PI_2)],
                    },
                })
            } else {
                let parts = (0..*dim)
                    .map(|i| {
                        let mut normal = vec![0.0; *dim];
                        normal[i] = 1.0;
                        SetSpec::HalfSpace { normal, offset: 0.0 }
                    })
                    .collect();
                Ok(SetSpec::Intersection(parts))
            }
        }
        Family::HalfSpace { dim } => {
            let mut normal = vec![0.0; *dim];
            normal[*dim - 1] = 1.0;
            Ok(SetSpec::HalfSpace { normal, offset: 0.0 })
        }
        Family::Cone { opening } => {
            if !(*opening > 0.0 && *opening < 2.0 * std::f64::consts::PI) {
                return Err(Error::InvalidParameter(format!(
                    "cone opening {opening} outside (0, 2 pi)"
                )));
            }
            Ok(SetSpec::SphericalCone {
                apex: vec![0.0; 2],
                cap: SphereCap::HalfAngle {
                    axis: vec![1.0, 0.0],
                    angle: 0.5 * opening,
                },
            })
        }
        Family::GammaKEps { dim, k, eps } => {
            if *k < 1 {
                return Err(Error::InvalidParameter("gamma_k_eps needs k >= 1".into()));
            }
            let bound = 2f64.powi(-(*k as i32) - 1);
            if !(*eps > 0.0 && *eps < bound) {
                return Err(Error::InvalidParameter(format!(
                    "gamma_k_eps needs 0 < eps < 2^-(k+1) = {bound}"
                )));
            }
            let mut parts = vec![SetSpec::Ball {
                center: vec![0.0; *dim],
                radius: *eps,
            }];
            for i in 1..(1u64 << k) {
                let r = i as f64 / (1u64 << k) as f64;
                parts.push(SetSpec::Intersection(vec![
                    SetSpec::Ball {
                        center: vec![0.0; *dim],
                        radius: r + eps,
                    },
                    SetSpec::Ball {
                        center: vec![0.0; *dim],
                        radius: r - eps,
                    }
                    .complement(),
                ]));
            }
            Ok(SetSpec::Union(parts))
        }
        Family::CubicSupergraph => Ok(SetSpec::Supergraph {
            graph: Arc::new(GraphFunction::cubic()),
            axis: 1,
            dim: 2,
        }),
        Family::Parabola { dim } => Ok(SetSpec::Supergraph {
            graph: Arc::new(GraphFunction::parabola()),
            axis: *dim - 1,
            dim: *dim,
        }),
        Family::TanhGraph { dim } => Ok(SetSpec::Supergraph {
            graph: Arc::new(GraphFunction::tanh_graph()),
            axis: *dim - 1,
            dim: *dim,
        }),
        Family::Candy { dim, c, p } => {
            if !(*p > 0.0 && *p < 1.0) || *c <= 0.0 {
                return Err(Error::InvalidParameter(
                    "candy band needs c > 0 and p in (0,1)".into(),
                ));
            }
            let (c, p) = (*c, *p);
            let lower = GraphFunction {
                kind: super::GraphKind::Custom {
                    eval: Arc::new(move |x: &[f64]| {
                        -c * (1.0 + crate::util::norm(x)).powf(p)
                    }),
                    grad: Arc::new(move |x: &[f64]| {
                        let r = crate::util::norm(x);
                        let scale = if r < 1e-12 {
                            0.0
                        } else {
                            -c * p * (1.0 + r).powf(p - 1.0) / r
                        };
                        x.iter().map(|t| t * scale).collect()
                    }),
                    name: "candy-lower".into(),
                },
                holder_exponent: 1.0,
                c1alpha_norm: 4.0 * c,
                norm_radius: 1.0,
                growth: super::GrowthTag::Sublinear,
            };
            let upper = GraphFunction {
                kind: super::GraphKind::Custom {
                    eval: Arc::new(move |x: &[f64]| c * (1.0 + crate::util::norm(x)).powf(p)),
                    grad: Arc::new(move |x: &[f64]| {
                        let r = crate::util::norm(x);
                        let scale = if r < 1e-12 {
                            0.0
                        } else {
                            c * p * (1.0 + r).powf(p - 1.0) / r
                        };
                        x.iter().map(|t| t * scale).collect()
                    }),
                    name: "candy-upper".into(),
                },
                holder_exponent: 1.0,
                c1alpha_norm: 4.0 * c,
                norm_radius: 1.0,
                growth: super::GrowthTag::Sublinear,
            };
            Ok(SetSpec::Intersection(vec![
                SetSpec::Supergraph {
                    graph: Arc::new(lower),
                    axis: *dim - 1,
                    dim: *dim,
                },
                SetSpec::Supergraph {
                    graph: Arc::new(upper),
                    axis: *dim - 1,
                    dim: *dim,
                }
                .complement(),
            ]))
        }
        Family::Annulus { dim, inner, outer } => {
            if !(0.0 < *inner && inner < outer) {
                return Err(Error::InvalidParameter(
                    "annulus needs 0 < inner < outer".into(),
                ));
            }
            Ok(SetSpec::Intersection(vec![
                SetSpec::Ball {
                    center: vec![0.0; *dim],
                    radius: *outer,
                },
                SetSpec::Ball {
                    center: vec![0.0; *dim],
                    radius: *inner,
                }
                .complement(),
            ]))
        }
        Family::Ball { dim, radius } => {
            if *radius <= 0.0 {
                return Err(Error::InvalidParameter("ball needs radius > 0".into()));
            }
            Ok(SetSpec::Ball {
                center: vec![0.0; *dim],
                radius: *radius,
            })
        }
        Family::LinearConeGraph { eps_bar, k } => {
            if !(*eps_bar > 0.0 && *eps_bar < std::f64::consts::FRAC_PI_2) || *k <= 0.0 {
                return Err(Error::InvalidParameter(
                    "linear cone graph needs eps_bar in (0, pi/2) and k > 0".into(),
                ));
            }
            let cap = SphereCap::AngleIntervals {
                dim: 2,
                intervals: vec![(
                    std::f64::consts::FRAC_PI_2 - eps_bar,
                    std::f64::consts::FRAC_PI_2 + eps_bar,
                )],
            };
            Ok(SetSpec::Supergraph {
                graph: Arc::new(GraphFunction::cone_slope(*k, cap, vec![0.0; 2])),
                axis: 2,
                dim: 3,
            })
        }
    }
}
