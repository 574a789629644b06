//! Graph functions u: R^{n-1} -> R backing supergraph sets, with gradient,
//! Holder metadata and an asymptotic growth tag used for closed-form
//! routing of the contribution from infinity.

use std::fmt;
use std::sync::Arc;

use super::SphereCap;
use crate::util::norm;

/// Asymptotic growth classification of a graph.
#[derive(Debug, Clone)]
pub enum GrowthTag {
    /// |u| < m everywhere.
    Bounded(f64),
    /// |u(x')| / |x'| -> 0.
    Sublinear,
    /// u = k |x' - foot| on the cone generated by `cap`, 0 elsewhere.
    LinearCone { k: f64, cap: SphereCap },
    /// u grows superlinearly in every direction (radially symmetric style).
    Superlinear,
    /// Odd superlinear profile (x^3 style): half the sphere at infinity.
    CubicLike,
    Custom,
}

type EvalFn = dyn Fn(&[f64]) -> f64 + Send + Sync;
type GradFn = dyn Fn(&[f64]) -> Vec<f64> + Send + Sync;

/// Evaluation backend for a graph function.
#[derive(Clone)]
pub enum GraphKind {
    Zero,
    /// u(x) = x^3, base dimension 1.
    Cubic,
    /// u(x') = |x'|^2.
    Parabola,
    /// u(x') = tanh(x'_1).
    Tanh,
    /// u(x') = k |x' - foot| on the cone generated by `cap` at `foot`,
    /// 0 off the cone.
    ConeSlope {
        k: f64,
        cap: SphereCap,
        foot: Vec<f64>,
    },
    /// Lower hemisphere graph u(x') = -sqrt(r^2 - |x'|^2) (clamped outside).
    BallLower { radius: f64 },
    Custom {
        eval: Arc<EvalFn>,
        grad: Arc<GradFn>,
        name: String,
    },
}

impl fmt::Debug for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphKind::Zero => write!(f, "Zero"),
            GraphKind::Cubic => write!(f, "Cubic"),
            GraphKind::Parabola => write!(f, "Parabola"),
            GraphKind::Tanh => write!(f, "Tanh"),
            GraphKind::ConeSlope { k, .. } => write!(f, "ConeSlope(k={k})"),
            GraphKind::BallLower { radius } => write!(f, "BallLower(r={radius})"),
            GraphKind::Custom { name, .. } => write!(f, "Custom({name})"),
        }
    }
}

/// A function u: R^{n-1} -> R with gradient and regularity metadata.
#[derive(Debug, Clone)]
pub struct GraphFunction {
    pub kind: GraphKind,
    /// Holder exponent of the gradient, in (0, 1].
    pub holder_exponent: f64,
    /// C^{1,alpha} norm bound, valid on the ball B_{norm_radius}(p').
    pub c1alpha_norm: f64,
    pub norm_radius: f64,
    pub growth: GrowthTag,
}

impl GraphFunction {
    pub fn new(kind: GraphKind, holder_exponent: f64, c1alpha_norm: f64, growth: GrowthTag) -> Self {
        GraphFunction {
            kind,
            holder_exponent,
            c1alpha_norm,
            norm_radius: 1.0,
            growth,
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match &self.kind {
            GraphKind::Zero => 0.0,
            GraphKind::Cubic => x[0] * x[0] * x[0],
            GraphKind::Parabola => x.iter().map(|t| t * t).sum(),
            GraphKind::Tanh => x[0].tanh(),
            GraphKind::ConeSlope { k, cap, foot } => {
                let v: Vec<f64> = x.iter().zip(foot).map(|(a, b)| a - b).collect();
                let r = norm(&v);
                if r < 1e-300 {
                    return 0.0;
                }
                let dir: Vec<f64> = v.iter().map(|t| t / r).collect();
                if cap.angular_margin(&dir) >= 0.0 {
                    k * r
                } else {
                    0.0
                }
            }
            GraphKind::BallLower { radius } => {
                let r2 = x.iter().map(|t| t * t).sum::<f64>();
                if r2 >= radius * radius {
                    0.0
                } else {
                    -(radius * radius - r2).sqrt()
                }
            }
            GraphKind::Custom { eval, .. } => eval(x),
        }
    }

    pub fn grad(&self, x: &[f64]) -> Vec<f64> {
        match &self.kind {
            GraphKind::Zero => vec![0.0; x.len()],
            GraphKind::Cubic => vec![3.0 * x[0] * x[0]],
            GraphKind::Parabola => x.iter().map(|t| 2.0 * t).collect(),
            GraphKind::Tanh => {
                let mut g = vec![0.0; x.len()];
                let c = x[0].cosh();
                g[0] = 1.0 / (c * c);
                g
            }
            GraphKind::ConeSlope { .. } | GraphKind::BallLower { .. } => {
                self.fd_grad(x)
            }
            GraphKind::Custom { grad, .. } => grad(x),
        }
    }

    fn fd_grad(&self, x: &[f64]) -> Vec<f64> {
        let h = 1e-6 * (1.0 + norm(x));
        (0..x.len())
            .map(|i| {
                let mut xp = x.to_vec();
                let mut xm = x.to_vec();
                xp[i] += h;
                xm[i] -= h;
                (self.eval(&xp) - self.eval(&xm)) / (2.0 * h)
            })
            .collect()
    }

    pub fn zero(base_dim: usize) -> Self {
        let _ = base_dim;
        GraphFunction::new(GraphKind::Zero, 1.0, 0.0, GrowthTag::Bounded(0.0))
    }

    pub fn cubic() -> Self {
        // On B'_1(0): |grad| semi-norm of 3x^2 is 6 -> c1alpha bound 6 + sup-terms.
        GraphFunction {
            kind: GraphKind::Cubic,
            holder_exponent: 1.0,
            c1alpha_norm: 10.0,
            norm_radius: 1.0,
            growth: GrowthTag::CubicLike,
        }
    }

    pub fn parabola() -> Self {
        GraphFunction {
            kind: GraphKind::Parabola,
            holder_exponent: 1.0,
            c1alpha_norm: 6.0,
            norm_radius: 1.0,
            growth: GrowthTag::Superlinear,
        }
    }

    pub fn tanh_graph() -> Self {
        GraphFunction {
            kind: GraphKind::Tanh,
            holder_exponent: 1.0,
            c1alpha_norm: 3.0,
            norm_radius: 1.0,
            growth: GrowthTag::Bounded(1.0),
        }
    }

    pub fn cone_slope(k: f64, cap: SphereCap, foot: Vec<f64>) -> Self {
        let growth = GrowthTag::LinearCone {
            k,
            cap: cap.clone(),
        };
        GraphFunction {
            kind: GraphKind::ConeSlope { k, cap, foot },
            // Lipschitz but not C^1 across the cone edge.
            holder_exponent: 1.0,
            c1alpha_norm: f64::NAN,
            norm_radius: 0.0,
            growth,
        }
    }

    pub fn ball_lower(radius: f64) -> Self {
        GraphFunction {
            kind: GraphKind::BallLower { radius },
            holder_exponent: 1.0,
            // Valid well inside the equator; callers keep cylinders small.
            c1alpha_norm: 4.0 / radius,
            norm_radius: 0.5 * radius,
            growth: GrowthTag::Bounded(radius),
        }
    }
}
