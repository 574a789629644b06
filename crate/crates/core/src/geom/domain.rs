//! Bounded domains with exact signed distance and erosion/dilation.

use crate::util::dist;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub enum DomainShape {
    Ball { center: Vec<f64>, radius: f64 },
    Box { lo: Vec<f64>, hi: Vec<f64> },
}

/// A bounded domain Omega (ball or axis-aligned box) with the uniform
/// interior/exterior ball radius r0 used by the erosion bounds.
#[derive(Debug, Clone)]
pub struct Domain {
    pub shape: DomainShape,
    pub r0: f64,
}

impl Domain {
    pub fn ball(center: Vec<f64>, radius: f64) -> Self {
        Domain {
            shape: DomainShape::Ball { center, radius },
            r0: radius,
        }
    }

    pub fn cube(half: f64, dim: usize) -> Self {
        Domain {
            shape: DomainShape::Box {
                lo: vec![-half; dim],
                hi: vec![half; dim],
            },
            r0: half,
        }
    }

    pub fn dim(&self) -> usize {
        match &self.shape {
            DomainShape::Ball { center, .. } => center.len(),
            DomainShape::Box { lo, .. } => lo.len(),
        }
    }

    pub fn inradius(&self) -> f64 {
        match &self.shape {
            DomainShape::Ball { radius, .. } => *radius,
            DomainShape::Box { lo, hi } => lo
                .iter()
                .zip(hi)
                .map(|(a, b)| 0.5 * (b - a))
                .fold(f64::INFINITY, f64::min),
        }
    }

    pub fn volume(&self) -> f64 {
        match &self.shape {
            DomainShape::Ball { center, radius } => {
                let n = center.len();
                crate::thresholds::omega(n) / n as f64 * radius.powi(n as i32)
            }
            DomainShape::Box { lo, hi } => lo.iter().zip(hi).map(|(a, b)| b - a).product(),
        }
    }

    /// Signed distance to the boundary, negative inside.  Exact closed form
    /// for balls and boxes.
    pub fn signed_distance(&self, x: &[f64]) -> f64 {
        match &self.shape {
            DomainShape::Ball { center, radius } => dist(center, x) - radius,
            DomainShape::Box { lo, hi } => {
                // q_i = distance outside along axis i (negative when inside).
                let q: Vec<f64> = x
                    .iter()
                    .enumerate()
                    .map(|(i, &xi)| {
                        let c = 0.5 * (lo[i] + hi[i]);
                        let half = 0.5 * (hi[i] - lo[i]);
                        (xi - c).abs() - half
                    })
                    .collect();
                let outside: f64 = q
                    .iter()
                    .map(|&v| v.max(0.0).powi(2))
                    .sum::<f64>()
                    .sqrt();
                let inside = q.iter().cloned().fold(f64::NEG_INFINITY, f64::max).min(0.0);
                outside + inside
            }
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.signed_distance(x) < 0.0
    }

    /// Axis-aligned bounding box (lo, hi).
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        match &self.shape {
            DomainShape::Ball { center, radius } => (
                center.iter().map(|c| c - radius).collect(),
                center.iter().map(|c| c + radius).collect(),
            ),
            DomainShape::Box { lo, hi } => (lo.clone(), hi.clone()),
        }
    }

    /// The sublevel set Omega_delta = { signed_distance < delta }.
    ///
    /// Valid for |delta| < 2 r0.  For balls this is exact; for boxes with
    /// delta > 0 the dilated corners are clipped to the enclosing box.
    pub fn eroded(&self, delta: f64) -> Result<Domain> {
        if delta.abs() >= 2.0 * self.r0 {
            return Err(Error::ThresholdExceeded(format!(
                "|delta| = {} exceeds the validity band 2 r0 = {}",
                delta.abs(),
                2.0 * self.r0
            )));
        }
        let shape = match &self.shape {
            DomainShape::Ball { center, radius } => DomainShape::Ball {
                center: center.clone(),
                radius: radius + delta,
            },
            DomainShape::Box { lo, hi } => DomainShape::Box {
                lo: lo.iter().map(|a| a - delta).collect(),
                hi: hi.iter().map(|a| a + delta).collect(),
            },
        };
        let mut domain = Domain { shape, r0: 0.0 };
        // Convex shapes keep arbitrary exterior tangent balls; the interior
        // radius tracks the inradius of the level set.
        domain.r0 = domain.inradius();
        Ok(domain)
    }
}
