//! Membership crossings of a set along a ray.
//!
//! Crossings are bracketed on a linear-then-geometric sample grid and
//! refined by bisection; afterwards every radial integral with weight
//! t^{-1-s} is a telescoping closed form over the crossing list.

use super::QuadratureConfig;
use crate::geom::SetSpec;
use crate::util::ray_point;

/// Membership structure of { t >= t_lo : q + t dir in E }.
#[derive(Debug, Clone)]
pub struct RayTrace {
    pub t_lo: f64,
    /// Increasing crossing parameters.
    pub crossings: Vec<f64>,
    /// Membership immediately after t_lo.
    pub start_inside: bool,
    /// Far samples disagreed; the asymptotic state is uncertain.
    pub truncation_risk: bool,
}

pub fn trace(e: &SetSpec, q: &[f64], dir: &[f64], t_lo: f64, cfg: &QuadratureConfig) -> RayTrace {
    let state = |t: f64| -> bool { e.indicator(&ray_point(q, dir, t)) };

    let mut crossings = Vec::new();
    let start_inside = state(t_lo);
    let mut prev_t = t_lo;
    let mut prev_state = start_inside;

    // Linear prefix resolves features of size `feature_scale`.
    let lin_end = t_lo + cfg.lin_span;
    let steps = (cfg.lin_span / cfg.feature_scale).ceil() as usize;
    for i in 1..=steps {
        let t = t_lo + cfg.lin_span * i as f64 / steps as f64;
        let s_now = state(t);
        if s_now != prev_state {
            crossings.push(bisect(&state, prev_t, t, prev_state));
        }
        prev_state = s_now;
        prev_t = t;
    }

    // Geometric continuation out to the truncation radius and a bit beyond.
    let mut t = lin_end;
    let far_probe = cfg.t_far * 8.0;
    while t < far_probe {
        t *= cfg.geo_ratio;
        let s_now = state(t);
        if s_now != prev_state {
            crossings.push(bisect(&state, prev_t, t, prev_state));
        }
        prev_state = s_now;
        prev_t = t;
    }

    // Far consistency probe.
    let tail_state = prev_state;
    let mut truncation_risk = false;
    for &mult in &[2.0, 4.0, 8.0] {
        if state(far_probe * mult) != tail_state {
            truncation_risk = true;
            break;
        }
    }

    RayTrace {
        t_lo,
        crossings,
        start_inside,
        truncation_risk,
    }
}

fn bisect<F: Fn(f64) -> bool>(state: &F, mut lo: f64, mut hi: f64, lo_state: bool) -> f64 {
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-14 * (1.0 + mid) {
            break;
        }
        if state(mid) == lo_state {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

impl RayTrace {
    /// Membership on the interval starting at `t` (t must not sit below
    /// t_lo).
    fn state_after(&self, t: f64) -> bool {
        let flips = self.crossings.iter().filter(|&&c| c <= t).count();
        self.start_inside ^ (flips % 2 == 1)
    }

    /// Exact radial integral int_{t0}^inf chi_E(q + t dir) t^{-1-s} dt
    /// given the crossing structure; t0 >= t_lo.
    pub fn chi_integral(&self, t0: f64, s: f64) -> f64 {
        let mut acc = 0.0;
        let mut seg_start = t0;
        let mut inside = self.state_after(t0);
        for &c in self.crossings.iter().filter(|&&c| c > t0) {
            if inside {
                acc += (seg_start.powf(-s) - c.powf(-s)) / s;
            }
            seg_start = c;
            inside = !inside;
        }
        if inside {
            acc += seg_start.powf(-s) / s;
        }
        acc
    }

    /// Exact radial integral over a finite window [t0, t1].
    pub fn chi_integral_window(&self, t0: f64, t1: f64, s: f64) -> f64 {
        let mut acc = 0.0;
        let mut seg_start = t0;
        let mut inside = self.state_after(t0);
        for &c in self.crossings.iter().filter(|&&c| c > t0 && c < t1) {
            if inside {
                acc += (seg_start.powf(-s) - c.powf(-s)) / s;
            }
            seg_start = c;
            inside = !inside;
        }
        if inside {
            acc += (seg_start.powf(-s) - t1.powf(-s)) / s;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{canonical_set, Family};

    #[test]
    fn ball_crossing_from_boundary_point() {
        let e = SetSpec::Ball {
            center: vec![0.0, 0.0],
            radius: 1.0,
        };
        let cfg = QuadratureConfig::default();
        // Inward ray from (1,0): chord length 2cos(theta) for the
        // direction (-1, 0) is 2.
        let t = trace(&e, &[1.0, 0.0], &[-1.0, 0.0], 1e-6, &cfg);
        assert!(t.start_inside);
        assert_eq!(t.crossings.len(), 1);
        assert!((t.crossings[0] - 2.0).abs() < 1e-9);
        // Outward ray: never inside.
        let t = trace(&e, &[1.0, 0.0], &[1.0, 0.0], 1e-6, &cfg);
        assert!(!t.start_inside);
        assert!(t.crossings.is_empty());
    }

    #[test]
    fn gamma_annuli_are_resolved() {
        let e = canonical_set(&Family::GammaKEps {
            dim: 2,
            k: 2,
            eps: 0.05,
        })
        .unwrap();
        let cfg = QuadratureConfig::default();
        let t = trace(&e, &[0.0, 0.0], &[1.0, 0.0], 0.012, &cfg);
        // Annuli around 1/4, 1/2, 3/4 of width 0.1 each: 6 crossings
        // beyond the central ball (plus the exit of B_eps at 0.05).
        assert_eq!(t.crossings.len(), 7, "{:?}", t.crossings);
        assert!((t.crossings[0] - 0.05).abs() < 1e-9);
        assert!((t.crossings[1] - 0.2).abs() < 1e-9);
        assert!((t.crossings[2] - 0.3).abs() < 1e-9);
    }

    #[test]
    fn radial_closed_form_matches_brute_force() {
        let e = canonical_set(&Family::GammaKEps {
            dim: 2,
            k: 2,
            eps: 0.05,
        })
        .unwrap();
        let cfg = QuadratureConfig::default();
        let s = 0.35;
        let tr = trace(&e, &[0.0, 0.0], &[1.0, 0.0], 0.012, &cfg);
        let exact = tr.chi_integral_window(0.012, 2.0, s);
        // Brute-force Riemann oracle.
        let mut acc = 0.0;
        let steps = 400_000;
        for i in 0..steps {
            let t = 0.012 + (2.0 - 0.012) * (i as f64 + 0.5) / steps as f64;
            if e.indicator(&[t, 0.0]) {
                acc += t.powf(-1.0 - s) * (2.0 - 0.012) / steps as f64;
            }
        }
        assert!((exact - acc).abs() < 2e-4 * acc.abs() + 1e-6);
    }
}
