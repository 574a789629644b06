//! Adaptive quadrature over antipodal direction pairs.
//!
//! The integrand is a pair sum f(sigma) + f(-sigma) supplied by the caller;
//! integration runs over a parameterization of half the sphere so each pair
//! is counted once:
//!
//! * n = 1: the single pair {+1, -1} with counting measure,
//! * n = 2: theta in [0, pi), sigma = (cos theta, sin theta),
//! * n = 3: (theta, u) in [0, 2 pi) x [0, 1], sigma = (sqrt(1-u^2) cos
//!   theta, sqrt(1-u^2) sin theta, u); the area element is du dtheta.
//!
//! Refinement is global: a priority queue always splits the panel with the
//! worst refinement residual, until the residual total fits the relative
//! budget or the panel budget is exhausted.  The leftover residual is
//! reported as the error estimate, so starved refinements surface in the
//! error bars instead of silently degrading values.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::QuadratureConfig;
use crate::util::gauss_legendre;

type PairFn<'a> = &'a (dyn Fn(&[f64]) -> Vec<f64> + Sync);

/// Integrate a pair function over all direction pairs of S^{n-1}.
/// Returns the component-wise integrals and an error estimate.
pub fn integrate_pairs(
    n: usize,
    out_len: usize,
    pair_fn: PairFn,
    cfg: &QuadratureConfig,
) -> (Vec<f64>, f64) {
    match n {
        1 => (pair_fn(&[1.0]), 0.0),
        2 => adaptive(out_len, pair_fn, cfg, false),
        3 => adaptive(out_len, pair_fn, cfg, true),
        _ => panic!("sampled quadrature supports n in {{1, 2, 3}}, got {n}"),
    }
}

#[derive(Debug, Clone, Copy)]
struct Rect {
    t0: f64,
    t1: f64,
    u0: f64,
    u1: f64,
}

struct Panel {
    rect: Rect,
    value: Vec<f64>,
    residual: f64,
    /// Insertion counter; breaks residual ties deterministically.
    order: usize,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.residual == other.residual && self.order == other.order
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.residual
            .partial_cmp(&other.residual)
            .unwrap_or(Ordering::Equal)
            .then(other.order.cmp(&self.order))
    }
}

fn eval_panel(out_len: usize, pair_fn: PairFn, rect: &Rect, order: usize, sphere: bool) -> Vec<f64> {
    let (nodes, weights) = gauss_legendre(order);
    let tc = 0.5 * (rect.t0 + rect.t1);
    let tw = 0.5 * (rect.t1 - rect.t0);
    let mut acc = vec![0.0; out_len];
    if !sphere {
        for (x, w) in nodes.iter().zip(weights) {
            let theta = tc + tw * x;
            let dir = [theta.cos(), theta.sin()];
            let v = pair_fn(&dir);
            for (a, b) in acc.iter_mut().zip(&v) {
                *a += w * tw * b;
            }
        }
    } else {
        let uc = 0.5 * (rect.u0 + rect.u1);
        let uw = 0.5 * (rect.u1 - rect.u0);
        for (xt, wt) in nodes.iter().zip(weights) {
            let theta = tc + tw * xt;
            for (xu, wu) in nodes.iter().zip(weights) {
                let u = uc + uw * xu;
                let r = (1.0 - u * u).max(0.0).sqrt();
                let dir = [r * theta.cos(), r * theta.sin(), u];
                let v = pair_fn(&dir);
                let w = wt * tw * wu * uw;
                for (a, b) in acc.iter_mut().zip(&v) {
                    *a += w * b;
                }
            }
        }
    }
    acc
}

fn split_rect(rect: &Rect, sphere: bool) -> Vec<Rect> {
    if !sphere {
        let tm = 0.5 * (rect.t0 + rect.t1);
        vec![
            Rect { t1: tm, ..*rect },
            Rect { t0: tm, ..*rect },
        ]
    } else {
        // Always split both axes: one-sided splits are blind to
        // discontinuity curves aligned with the kept axis.
        let tm = 0.5 * (rect.t0 + rect.t1);
        let um = 0.5 * (rect.u0 + rect.u1);
        vec![
            Rect { t1: tm, u1: um, ..*rect },
            Rect { t0: tm, u1: um, ..*rect },
            Rect { t1: tm, u0: um, ..*rect },
            Rect { t0: tm, u0: um, ..*rect },
        ]
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Anisotropic sphere-panel split: probe both axis bisections and keep
/// the one whose halves differ more (the discontinuity runs across that
/// axis).  Axis-aligned singular curves then cost a chain of panels
/// instead of an exponential front.
fn split_sphere(
    out_len: usize,
    pair_fn: PairFn,
    rect: &Rect,
    order: usize,
) -> (Vec<Rect>, Vec<Vec<f64>>) {
    let tm = 0.5 * (rect.t0 + rect.t1);
    let um = 0.5 * (rect.u0 + rect.u1);
    let t_kids = [Rect { t1: tm, ..*rect }, Rect { t0: tm, ..*rect }];
    let u_kids = [Rect { u1: um, ..*rect }, Rect { u0: um, ..*rect }];
    let t_vals: Vec<Vec<f64>> = t_kids
        .iter()
        .map(|r| eval_panel(out_len, pair_fn, r, order, true))
        .collect();
    let u_vals: Vec<Vec<f64>> = u_kids
        .iter()
        .map(|r| eval_panel(out_len, pair_fn, r, order, true))
        .collect();
    let d_t = max_abs_diff(&t_vals[0], &t_vals[1]);
    let d_u = max_abs_diff(&u_vals[0], &u_vals[1]);
    // Bias against degenerate aspect ratios.
    let tspan = rect.t1 - rect.t0;
    let uspan = rect.u1 - rect.u0;
    if d_t > 3.0 * d_u || (d_u == 0.0 && d_t == 0.0 && tspan > 3.0 * uspan) {
        (t_kids.to_vec(), t_vals)
    } else if d_u > 3.0 * d_t || (d_u == 0.0 && d_t == 0.0 && uspan > 3.0 * tspan) {
        (u_kids.to_vec(), u_vals)
    } else {
        let quads = split_rect(rect, true);
        let vals: Vec<Vec<f64>> = quads
            .iter()
            .map(|r| eval_panel(out_len, pair_fn, r, order, true))
            .collect();
        (quads, vals)
    }
}

fn adaptive(out_len: usize, pair_fn: PairFn, cfg: &QuadratureConfig, sphere: bool) -> (Vec<f64>, f64) {
    let order = if sphere {
        (cfg.angular_order / 2).max(3)
    } else {
        cfg.angular_order.max(4)
    };
    let initial: Vec<Rect> = if !sphere {
        (0..8)
            .map(|i| Rect {
                t0: std::f64::consts::PI * i as f64 / 8.0,
                t1: std::f64::consts::PI * (i + 1) as f64 / 8.0,
                u0: 0.0,
                u1: 0.0,
            })
            .collect()
    } else {
        let mut v = Vec::new();
        for i in 0..6 {
            for j in 0..3 {
                v.push(Rect {
                    t0: 2.0 * std::f64::consts::PI * i as f64 / 6.0,
                    t1: 2.0 * std::f64::consts::PI * (i + 1) as f64 / 6.0,
                    u0: j as f64 / 3.0,
                    u1: (j + 1) as f64 / 3.0,
                });
            }
        }
        v
    };

    let max_panels = if sphere {
        2 * cfg.max_panels
    } else {
        cfg.max_panels
    };
    let mut order_counter = 0usize;
    let mut heap: BinaryHeap<Panel> = BinaryHeap::new();
    let mut coarse = vec![0.0; out_len];

    // Seed the queue; initial panels carry an infinite residual so each is
    // split at least once.
    let mut infinite_count = 0usize;
    for rect in initial {
        let value = eval_panel(out_len, pair_fn, &rect, order, sphere);
        for (c, v) in coarse.iter_mut().zip(&value) {
            *c += v;
        }
        heap.push(Panel {
            rect,
            value,
            residual: f64::INFINITY,
            order: order_counter,
        });
        order_counter += 1;
        infinite_count += 1;
    }
    let scale = coarse.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let budget = cfg.rel_tol * (scale + 1.0);

    let mut finite_residual = 0.0f64;
    let mut panels_evaluated = heap.len();
    while infinite_count > 0 || finite_residual > budget {
        if panels_evaluated >= max_panels {
            break;
        }
        let Some(panel) = heap.pop() else { break };
        if panel.residual.is_finite() {
            finite_residual -= panel.residual;
        } else {
            infinite_count -= 1;
        }
        let (children, child_values) = if sphere {
            split_sphere(out_len, pair_fn, &panel.rect, order)
        } else {
            let kids = split_rect(&panel.rect, sphere);
            let vals: Vec<Vec<f64>> = kids
                .iter()
                .map(|r| eval_panel(out_len, pair_fn, r, order, sphere))
                .collect();
            (kids, vals)
        };
        panels_evaluated += children.len();
        let mut sum = vec![0.0; out_len];
        for cv in &child_values {
            for (a, b) in sum.iter_mut().zip(cv) {
                *a += b;
            }
        }
        let resid = max_abs_diff(&sum, &panel.value);
        let share = resid / children.len() as f64;
        for (rect, value) in children.into_iter().zip(child_values) {
            heap.push(Panel {
                rect,
                value,
                residual: share,
                order: order_counter,
            });
            order_counter += 1;
            finite_residual += share;
        }
    }

    let mut result = vec![0.0; out_len];
    let mut err = 0.0;
    for p in heap.iter() {
        for (a, b) in result.iter_mut().zip(&p.value) {
            *a += b;
        }
        if p.residual.is_finite() {
            err += p.residual;
        }
    }
    (result, err)
}
