//! Seeded Monte-Carlo oracle for the truncated curvature integral.
//!
//! Samples the annulus B_R(q) \ B_rho(q) with the radial importance
//! density proportional to t^{-1-s} and antipodal direction pairs; kept
//! independent of the deterministic ray/panel path so the two can
//! cross-check each other.

use crate::geom::SetSpec;
use crate::util::SeededRng;

/// Estimate int_{B_R(q) \ B_rho(q)} (chi_CE - chi_E)(y) |y-q|^{-n-s} dy.
/// Returns (estimate, standard error).
pub fn mc_truncated_curvature(
    e: &SetSpec,
    q: &[f64],
    s: f64,
    rho: f64,
    big_r: f64,
    seed: u64,
    samples: usize,
) -> (f64, f64) {
    let n = q.len();
    let omega_n = crate::thresholds::omega(n);
    let mass = omega_n * (rho.powf(-s) - big_r.powf(-s)) / s;
    let mut rng = SeededRng::new(seed);
    let mut sum = 0.0;
    let mut sum2 = 0.0;
    let rho_pow = rho.powf(-s);
    let r_pow = big_r.powf(-s);
    for _ in 0..samples {
        let u = rng.uniform();
        // Inverse CDF of the radial density on [rho, R].
        let t = (rho_pow - u * (rho_pow - r_pow)).powf(-1.0 / s);
        let dir = rng.direction(n);
        let plus: Vec<f64> = q.iter().zip(&dir).map(|(a, b)| a + t * b).collect();
        let minus: Vec<f64> = q.iter().zip(&dir).map(|(a, b)| a - t * b).collect();
        let sgn = |x: &[f64]| if e.indicator(x) { -1.0 } else { 1.0 };
        let v = 0.5 * (sgn(&plus) + sgn(&minus));
        sum += v;
        sum2 += v * v;
    }
    let mean = sum / samples as f64;
    let var = (sum2 / samples as f64 - mean * mean).max(0.0);
    let std_err = mass * (var / samples as f64).sqrt();
    (mass * mean, std_err)
}

/// Estimate int_{CB_r(q)} chi_E(y) |y-q|^{-n-s} dy restricted to the
/// annulus [r, R] (the caller accounts for the tail beyond R).
pub fn mc_alpha_weight(
    e: &SetSpec,
    q: &[f64],
    s: f64,
    r: f64,
    big_r: f64,
    seed: u64,
    samples: usize,
) -> (f64, f64) {
    let n = q.len();
    let omega_n = crate::thresholds::omega(n);
    let mass = omega_n * (r.powf(-s) - big_r.powf(-s)) / s;
    let mut rng = SeededRng::new(seed);
    let mut sum = 0.0;
    let mut sum2 = 0.0;
    let r_pow = r.powf(-s);
    let big_pow = big_r.powf(-s);
    for _ in 0..samples {
        let u = rng.uniform();
        let t = (r_pow - u * (r_pow - big_pow)).powf(-1.0 / s);
        let dir = rng.direction(n);
        let y: Vec<f64> = q.iter().zip(&dir).map(|(a, b)| a + t * b).collect();
        let v = if e.indicator(&y) { 1.0 } else { 0.0 };
        sum += v;
        sum2 += v * v;
    }
    let mean = sum / samples as f64;
    let var = (sum2 / samples as f64 - mean * mean).max(0.0);
    (mass * mean, mass * (var / samples as f64).sqrt())
}
