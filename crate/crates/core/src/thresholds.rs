//! Closed-form constants of the small-s regime (omega_n, beta, delta_s),
//! the uniform positive-curvature check and the sign-change root finder.

use crate::curvature;
use crate::geom::{Membership, SetSpec};
use crate::quad::QuadratureConfig;
use crate::util::SeededRng;
use crate::{Error, Result};

/// Surface measure of the unit sphere S^{n-1}: 2 pi^{n/2} / Gamma(n/2),
/// with the convention omega_0 = 0.
pub fn omega(n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    2.0 * std::f64::consts::PI.powf(n as f64 / 2.0) / gamma_half(n)
}

/// Gamma(n/2) for integer n >= 1, exact by recursion from Gamma(1/2) and
/// Gamma(1).
fn gamma_half(n: usize) -> f64 {
    let mut value = if n % 2 == 0 { 1.0 } else { std::f64::consts::PI.sqrt() };
    let mut k = if n % 2 == 0 { 2 } else { 1 };
    while k < n {
        value *= k as f64 / 2.0;
        k += 2;
    }
    value
}

/// The constants attached to an exterior datum with contribution
/// `alpha_bar` at infinity.
#[derive(Debug, Clone)]
pub struct ThresholdSet {
    pub n: usize,
    pub omega_n: f64,
    pub alpha_bar: f64,
    /// beta = (omega_n - 2 alpha_bar) / 4.
    pub beta: f64,
}

impl ThresholdSet {
    pub fn new(n: usize, alpha_bar: f64) -> Result<Self> {
        let omega_n = omega(n);
        if !(0.0..omega_n).contains(&alpha_bar) {
            return Err(Error::InvalidParameter(format!(
                "alpha_bar = {alpha_bar} outside [0, omega_n = {omega_n})"
            )));
        }
        Ok(ThresholdSet {
            n,
            omega_n,
            alpha_bar,
            beta: (omega_n - 2.0 * alpha_bar) / 4.0,
        })
    }

    /// Tangent-ball radius threshold
    /// delta_s = ((omega_n + beta) / (omega_n + 2 beta))^{1/s}.
    ///
    /// Defined for beta > 0, i.e. alpha_bar < omega_n / 2.
    pub fn delta_of_s(&self, s: f64) -> Result<f64> {
        if self.beta <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "delta_s undefined: alpha_bar = {} >= omega_n/2 = {}",
                self.alpha_bar,
                self.omega_n / 2.0
            )));
        }
        if !(0.0 < s && s < 1.0) {
            return Err(Error::InvalidParameter(format!("s = {s} outside (0,1)")));
        }
        let base = (self.omega_n + self.beta) / (self.omega_n + 2.0 * self.beta);
        Ok(base.powf(1.0 / s))
    }
}

/// Convenience form of [`ThresholdSet::delta_of_s`].
pub fn delta_s(s: f64, alpha_bar: f64, n: usize) -> Result<f64> {
    ThresholdSet::new(n, alpha_bar)?.delta_of_s(s)
}

/// Exterior tangent-ball witness supplied by the caller: B_radius(center)
/// is claimed to lie in the complement of E and touch dE at the query point.
#[derive(Debug, Clone)]
pub struct TangentBallWitness {
    pub center: Vec<f64>,
    pub radius: f64,
}

/// Result of the uniform positive-curvature check at a boundary point.
#[derive(Debug, Clone)]
pub struct PositiveCurvatureReport {
    pub s: f64,
    pub sigma: f64,
    pub beta: f64,
    /// The certified lower bound beta / s.
    pub bound: f64,
    /// min of I_s^rho over the tail of the rho schedule (liminf proxy).
    pub liminf_proxy: f64,
    pub levels: Vec<(f64, f64)>,
    pub delta_sigma: f64,
    pub witness_radius: f64,
    pub pass: bool,
}

/// Check the curvature bound `liminf_rho I_s^rho[E](q) >= beta/s` at a
/// point with an exterior tangent ball of radius at least delta_sigma.
pub fn positive_curvature_check(
    e: &SetSpec,
    q: &[f64],
    witness: &TangentBallWitness,
    alpha_bar: f64,
    s: f64,
    sigma: f64,
    cfg: &QuadratureConfig,
) -> Result<PositiveCurvatureReport> {
    let n = q.len();
    let thresholds = ThresholdSet::new(n, alpha_bar)?;
    if thresholds.beta <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "beta = {} <= 0: the positive-curvature regime needs alpha_bar < omega_n/2",
            thresholds.beta
        )));
    }
    if s > sigma {
        return Err(Error::InvalidParameter(format!(
            "s = {s} must not exceed sigma = {sigma}"
        )));
    }
    let delta_sigma = thresholds.delta_of_s(sigma)?;

    validate_witness(e, q, witness)?;

    let pv = crate::quad::pv_curvature_integral(e, q, s, cfg)?;
    let tail_len = pv.levels.len().min(4);
    let liminf_proxy = pv.levels[pv.levels.len() - tail_len..]
        .iter()
        .map(|&(_, v)| v)
        .fold(f64::INFINITY, f64::min);
    let bound = thresholds.beta / s;
    let tol = 2.0 * pv.error_estimate + 0.05 * bound;
    Ok(PositiveCurvatureReport {
        s,
        sigma,
        beta: thresholds.beta,
        bound,
        liminf_proxy,
        levels: pv.levels,
        delta_sigma,
        witness_radius: witness.radius,
        pass: liminf_proxy >= bound - tol,
    })
}

fn validate_witness(e: &SetSpec, q: &[f64], witness: &TangentBallWitness) -> Result<()> {
    let d = crate::util::dist(&witness.center, q);
    if (d - witness.radius).abs() > 1e-6 * (1.0 + witness.radius) {
        return Err(Error::InvalidWitness(format!(
            "query point is at distance {d} from the center, radius {}",
            witness.radius
        )));
    }
    let mut rng = SeededRng::new(0x5eed_ba11);
    let n = q.len();
    for _ in 0..400 {
        let dir = rng.direction(n);
        let t = witness.radius * rng.uniform().powf(1.0 / n as f64);
        let p: Vec<f64> = witness
            .center
            .iter()
            .zip(&dir)
            .map(|(c, d)| c + 0.995 * t * d)
            .collect();
        if e.membership(&p) == Membership::Inside {
            return Err(Error::InvalidWitness(format!(
                "sampled point {p:?} of the witness ball lies in E"
            )));
        }
    }
    Ok(())
}

/// Outcome of the sign-change root finder.
#[derive(Debug, Clone)]
pub enum RootOutcome {
    Root {
        s_tilde: f64,
        bracket_width: f64,
        residual: f64,
        residual_error: f64,
        evaluations: usize,
    },
    /// The map is zero within quadrature error across the bracket
    /// (symmetric sets): every point is a root.
    Degenerate { max_abs: f64, error: f64 },
}

/// Find the parameter s at which the fractional mean curvature of E at p
/// changes sign, by bisection on a validated sign bracket followed by a
/// secant polish against the quadrature noise floor.
pub fn sign_change_root(
    e: &SetSpec,
    p: &[f64],
    s_bracket: (f64, f64),
    tol_s: f64,
    cfg: &QuadratureConfig,
) -> Result<RootOutcome> {
    let (mut lo, mut hi) = s_bracket;
    if !(0.0 < lo && lo < hi && hi < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "bracket ({lo}, {hi}) must satisfy 0 < lo < hi < 1"
        )));
    }
    let mut evals = 0usize;
    let mut eval = |s: f64| -> Result<(f64, f64)> {
        evals += 1;
        let r = curvature::curvature_eval(e, p, s, cfg)?;
        if r.error_estimate <= 0.02 * (r.value.abs() + 1.0) {
            return Ok((r.value, r.error_estimate));
        }
        // Poorly converged evaluation: widen the quadrature once.
        let mut wide = cfg.clone();
        wide.rel_tol = 0.1 * cfg.rel_tol;
        wide.max_panels = 4 * cfg.max_panels;
        let retry = curvature::curvature_eval(e, p, s, &wide)?;
        Ok((retry.value, retry.error_estimate))
    };

    let (mut f_lo, err_lo) = eval(lo)?;
    let (mut f_hi, err_hi) = eval(hi)?;

    if f_lo.abs() <= 2.0 * err_lo && f_hi.abs() <= 2.0 * err_hi {
        return Ok(RootOutcome::Degenerate {
            max_abs: f_lo.abs().max(f_hi.abs()),
            error: err_lo.max(err_hi),
        });
    }
    if f_lo * f_hi > 0.0 {
        return Err(Error::SameSignBracket {
            lo,
            hi,
            f_lo,
            f_hi,
        });
    }

    while hi - lo > tol_s {
        let mid = 0.5 * (lo + hi);
        let (f_mid, _) = eval(mid)?;
        if f_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if f_lo * f_mid < 0.0 {
            hi = mid;
            f_hi = f_mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }

    // Secant polish: drive the residual to the noise floor inside the
    // final bracket.
    let mut a = lo;
    let mut b = hi;
    let mut fa = f_lo;
    let mut fb = f_hi;
    let mut best = 0.5 * (a + b);
    let (mut f_best, mut e_best) = eval(best)?;
    for _ in 0..12 {
        if f_best.abs() <= 1.5 * e_best {
            break;
        }
        if fa * f_best < 0.0 {
            b = best;
            fb = f_best;
        } else {
            a = best;
            fa = f_best;
        }
        let denom = fb - fa;
        let mut next = if denom.abs() > 1e-300 {
            a - fa * (b - a) / denom
        } else {
            0.5 * (a + b)
        };
        if !(next > a && next < b) {
            next = 0.5 * (a + b);
        }
        best = next;
        let (f, err) = eval(best)?;
        f_best = f;
        e_best = err;
    }

    Ok(RootOutcome::Root {
        s_tilde: best,
        bracket_width: hi - lo,
        residual: f_best,
        residual_error: e_best,
        evaluations: evals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_small_dimensions() {
        assert_eq!(omega(0), 0.0);
        assert!((omega(1) - 2.0).abs() < 1e-14);
        assert!((omega(2) - 2.0 * std::f64::consts::PI).abs() < 1e-14);
        assert!((omega(3) - 4.0 * std::f64::consts::PI).abs() < 1e-14);
        assert!((omega(4) - 2.0 * std::f64::consts::PI.powi(2)).abs() < 1e-13);
    }

    #[test]
    fn delta_s_closed_form_n2() {
        // alpha_bar = 0 in n = 2: beta = pi/2 and delta_s = (5/6)^{1/s}.
        let t = ThresholdSet::new(2, 0.0).unwrap();
        for &s in &[0.5_f64, 0.25, 0.125, 0.1, 0.05] {
            let expected = (5.0_f64 / 6.0).powf(1.0 / s);
            assert!((t.delta_of_s(s).unwrap() - expected).abs() < 1e-12);
        }
        assert!((t.delta_of_s(0.5).unwrap() - 25.0 / 36.0).abs() < 1e-12);
    }

    #[test]
    fn delta_s_monotone_and_limits() {
        let t = ThresholdSet::new(2, 0.0).unwrap();
        let d005 = t.delta_of_s(0.05).unwrap();
        let d01 = t.delta_of_s(0.1).unwrap();
        let d02 = t.delta_of_s(0.2).unwrap();
        assert!(d005 < d01 && d01 < d02);
        assert!(d005 > 0.0 && d02 < 1.0);

        // beta -> 0 sends delta_s -> 1 for fixed s.
        let near = ThresholdSet::new(2, omega(2) / 2.0 - 1e-9).unwrap();
        assert!(near.delta_of_s(0.5).unwrap() > 1.0 - 1e-8);
    }

    #[test]
    fn beta_sign_flip_across_half_opening() {
        let w = omega(2);
        let below = ThresholdSet::new(2, w / 2.0 - 0.1).unwrap();
        let above = ThresholdSet::new(2, w / 2.0 + 0.1).unwrap();
        assert!(below.beta > 0.0);
        assert!(above.beta < 0.0);
        let at = ThresholdSet::new(2, w / 2.0).unwrap();
        assert!(at.beta.abs() < 1e-14);
        assert!(at.delta_of_s(0.3).is_err());
    }
}
