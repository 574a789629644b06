//! Browser demo bindings: three interactive views on the toolkit.
//!
//! * `alpha_scan` - s * alpha_s curves with the extrapolated contribution
//!   from infinity,
//! * `curvature_scan` - scaled fractional mean curvature with both
//!   asymptotic limits,
//! * `minimize_preset` - the discrete stickiness experiment on a small
//!   grid.
//!
//! Every function takes plain strings/numbers and returns a JSON string,
//! so the page needs no generated TypeScript glue beyond wasm-bindgen's
//! default output.

use wasm_bindgen::prelude::wasm_bindgen;

use nlms_core::alpha;
use nlms_core::curvature::{self, ScanMode};
use nlms_core::geom::{canonical_set, Family, SetSpec};
use nlms_core::minimize::{minimize, GridProblem, SolverConfig, SweepPreset};
use nlms_core::quad::QuadratureConfig;
use nlms_core::thresholds::ThresholdSet;
use serde_json::json;

fn demo_cfg() -> QuadratureConfig {
    // Single-threaded target: trade a little accuracy for latency.
    QuadratureConfig {
        rel_tol: 1e-4,
        max_panels: 3_000,
        feature_scale: 0.05,
        ..QuadratureConfig::default()
    }
}

fn named_set(name: &str) -> Result<(SetSpec, Vec<f64>), String> {
    let (family, point) = match name {
        "quadrant" => (Family::Quadrant { dim: 2 }, vec![0.0, 0.0]),
        "halfplane" => (Family::HalfSpace { dim: 2 }, vec![0.0, 0.0]),
        "cubic" => (Family::CubicSupergraph, vec![0.0, 0.0]),
        "parabola" => (Family::Parabola { dim: 2 }, vec![0.0, 0.0]),
        "tanh" => (Family::TanhGraph { dim: 2 }, vec![0.0, 0.0]),
        "candy" => (
            Family::Candy {
                dim: 2,
                c: 0.6,
                p: 0.5,
            },
            vec![0.0, 0.6],
        ),
        "ball" => (Family::Ball { dim: 2, radius: 1.0 }, vec![1.0, 0.0]),
        "annulus" => (
            Family::Annulus {
                dim: 2,
                inner: 1.0,
                outer: 2.0,
            },
            vec![1.0, 0.0],
        ),
        other => return Err(format!("unknown set '{other}'")),
    };
    let spec = canonical_set(&family).map_err(|e| e.to_string())?;
    Ok((spec, point))
}

fn err_json(message: String) -> String {
    json!({ "error": message }).to_string()
}

/// s * alpha_s along a geometric grid, with the extrapolated limit and
/// the closed form when one exists.
#[wasm_bindgen]
pub fn alpha_scan(set_name: &str, levels: usize) -> String {
    let (spec, _) = match named_set(set_name) {
        Ok(v) => v,
        Err(e) => return err_json(e),
    };
    let n = spec.dim();
    let grid: Vec<f64> = (0..levels.clamp(3, 9))
        .map(|k| 0.2 * 0.5f64.powi(k as i32))
        .collect();
    let cfg = demo_cfg();
    match alpha::alpha_limit_on_grid(&spec, &vec![0.0; n], 1.0, &grid, &cfg) {
        Ok(est) => json!({
            "s": est.s_grid,
            "scaled": est.scaled_values,
            "extrapolated": est.extrapolated_limit,
            "error_bar": est.error_bar,
            "closed_form": est.closed_form.as_ref().map(|(v, _)| *v),
            "closed_form_tag": est.closed_form.as_ref().map(|(_, t)| t.clone()),
            "omega_n": nlms_core::thresholds::omega(n),
        })
        .to_string(),
        Err(e) => err_json(e.to_string()),
    }
}

/// Fractional mean curvature scan at a canonical boundary point, with
/// s I_s, (1-s) I_s and the two predicted limits.
#[wasm_bindgen]
pub fn curvature_scan(set_name: &str, count: usize) -> String {
    let (spec, point) = match named_set(set_name) {
        Ok(v) => v,
        Err(e) => return err_json(e),
    };
    let m = count.clamp(4, 16);
    let grid: Vec<f64> = (0..m)
        .map(|k| 0.04 + (0.92 - 0.04) * k as f64 / (m - 1) as f64)
        .collect();
    let cfg = demo_cfg();
    let scan = match curvature::curvature_scan(&spec, &point, &grid, ScanMode::TimesS, None, &cfg)
    {
        Ok(s) => s,
        Err(e) => return err_json(e.to_string()),
    };
    let predicted_s0 = scan.predicted_limit.as_ref().map(|(_, v)| *v);
    let predicted_s1 = curvature::detect_classical_curvature(&spec, &point)
        .map(|h| nlms_core::thresholds::omega(point.len() - 1) * h);
    json!({
        "s": grid,
        "value": scan.rows.iter().map(|r| r.value).collect::<Vec<_>>(),
        "times_s": scan.rows.iter().map(|r| r.scaled_s0).collect::<Vec<_>>(),
        "times_one_minus_s": scan.rows.iter().map(|r| r.scaled_s1).collect::<Vec<_>>(),
        "err": scan.rows.iter().map(|r| r.error_estimate).collect::<Vec<_>>(),
        "predicted_s0_limit": predicted_s0,
        "predicted_s1_limit": predicted_s1,
    })
    .to_string()
}

/// Run the stickiness experiment for one preset and s on a small grid.
#[wasm_bindgen]
pub fn minimize_preset(preset: &str, s: f64, resolution: usize, seed: u32) -> String {
    let preset = match SweepPreset::parse(preset) {
        Ok(p) => p,
        Err(e) => return err_json(e.to_string()),
    };
    let resolution = resolution.clamp(8, 32);
    let (domain, exterior) = match preset.geometry() {
        Ok(g) => g,
        Err(e) => return err_json(e.to_string()),
    };
    let cfg = demo_cfg();
    let problem = match GridProblem::build(domain, resolution, exterior, s, &cfg) {
        Ok(p) => p,
        Err(e) => return err_json(e.to_string()),
    };
    let solver = SolverConfig {
        restarts: 4,
        sweeps: 120,
        seed: seed as u64,
        ..Default::default()
    };
    let result = match minimize(&problem, &solver) {
        Ok(r) => r,
        Err(e) => return err_json(e.to_string()),
    };
    // Full lattice picture: -1 exterior empty, 2 exterior occupied,
    // 0/1 domain cells.
    let side = problem.lattice[0];
    let mut grid = vec![-1i8; side * side];
    for (c, &occ) in problem.collar_cells.iter().zip(&problem.exterior_occ) {
        grid[c[1] * side + c[0]] = if occ { 2 } else { -1 };
    }
    for (c, &occ) in problem.omega_cells.iter().zip(&result.state) {
        grid[c[1] * side + c[0]] = i8::from(occ);
    }
    let delta_s = ThresholdSet::new(2, problem_alpha(&problem))
        .ok()
        .and_then(|t| t.delta_of_s(s).ok());
    json!({
        "side": side,
        "h": problem.h,
        "grid": grid,
        "energy": result.energy,
        "occupancy": result.occupancy(),
        "restarts_agreeing": result.restarts_agreeing,
        "restarts": result.restarts,
        "low_confidence": result.low_confidence,
        "delta_s": delta_s,
        "trace": result.trace,
    })
    .to_string()
}

fn problem_alpha(problem: &GridProblem) -> f64 {
    alpha::closed_form_alpha(&problem.exterior)
        .map(|(a, _)| a)
        .unwrap_or(0.0)
}

/// Library version shown in the page footer.
#[wasm_bindgen]
pub fn version() -> String {
    nlms_core::VERSION.to_string()
}

#[cfg(test)]
mod tests {
    // The bindings are plain functions on native targets; smoke-test the
    // JSON surfaces.
    use super::*;

    #[test]
    fn alpha_scan_json_shape() {
        let text = alpha_scan("quadrant", 5);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(v.get("error").is_none(), "{text}");
        assert_eq!(v["s"].as_array().unwrap().len(), 5);
        let closed = v["closed_form"].as_f64().unwrap();
        assert!((closed - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn curvature_scan_json_shape() {
        let text = curvature_scan("ball", 4);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(v.get("error").is_none(), "{text}");
        let predicted = v["predicted_s0_limit"].as_f64().unwrap();
        assert!((predicted - 2.0 * std::f64::consts::PI).abs() < 1e-9);
    }

    #[test]
    fn minimize_json_shape() {
        let text = minimize_preset("halfplane-in-disc", 0.3, 10, 7);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(v.get("error").is_none(), "{text}");
        assert!(v["occupancy"].as_f64().unwrap() > 0.2);
    }

    #[test]
    fn unknown_set_reports_error() {
        let text = alpha_scan("nonsense", 5);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(v.get("error").is_some());
    }
}
