//! Set-spec parsing for the CLI: canonical family names with inline
//! key=value parameters, or a path to a set-spec JSON file.

use std::collections::HashMap;

use nlms_core::geom::{canonical_set, set_from_json_str, Family, SetSpec};

pub fn parse_set(text: &str) -> Result<SetSpec, String> {
    if text.ends_with(".json") || std::path::Path::new(text).exists() {
        let body = std::fs::read_to_string(text).map_err(|e| format!("read {text}: {e}"))?;
        return set_from_json_str(&body).map_err(|e| e.to_string());
    }

    let (name, params) = match text.split_once(':') {
        Some((n, p)) => (n, parse_params(p)?),
        None => (text, HashMap::new()),
    };
    let get = |key: &str, default: f64| params.get(key).copied().unwrap_or(default);
    let dim = get("n", 2.0) as usize;

    let family = match name {
        "quadrant" => Family::Quadrant { dim },
        "halfplane" | "halfspace" => Family::HalfSpace { dim },
        "cone" => Family::Cone {
            opening: get("opening", std::f64::consts::FRAC_PI_2),
        },
        "gamma" | "gamma_k_eps" => Family::GammaKEps {
            dim,
            k: get("k", 2.0) as u32,
            eps: get("eps", 0.05),
        },
        "cubic" | "cubic_supergraph" => Family::CubicSupergraph,
        "parabola" => Family::Parabola { dim },
        "tanh" | "bounded_graph" => Family::TanhGraph { dim },
        "candy" => Family::Candy {
            dim,
            c: get("c", 0.6),
            p: get("p", 0.5),
        },
        "annulus" => Family::Annulus {
            dim,
            inner: get("inner", 1.0),
            outer: get("outer", 2.0),
        },
        "ball" => Family::Ball {
            dim,
            radius: get("r", 1.0),
        },
        "linear-cone" | "linear_cone" => Family::LinearConeGraph {
            eps_bar: get("eps", 0.5),
            k: get("k", 1.0),
        },
        other => return Err(format!("unknown set '{other}' and no such file")),
    };
    canonical_set(&family).map_err(|e| e.to_string())
}

fn parse_params(text: &str) -> Result<HashMap<String, f64>, String> {
    let mut out = HashMap::new();
    for pair in text.split(',') {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got '{pair}'"))?;
        let value: f64 = v
            .trim()
            .parse()
            .map_err(|e| format!("bad value for {k}: {e}"))?;
        out.insert(k.trim().to_string(), value);
    }
    Ok(out)
}
