//! JSON set-spec format.
//!
//! Combinator nodes are objects `{"op": "union" | "intersection" |
//! "complement" | "translate" | "rotate" | "scale", "args": [..]}` (with
//! `vector`/`matrix`/`factor` fields where applicable); primitive leaves are
//! `{"type": "halfspace" | "ball" | "cone" | "supergraph" | "raster" |
//! "empty" | "full", ...}`.  The mapping is round-trip stable for every
//! serializable tree; supergraphs with custom closures cannot be
//! serialized and report an error.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use super::{GraphFunction, GraphKind, RasterSet, SetSpec, SphereCap};
use crate::{Error, Result};

pub fn set_to_json_string(spec: &SetSpec) -> Result<String> {
    Ok(set_to_json(spec)?.to_string())
}

pub fn set_from_json_str(text: &str) -> Result<SetSpec> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::Json(format!("parse: {e}")))?;
    set_from_json(&value)
}

pub fn set_to_json(spec: &SetSpec) -> Result<Value> {
    Ok(match spec {
        SetSpec::Empty { dim } => json!({"type": "empty", "dim": dim}),
        SetSpec::Full { dim } => json!({"type": "full", "dim": dim}),
        SetSpec::HalfSpace { normal, offset } => {
            json!({"type": "halfspace", "normal": normal, "offset": offset})
        }
        SetSpec::Ball { center, radius } => {
            json!({"type": "ball", "center": center, "radius": radius})
        }
        SetSpec::SphericalCone { apex, cap } => {
            json!({"type": "cone", "apex": apex, "cap": cap_to_json(cap)})
        }
        SetSpec::Supergraph { graph, axis, dim } => {
            json!({
                "type": "supergraph",
                "dim": dim,
                "axis": axis,
                "graph": graph_to_json(graph)?,
            })
        }
        SetSpec::Raster(r) => {
            let rows: String = r.cells.iter().map(|&b| if b { '1' } else { '0' }).collect();
            json!({
                "type": "raster",
                "origin": r.origin,
                "h": r.h,
                "shape": r.shape,
                "cells": rows,
            })
        }
        SetSpec::Complement(e) => json!({"op": "complement", "args": [set_to_json(e)?]}),
        SetSpec::Union(parts) => {
            let args: Result<Vec<Value>> = parts.iter().map(set_to_json).collect();
            json!({"op": "union", "args": args?})
        }
        SetSpec::Intersection(parts) => {
            let args: Result<Vec<Value>> = parts.iter().map(set_to_json).collect();
            json!({"op": "intersection", "args": args?})
        }
        SetSpec::Translate(e, v) => {
            json!({"op": "translate", "args": [set_to_json(e)?], "vector": v})
        }
        SetSpec::Rotate(e, m) => json!({"op": "rotate", "args": [set_to_json(e)?], "matrix": m}),
        SetSpec::Scale(e, l) => json!({"op": "scale", "args": [set_to_json(e)?], "factor": l}),
    })
}

fn cap_to_json(cap: &SphereCap) -> Value {
    match cap {
        SphereCap::HalfAngle { axis, angle } => json!({"axis": axis, "angle": angle}),
        SphereCap::AngleIntervals { dim, intervals } => {
            json!({"dim": dim, "intervals": intervals})
        }
    }
}

fn graph_to_json(graph: &GraphFunction) -> Result<Value> {
    let family = match &graph.kind {
        GraphKind::Zero => json!({"family": "zero"}),
        GraphKind::Cubic => json!({"family": "cubic"}),
        GraphKind::Parabola => json!({"family": "parabola"}),
        GraphKind::Tanh => json!({"family": "tanh"}),
        GraphKind::BallLower { radius } => json!({"family": "ball_lower", "radius": radius}),
        GraphKind::ConeSlope { k, cap, foot } => {
            json!({"family": "cone_slope", "k": k, "foot": foot, "cap": cap_to_json(cap)})
        }
        GraphKind::Custom { name, .. } => {
            return Err(Error::Json(format!(
                "custom graph '{name}' has no serializable form"
            )))
        }
    };
    Ok(family)
}

fn field<'a>(map: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    map.get(key)
        .ok_or_else(|| Error::Json(format!("missing field '{key}'")))
}

fn as_f64(v: &Value) -> Result<f64> {
    v.as_f64()
        .ok_or_else(|| Error::Json(format!("expected number, got {v}")))
}

fn as_usize(v: &Value) -> Result<usize> {
    v.as_u64()
        .map(|u| u as usize)
        .ok_or_else(|| Error::Json(format!("expected integer, got {v}")))
}

fn as_vec(v: &Value) -> Result<Vec<f64>> {
    v.as_array()
        .ok_or_else(|| Error::Json(format!("expected array, got {v}")))?
        .iter()
        .map(as_f64)
        .collect()
}

pub fn set_from_json(value: &Value) -> Result<SetSpec> {
    let map = value
        .as_object()
        .ok_or_else(|| Error::Json(format!("expected object, got {value}")))?;

    if let Some(op) = map.get("op") {
        let op = op
            .as_str()
            .ok_or_else(|| Error::Json("'op' must be a string".into()))?;
        let args: Vec<SetSpec> = field(map, "args")?
            .as_array()
            .ok_or_else(|| Error::Json("'args' must be an array".into()))?
            .iter()
            .map(set_from_json)
            .collect::<Result<_>>()?;
        return match op {
            "complement" => {
                let [e] = one(args)?;
                Ok(e.complement())
            }
            "union" => Ok(SetSpec::Union(args)),
            "intersection" => Ok(SetSpec::Intersection(args)),
            "translate" => {
                let v = as_vec(field(map, "vector")?)?;
                let [e] = one(args)?;
                Ok(e.translate(v))
            }
            "rotate" => {
                let m: Vec<Vec<f64>> = field(map, "matrix")?
                    .as_array()
                    .ok_or_else(|| Error::Json("'matrix' must be an array".into()))?
                    .iter()
                    .map(as_vec)
                    .collect::<Result<_>>()?;
                let [e] = one(args)?;
                Ok(e.rotate(m))
            }
            "scale" => {
                let l = as_f64(field(map, "factor")?)?;
                let [e] = one(args)?;
                Ok(e.scaled(l))
            }
            other => Err(Error::Json(format!("unknown op '{other}'"))),
        };
    }

    let ty = field(map, "type")?
        .as_str()
        .ok_or_else(|| Error::Json("'type' must be a string".into()))?;
    match ty {
        "empty" => Ok(SetSpec::Empty {
            dim: as_usize(field(map, "dim")?)?,
        }),
        "full" => Ok(SetSpec::Full {
            dim: as_usize(field(map, "dim")?)?,
        }),
        "halfspace" => Ok(SetSpec::HalfSpace {
            normal: as_vec(field(map, "normal")?)?,
            offset: as_f64(field(map, "offset")?)?,
        }),
        "ball" => Ok(SetSpec::Ball {
            center: as_vec(field(map, "center")?)?,
            radius: as_f64(field(map, "radius")?)?,
        }),
        "cone" => Ok(SetSpec::SphericalCone {
            apex: as_vec(field(map, "apex")?)?,
            cap: cap_from_json(field(map, "cap")?)?,
        }),
        "supergraph" => {
            let graph = graph_from_json(field(map, "graph")?)?;
            Ok(SetSpec::Supergraph {
                graph: Arc::new(graph),
                axis: as_usize(field(map, "axis")?)?,
                dim: as_usize(field(map, "dim")?)?,
            })
        }
        "raster" => {
            let origin = as_vec(field(map, "origin")?)?;
            let h = as_f64(field(map, "h")?)?;
            let shape: Vec<usize> = field(map, "shape")?
                .as_array()
                .ok_or_else(|| Error::Json("'shape' must be an array".into()))?
                .iter()
                .map(as_usize)
                .collect::<Result<_>>()?;
            let rows = field(map, "cells")?
                .as_str()
                .ok_or_else(|| Error::Json("'cells' must be a 0/1 string".into()))?;
            let cells: Vec<bool> = rows.chars().map(|c| c == '1').collect();
            if cells.len() != shape.iter().product::<usize>() {
                return Err(Error::Json("raster cell count does not match shape".into()));
            }
            Ok(SetSpec::Raster(Arc::new(RasterSet::new(
                origin, h, shape, cells,
            ))))
        }
        other => Err(Error::Json(format!("unknown type '{other}'"))),
    }
}

fn one(args: Vec<SetSpec>) -> Result<[SetSpec; 1]> {
    let mut it = args.into_iter();
    match (it.next(), it.next()) {
        (Some(e), None) => Ok([e]),
        _ => Err(Error::Json("operator expects exactly one argument".into())),
    }
}

fn cap_from_json(value: &Value) -> Result<SphereCap> {
    let map = value
        .as_object()
        .ok_or_else(|| Error::Json("cap must be an object".into()))?;
    if map.contains_key("axis") {
        Ok(SphereCap::HalfAngle {
            axis: as_vec(field(map, "axis")?)?,
            angle: as_f64(field(map, "angle")?)?,
        })
    } else {
        let intervals: Vec<(f64, f64)> = field(map, "intervals")?
            .as_array()
            .ok_or_else(|| Error::Json("'intervals' must be an array".into()))?
            .iter()
            .map(|pair| {
                let v = as_vec(pair)?;
                if v.len() != 2 {
                    return Err(Error::Json("interval must be [lo, hi]".into()));
                }
                Ok((v[0], v[1]))
            })
            .collect::<Result<_>>()?;
        Ok(SphereCap::AngleIntervals {
            dim: as_usize(field(map, "dim")?)?,
            intervals,
        })
    }
}

fn graph_from_json(value: &Value) -> Result<GraphFunction> {
    let map = value
        .as_object()
        .ok_or_else(|| Error::Json("graph must be an object".into()))?;
    let family = field(map, "family")?
        .as_str()
        .ok_or_else(|| Error::Json("'family' must be a string".into()))?;
    match family {
        "zero" => Ok(GraphFunction::zero(1)),
        "cubic" => Ok(GraphFunction::cubic()),
        "parabola" => Ok(GraphFunction::parabola()),
        "tanh" => Ok(GraphFunction::tanh_graph()),
        "ball_lower" => Ok(GraphFunction::ball_lower(as_f64(field(map, "radius")?)?)),
        "cone_slope" => Ok(GraphFunction::cone_slope(
            as_f64(field(map, "k")?)?,
            cap_from_json(field(map, "cap")?)?,
            as_vec(field(map, "foot")?)?,
        )),
        other => Err(Error::Json(format!("unknown graph family '{other}'"))),
    }
}
