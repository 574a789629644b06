//! Batch front end: parse set specs and configs, dispatch to the
//! computational modules, emit CSV tables with JSON metadata sidecars.
//!
//! Exit codes: 0 success, 2 bad input, 3 non-converged quadrature
//! (results still written, flagged), 4 low-confidence minimization.

mod sets;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use nlms_core::alpha;
use nlms_core::curvature::{self, ScanMode};
use nlms_core::geom::set_to_json;
use nlms_core::minimize::{
    self, minimize, problem_from_json, state_to_pgm, stickiness_sweep, GridProblem,
    SolverConfig, SweepPreset,
};
use nlms_core::quad::QuadratureConfig;
use nlms_core::thresholds::{self, RootOutcome};
use nlms_core::verify;

#[derive(Parser)]
#[command(name = "nlms", version, about = "Nonlocal minimal surface toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Output CSV path; a JSON metadata sidecar is written next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Relative quadrature tolerance override.
    #[arg(long)]
    rel_tol: Option<f64>,
    /// Random seed recorded in every artifact.
    #[arg(long, default_value_t = 0x6e6c_6d73)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Contribution from infinity: s alpha_s scan and extrapolated limit.
    Alpha {
        /// Canonical family name (quadrant, cubic, parabola, tanh, candy,
        /// cone:opening=..., gamma:k=..,eps=.., annulus:inner=..,outer=..,
        /// ball:r=.., linear-cone:eps=..,k=.., halfplane) or a set-spec
        /// JSON file.
        #[arg(long)]
        set: String,
        /// Probe point (comma separated).
        #[arg(long)]
        q: Option<String>,
        /// Exclusion radius.
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        /// s-grid: "start:count:ratio" or a comma list.
        #[arg(long, default_value = "0.2:7:0.5")]
        s_grid: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Single fractional mean curvature evaluation I_s[E](p).
    Curv {
        #[arg(long)]
        set: String,
        #[arg(long)]
        point: String,
        #[arg(long)]
        s: f64,
        /// Evaluate the single-cutoff truncation I_s^rho instead of the
        /// principal value.
        #[arg(long)]
        rho: Option<f64>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Curvature scan over an s-grid with scaled limits.
    Scan {
        #[arg(long)]
        set: String,
        #[arg(long)]
        point: String,
        #[arg(long, default_value = "0.2:5:0.5")]
        s_grid: String,
        /// raw | times-s | times-one-minus-s
        #[arg(long, default_value = "times-s")]
        mode: String,
        /// Classical mean curvature for the s -> 1 prediction.
        #[arg(long)]
        classical_h: Option<f64>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Sign-change root of s -> I_s[E](p).
    Root {
        #[arg(long)]
        set: String,
        #[arg(long)]
        point: String,
        /// Bracket "lo,hi" with opposite curvature signs.
        #[arg(long)]
        bracket: String,
        #[arg(long, default_value_t = 1e-3)]
        tol_s: f64,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Tangent-ball threshold delta_s and related constants.
    Delta {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        alpha_bar: f64,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        s_grid: Option<String>,
        /// Regime bound sigma: validates s <= sigma.
        #[arg(long)]
        sigma: Option<f64>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Minimize a discrete fractional perimeter problem.
    Minimize {
        /// Problem JSON file ({domain, resolution, exterior, s, solver}).
        #[arg(long)]
        problem: Option<PathBuf>,
        /// Or a sweep preset name.
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long, default_value_t = 32)]
        res: usize,
        /// Result JSON path; a PGM raster dump is written next to it.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        rel_tol: Option<f64>,
        #[arg(long, default_value_t = 0x5715_c4)]
        seed: u64,
    },
    /// Stickiness phase sweep over an s-list.
    Sweep {
        #[arg(long)]
        preset: String,
        #[arg(long, default_value = "0.4,0.2,0.1,0.05")]
        s_list: String,
        #[arg(long, default_value_t = 32)]
        res: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run the acceptance suite and print one pass/fail line per criterion.
    Verify {
        /// Run a single criterion.
        #[arg(long)]
        only: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn parse_point(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad point: {e}")))
        .collect()
}

fn parse_s_grid(text: &str) -> Result<Vec<f64>, String> {
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err("s-grid spec is start:count:ratio".into());
        }
        let start: f64 = parts[0].parse().map_err(|e| format!("bad start: {e}"))?;
        let count: usize = parts[1].parse().map_err(|e| format!("bad count: {e}"))?;
        let ratio: f64 = parts[2].parse().map_err(|e| format!("bad ratio: {e}"))?;
        Ok((0..count).map(|k| start * ratio.powi(k as i32)).collect())
    } else {
        text.split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad s: {e}")))
            .collect()
    }
}

fn quad_cfg(rel_tol: Option<f64>) -> QuadratureConfig {
    let mut cfg = QuadratureConfig::default();
    if let Some(tol) = rel_tol {
        cfg.rel_tol = tol;
    }
    cfg
}

/// Write a CSV artifact plus its JSON metadata sidecar.
fn write_artifact(out: &Option<PathBuf>, csv: &str, meta: Value) -> Result<(), String> {
    let Some(path) = out else {
        print!("{csv}");
        return Ok(());
    };
    std::fs::write(path, csv).map_err(|e| format!("write {}: {e}", path.display()))?;
    let sidecar = path.with_extension(format!(
        "{}meta.json",
        path.extension()
            .map(|e| format!("{}.", e.to_string_lossy()))
            .unwrap_or_default()
    ));
    let meta_text = serde_json::to_string_pretty(&meta).map_err(|e| e.to_string())?;
    std::fs::write(&sidecar, meta_text)
        .map_err(|e| format!("write {}: {e}", sidecar.display()))?;
    eprintln!("wrote {} (+ {})", path.display(), sidecar.display());
    Ok(())
}

fn meta_base(command: &str, seed: u64, cfg: &QuadratureConfig) -> Value {
    json!({
        "command": command,
        "version": nlms_core::VERSION,
        "seed": seed,
        "quadrature": {
            "rel_tol": cfg.rel_tol,
            "tail_radius": cfg.tail_radius,
            "pv_levels": cfg.pv_rho_schedule.len(),
            "angular_order": cfg.angular_order,
            "max_panels": cfg.max_panels,
            "feature_scale": cfg.feature_scale,
        },
    })
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Alpha {
            set,
            q,
            r,
            s_grid,
            common,
        } => {
            let spec = sets::parse_set(&set)?;
            let n = spec.dim().max(1);
            let q = match q {
                Some(text) => parse_point(&text)?,
                None => vec![0.0; n],
            };
            let grid = parse_s_grid(&s_grid)?;
            let cfg = quad_cfg(common.rel_tol);
            let est = alpha::alpha_limit_on_grid(&spec, &q, r, &grid, &cfg)
                .map_err(|e| e.to_string())?;
            let mut csv = String::from("s,alpha_s,s_times_alpha_s,closed_form_if_any\n");
            let closed = est.closed_form.as_ref().map(|(v, _)| *v);
            for (s, scaled) in est.s_grid.iter().zip(&est.scaled_values) {
                csv.push_str(&format!(
                    "{},{},{},{}\n",
                    s,
                    scaled / s,
                    scaled,
                    closed.map_or(String::new(), |v| v.to_string())
                ));
            }
            csv.push_str(&format!(
                "extrapolated_limit,,{},{}\n",
                est.extrapolated_limit,
                closed.map_or(String::new(), |v| v.to_string())
            ));
            let mut meta = meta_base("alpha", common.seed, &cfg);
            meta["set"] = set_to_json(&spec).map_err(|e| e.to_string())?;
            meta["q"] = json!(q);
            meta["r"] = json!(r);
            meta["s_grid"] = json!(est.s_grid);
            meta["extrapolated_limit"] = json!(est.extrapolated_limit);
            meta["error_bar"] = json!(est.error_bar);
            if let Some((hi, lo)) = est.limsup_liminf_split {
                meta["limsup_liminf_split"] = json!([hi, lo]);
            }
            write_artifact(&common.out, &csv, meta)?;
            println!(
                "alpha(E) ~ {:.6} +- {:.1e}{}",
                est.extrapolated_limit,
                est.error_bar,
                est.closed_form
                    .map(|(v, tag)| format!(" (closed form {v:.6}, {tag})"))
                    .unwrap_or_default()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Curv {
            set,
            point,
            s,
            rho,
            common,
        } => {
            let spec = sets::parse_set(&set)?;
            let p = parse_point(&point)?;
            let cfg = quad_cfg(common.rel_tol);
            let (csv, converged, summary) = match rho {
                Some(rho) => {
                    let v = curvature::curvature_truncated(&spec, &p, s, rho, &cfg)
                        .map_err(|e| e.to_string())?;
                    (
                        format!("s,rho,I_s_rho\n{s},{rho},{v}\n"),
                        true,
                        format!("I_s^rho[E](p) = {v:.8}"),
                    )
                }
                None => {
                    let r = curvature::curvature_eval(&spec, &p, s, &cfg)
                        .map_err(|e| e.to_string())?;
                    // Exit-code policy: flag runs whose error bar exceeds
                    // 1% of the value scale.
                    let usable = r.error_estimate <= 0.01 * (r.value.abs() + 1.0);
                    (
                        format!(
                            "s,I_s,s_I_s,one_minus_s_I_s,local,tail,err\n{},{},{},{},{},{},{}\n",
                            r.s,
                            r.value,
                            r.scaled_s0,
                            r.scaled_s1,
                            r.local_part,
                            r.tail_part,
                            r.error_estimate
                        ),
                        usable,
                        format!(
                            "I_s[E](p) = {:.8} +- {:.2e}{}",
                            r.value,
                            r.error_estimate,
                            if usable { "" } else { "  [non-converged]" }
                        ),
                    )
                }
            };
            let mut meta = meta_base("curv", common.seed, &cfg);
            meta["set"] = set_to_json(&spec).map_err(|e| e.to_string())?;
            meta["point"] = json!(p);
            meta["s"] = json!(s);
            write_artifact(&common.out, &csv, meta)?;
            println!("{summary}");
            Ok(if converged {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
        Command::Scan {
            set,
            point,
            s_grid,
            mode,
            classical_h,
            common,
        } => {
            let spec = sets::parse_set(&set)?;
            let p = parse_point(&point)?;
            let grid = parse_s_grid(&s_grid)?;
            let mode = match mode.as_str() {
                "raw" => ScanMode::Raw,
                "times-s" => ScanMode::TimesS,
                "times-one-minus-s" => ScanMode::TimesOneMinusS,
                other => return Err(format!("unknown scan mode '{other}'")),
            };
            let cfg = quad_cfg(common.rel_tol);
            let scan = curvature::curvature_scan(&spec, &p, &grid, mode, classical_h, &cfg)
                .map_err(|e| e.to_string())?;
            let mut csv = String::from("row,s,I_s,s_I_s,one_minus_s_I_s,local,tail,err\n");
            let mut converged = true;
            for r in &scan.rows {
                converged &= r.error_estimate <= 0.01 * (r.value.abs() + 1.0);
                csv.push_str(&format!(
                    "scan,{},{},{},{},{},{},{}\n",
                    r.s,
                    r.value,
                    r.scaled_s0,
                    r.scaled_s1,
                    r.local_part,
                    r.tail_part,
                    r.error_estimate
                ));
            }
            if let Some((desc, v)) = &scan.predicted_limit {
                let (s0, s1) = match mode {
                    ScanMode::TimesS => (v.to_string(), String::new()),
                    ScanMode::TimesOneMinusS => (String::new(), v.to_string()),
                    ScanMode::Raw => (String::new(), String::new()),
                };
                csv.push_str(&format!("limit,,,{s0},{s1},,,\n"));
                println!("predicted limit ({desc}) = {v:.6}");
            }
            let mut meta = meta_base("scan", common.seed, &cfg);
            meta["set"] = set_to_json(&spec).map_err(|e| e.to_string())?;
            meta["point"] = json!(p);
            meta["s_grid"] = json!(grid);
            meta["mode"] = json!(match mode {
                ScanMode::Raw => "raw",
                ScanMode::TimesS => "times-s",
                ScanMode::TimesOneMinusS => "times-one-minus-s",
            });
            meta["classical_h"] = json!(classical_h);
            write_artifact(&common.out, &csv, meta)?;
            for r in &scan.rows {
                println!(
                    "s = {:<8} I_s = {:>12.6}  s I_s = {:>10.6}  (1-s) I_s = {:>10.6}",
                    r.s, r.value, r.scaled_s0, r.scaled_s1
                );
            }
            Ok(if converged {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
        Command::Root {
            set,
            point,
            bracket,
            tol_s,
            common,
        } => {
            let spec = sets::parse_set(&set)?;
            let p = parse_point(&point)?;
            let b = parse_point(&bracket)?;
            if b.len() != 2 {
                return Err("bracket must be lo,hi".into());
            }
            let cfg = quad_cfg(common.rel_tol);
            let outcome = thresholds::sign_change_root(&spec, &p, (b[0], b[1]), tol_s, &cfg)
                .map_err(|e| e.to_string())?;
            let mut meta = meta_base("root", common.seed, &cfg);
            meta["set"] = set_to_json(&spec).map_err(|e| e.to_string())?;
            meta["point"] = json!(p);
            meta["bracket"] = json!(b);
            meta["tol_s"] = json!(tol_s);
            match outcome {
                RootOutcome::Root {
                    s_tilde,
                    bracket_width,
                    residual,
                    residual_error,
                    evaluations,
                } => {
                    let csv = format!(
                        "s_tilde,bracket_width,residual,residual_error,evaluations\n{s_tilde},{bracket_width},{residual},{residual_error},{evaluations}\n"
                    );
                    write_artifact(&common.out, &csv, meta)?;
                    println!(
                        "sign change at s~ = {s_tilde:.6} (bracket width {bracket_width:.1e}, |I| = {:.2e})",
                        residual.abs()
                    );
                    Ok(ExitCode::SUCCESS)
                }
                RootOutcome::Degenerate { max_abs, error } => {
                    let csv = format!("degenerate,max_abs,error\ntrue,{max_abs},{error}\n");
                    write_artifact(&common.out, &csv, meta)?;
                    println!(
                        "degenerate: I_s vanishes across the bracket (max |I| = {max_abs:.2e}); every point is a root"
                    );
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Command::Delta {
            n,
            alpha_bar,
            s,
            s_grid,
            sigma,
            common,
        } => {
            let t = thresholds::ThresholdSet::new(n, alpha_bar).map_err(|e| e.to_string())?;
            let values: Vec<f64> = match (&s, &s_grid) {
                (Some(s), None) => vec![*s],
                (None, Some(grid)) => parse_s_grid(grid)?,
                _ => return Err("pass exactly one of --s or --s-grid".into()),
            };
            if let (Some(sigma), Some(s)) = (sigma, s) {
                if s > sigma {
                    return Err(format!("s = {s} exceeds sigma = {sigma}"));
                }
            }
            let mut csv = String::from("s,delta_s,beta,omega_n\n");
            for &sv in &values {
                let d = t.delta_of_s(sv).map_err(|e| e.to_string())?;
                csv.push_str(&format!("{sv},{d},{},{}\n", t.beta, t.omega_n));
                println!("delta_{sv} = {d:.12}");
            }
            let cfg = quad_cfg(common.rel_tol);
            let mut meta = meta_base("delta", common.seed, &cfg);
            meta["n"] = json!(n);
            meta["alpha_bar"] = json!(alpha_bar);
            meta["beta"] = json!(t.beta);
            write_artifact(&common.out, &csv, meta)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Minimize {
            problem,
            preset,
            s,
            res,
            out,
            rel_tol,
            seed,
        } => {
            let cfg = quad_cfg(rel_tol);
            let (grid_problem, mut solver) = match (problem, preset) {
                (Some(path), None) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| format!("read {}: {e}", path.display()))?;
                    let value: Value =
                        serde_json::from_str(&text).map_err(|e| format!("parse: {e}"))?;
                    problem_from_json(&value, &cfg).map_err(|e| e.to_string())?
                }
                (None, Some(name)) => {
                    let preset = SweepPreset::parse(&name).map_err(|e| e.to_string())?;
                    let s = s.ok_or("preset problems need --s")?;
                    let (domain, exterior) = preset.geometry().map_err(|e| e.to_string())?;
                    let gp = GridProblem::build(domain, res, exterior, s, &cfg)
                        .map_err(|e| e.to_string())?;
                    (gp, SolverConfig::default())
                }
                _ => return Err("pass exactly one of --problem or --preset".into()),
            };
            solver.seed = seed;
            let result = minimize(&grid_problem, &solver).map_err(|e| e.to_string())?;
            let occupancy = result.occupancy();
            println!(
                "energy = {:.6e}, occupancy = {:.4}, solver = {}, agreeing = {}/{}{}",
                result.energy,
                occupancy,
                result.solver,
                result.restarts_agreeing,
                result.restarts,
                if result.low_confidence {
                    "  [low confidence]"
                } else {
                    ""
                }
            );
            if let Some(path) = out {
                let state: String = result
                    .state
                    .iter()
                    .map(|&b| if b { '1' } else { '0' })
                    .collect();
                let doc = json!({
                    "problem": grid_problem.problem_json(&solver).map_err(|e| e.to_string())?,
                    "version": nlms_core::VERSION,
                    "energy": result.energy,
                    "occupancy": occupancy,
                    "solver": result.solver,
                    "restarts_agreeing": result.restarts_agreeing,
                    "restarts": result.restarts,
                    "low_confidence": result.low_confidence,
                    "seed": result.seed,
                    "state": state,
                    "trace": result.trace,
                });
                std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap())
                    .map_err(|e| format!("write {}: {e}", path.display()))?;
                let pgm_path = path.with_extension("pgm");
                let pgm =
                    state_to_pgm(&grid_problem, &result.state).map_err(|e| e.to_string())?;
                std::fs::write(&pgm_path, pgm)
                    .map_err(|e| format!("write {}: {e}", pgm_path.display()))?;
                eprintln!("wrote {} (+ {})", path.display(), pgm_path.display());
            }
            Ok(if result.low_confidence {
                ExitCode::from(4)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Sweep {
            preset,
            s_list,
            res,
            common,
        } => {
            let preset = SweepPreset::parse(&preset).map_err(|e| e.to_string())?;
            let s_values = parse_s_grid(&s_list)?;
            let cfg = quad_cfg(common.rel_tol);
            let solver = SolverConfig {
                seed: common.seed,
                ..Default::default()
            };
            let table = stickiness_sweep(preset, &s_values, res, &solver, &cfg)
                .map_err(|e| e.to_string())?;
            let csv = table.to_csv();
            let mut meta = meta_base("sweep", common.seed, &cfg);
            meta["s_list"] = json!(s_values);
            meta["preset"] = json!(table.preset);
            meta["alpha_bar"] = json!(table.alpha_bar);
            meta["resolution"] = json!(table.resolution);
            meta["solver"] = minimize::solver_to_json(&solver);
            write_artifact(&common.out, &csv, meta)?;
            let mut low_confidence = false;
            for row in &table.rows {
                low_confidence |= row.low_confidence;
                println!(
                    "s = {:<6} {:<12} occupancy {:.4}  energy {:.6e}{}",
                    row.s,
                    row.classification.name(),
                    row.occupancy,
                    row.energy,
                    if row.delta_clamped {
                        "  [delta clamped]"
                    } else {
                        ""
                    }
                );
            }
            Ok(if low_confidence {
                ExitCode::from(4)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Verify { only } => {
            let results = match only {
                Some(id) => vec![verify::run_one(id)],
                None => verify::run_all(),
            };
            let mut all_pass = true;
            for r in &results {
                println!("{}", r.line());
                all_pass &= r.pass;
            }
            println!(
                "{}/{} criteria passed",
                results.iter().filter(|r| r.pass).count(),
                results.len()
            );
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}
