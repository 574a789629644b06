//! Exhaustive and annealing solvers for the discrete perimeter.

use super::GridProblem;
use crate::util::{self, SeededRng};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverMode {
    /// Exhaustive for small instances, anneal otherwise.
    Auto,
    Exhaustive,
    Anneal,
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub mode: SolverMode,
    pub restarts: usize,
    pub sweeps: usize,
    pub cooling: f64,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            mode: SolverMode::Auto,
            restarts: 8,
            sweeps: 200,
            cooling: 0.995,
            seed: 0x5715_c4,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MinimizeResult {
    pub state: Vec<bool>,
    pub energy: f64,
    pub solver: &'static str,
    /// How many restarts reached the best energy within 1e-9 relative
    /// (equals `restarts` for the exhaustive solver).
    pub restarts_agreeing: usize,
    pub restarts: usize,
    /// Energy of the best run per sweep.
    pub trace: Vec<(usize, f64)>,
    pub low_confidence: bool,
    pub seed: u64,
}

impl MinimizeResult {
    pub fn occupancy(&self) -> f64 {
        if self.state.is_empty() {
            return 0.0;
        }
        self.state.iter().filter(|&&b| b).count() as f64 / self.state.len() as f64
    }
}

/// Cell count at or below which the exhaustive solver is used in Auto
/// mode.
pub const EXHAUSTIVE_LIMIT: usize = 20;

pub fn minimize(problem: &GridProblem, config: &SolverConfig) -> Result<MinimizeResult> {
    let m = problem.cell_count();
    match config.mode {
        SolverMode::Exhaustive => exhaustive(problem, config),
        SolverMode::Anneal => anneal(problem, config),
        SolverMode::Auto => {
            if m <= EXHAUSTIVE_LIMIT {
                exhaustive(problem, config)
            } else {
                anneal(problem, config)
            }
        }
    }
}

/// Gray-code enumeration of every state with incremental energy updates.
fn exhaustive(problem: &GridProblem, config: &SolverConfig) -> Result<MinimizeResult> {
    let m = problem.cell_count();
    if m > 24 {
        return Err(Error::InvalidParameter(format!(
            "exhaustive solver limited to 24 cells, instance has {m}"
        )));
    }
    let mut state = vec![false; m];
    let mut fields = problem.flip_fields(&state);
    let mut energy = problem.discrete_perimeter(&state);
    let mut best_energy = energy;
    let mut best_mask: u64 = 0;
    let mut mask: u64 = 0;
    let total: u64 = 1u64 << m;
    for k in 1..total {
        // Gray code: bit to flip is the lowest set bit of k.
        let bit = k.trailing_zeros() as usize;
        energy += problem.flip_delta(&state, &fields, bit);
        let new = !state[bit];
        state[bit] = new;
        problem.apply_flip(&mut fields, bit, new);
        mask ^= 1u64 << bit;
        if energy < best_energy {
            best_energy = energy;
            best_mask = mask;
        }
    }
    let best_state: Vec<bool> = (0..m).map(|i| best_mask >> i & 1 == 1).collect();
    // Canonical energy from scratch.
    let energy = problem.discrete_perimeter(&best_state);
    Ok(MinimizeResult {
        state: best_state,
        energy,
        solver: "exhaustive",
        restarts_agreeing: config.restarts,
        restarts: config.restarts,
        trace: vec![(0, energy)],
        low_confidence: false,
        seed: config.seed,
    })
}

struct AnnealRun {
    state: Vec<bool>,
    energy: f64,
    trace: Vec<(usize, f64)>,
    seed: u64,
}

/// Seeded restarts of geometric-cooling Metropolis sweeps followed by
/// single-flip descent to local minimality.
fn anneal(problem: &GridProblem, config: &SolverConfig) -> Result<MinimizeResult> {
    if config.restarts == 0 {
        return Err(Error::InvalidParameter("anneal needs restarts >= 1".into()));
    }
    let seeds: Vec<u64> = (0..config.restarts)
        .map(|k| config.seed.wrapping_add(k as u64))
        .collect();
    let runs: Vec<AnnealRun> = util::par_map(&seeds, |&seed| anneal_once(problem, config, seed));

    // Deterministic merge by (energy, seed).
    let best = runs
        .iter()
        .min_by(|a, b| {
            (a.energy, a.seed)
                .partial_cmp(&(b.energy, b.seed))
                .unwrap()
        })
        .unwrap();
    let best_energy = problem.discrete_perimeter(&best.state);
    let agreeing = runs
        .iter()
        .filter(|r| (r.energy - best.energy).abs() <= 1e-9 * best.energy.abs().max(1.0))
        .count();
    Ok(MinimizeResult {
        state: best.state.clone(),
        energy: best_energy,
        solver: "anneal+descent",
        restarts_agreeing: agreeing,
        restarts: config.restarts,
        trace: best.trace.clone(),
        low_confidence: agreeing < 2,
        seed: config.seed,
    })
}

fn anneal_once(problem: &GridProblem, config: &SolverConfig, seed: u64) -> AnnealRun {
    let m = problem.cell_count();
    let mut rng = SeededRng::new(seed);
    let mut state: Vec<bool> = (0..m).map(|_| rng.uniform() < 0.5).collect();
    let mut fields = problem.flip_fields(&state);
    let mut energy = problem.discrete_perimeter(&state);

    // Initial temperature: median |single-flip delta| of the random state.
    let mut deltas: Vec<f64> = (0..m)
        .map(|i| problem.flip_delta(&state, &fields, i).abs())
        .collect();
    deltas.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut temperature = deltas[m / 2].max(1e-12);

    let mut trace = Vec::with_capacity(config.sweeps + 1);
    trace.push((0, energy));
    for sweep in 0..config.sweeps {
        for _ in 0..m {
            let i = rng.index(m);
            let delta = problem.flip_delta(&state, &fields, i);
            if delta < 0.0 || rng.uniform() < (-delta / temperature).exp() {
                let new = !state[i];
                state[i] = new;
                problem.apply_flip(&mut fields, i, new);
                energy += delta;
            }
        }
        temperature *= config.cooling;
        trace.push((sweep + 1, energy));
    }

    // Exhaustive single-flip descent.
    loop {
        let mut improved = false;
        for i in 0..m {
            let delta = problem.flip_delta(&state, &fields, i);
            if delta < -1e-13 {
                let new = !state[i];
                state[i] = new;
                problem.apply_flip(&mut fields, i, new);
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    // Refresh against drift before comparing runs.
    let energy = problem.discrete_perimeter(&state);
    trace.push((config.sweeps + 1, energy));
    AnnealRun {
        state,
        energy,
        trace,
        seed,
    }
}
