//! Numerical toolkit for nonlocal minimal surfaces in the strongly nonlocal
//! (small fractional parameter) regime.
//!
//! The crate provides
//!
//! * algebraic set descriptions with decidable membership ([`geom`]),
//! * principal-value quadrature for the fractional mean curvature and
//!   analytic tail integrals ([`quad`]),
//! * the contribution from infinity `alpha(E)` together with its calculus
//!   and asymptotic extrapolation ([`alpha`]),
//! * fractional mean curvature scans, the graph formula and continuity
//!   probes ([`curvature`]),
//! * closed-form constants (`omega_n`, `beta`, `delta_s`), the uniform
//!   positive-curvature check and the sign-change root finder
//!   ([`thresholds`]),
//! * a rasterized fractional-perimeter minimizer with prescribed exterior
//!   data and the stickiness/emptiness classifiers ([`minimize`]).
//!
//! All computations are deterministic given a configuration; randomized
//! components (the Monte-Carlo oracle and the annealing solver) take
//! explicit seeds.

pub mod alpha;
pub mod curvature;
pub mod geom;
pub mod minimize;
pub mod quad;
pub mod thresholds;
pub mod util;
pub mod verify;

mod error;

pub use error::{Error, Result};

/// Library version embedded in every output artifact.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
