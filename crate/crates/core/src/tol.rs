//! Numeric tolerances and iteration limits used across the crate.
//!
//! These are contract values: tests pin behavior at exactly these thresholds,
//! so changing one is an interface change, not a tuning knob.

/// Residual target for the simultaneous root finder, relative to the largest
/// coefficient magnitude.
pub const ROOT_TOL: f64 = 1e-12;

/// Sweep cap for the simultaneous root finder.
pub const ROOT_ITERATION_CAP: usize = 500;

/// Roots closer than this (scaled by `max(1, |z|)`) merge into one cluster.
pub const CLUSTER_TOL: f64 = 1e-6;

/// Power-series coefficients below this are treated as zero when reading
/// multiplicities off an expansion at infinity.
pub const SERIES_TOL: f64 = 1e-8;

/// Half-width of the classification bands around |multiplier| = 0 and 1.
pub const CLASS_TOL: f64 = 1e-9;

/// Maximum root-of-unity order probed when labeling a neutral multiplier
/// as parabolic.
pub const PARABOLIC_MAX_ORDER: u32 = 24;

/// Fixed-point residual allowance, scaled by `1 + |z|`.
pub const FIX_TOL: f64 = 1e-8;

/// Orbits entering this disk around the target count as converged.
pub const EPS_ZERO: f64 = 1e-6;

/// Hard escape radius: beyond this, sustained modulus growth means escape.
pub const R_ESC: f64 = 1e6;

/// Consecutive confirming steps required before declaring escape.
pub const ESCAPE_CONFIRM: u32 = 8;

/// Default orbit iteration budget.
pub const DEFAULT_BUDGET: u32 = 5000;

/// Samples closer than this to a pole are skipped in pointwise comparisons.
pub const POLE_GUARD: f64 = 1e-6;

/// Petal test: required drift coordinate `Re(z^m / delta)` before an orbit
/// counts as inside the attracting sector at infinity.
pub const PETAL_SECTOR_MIN: f64 = 32.0;

/// Petal test: beyond `|z^m| >= PETAL_FAR_FACTOR * |delta|` the per-step
/// drift falls below f64 resolution, so the sector condition alone confirms.
pub const PETAL_FAR_FACTOR: f64 = 1e9;
