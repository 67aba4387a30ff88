//! Tolerance constants shared by the numerical kernels and their tests.

/// Hermiticity tolerance and the negative-eigenvalue clamp window.
pub const EPS_HERM: f64 = 1e-12;

/// Normalization checks and the rounding window for clamping derived
/// quantities (concurrences, Heron factors) into range.
pub const EPS_NUM: f64 = 1e-10;

/// Agreement threshold for cross-checks between independent routes.
pub const EPS_TEST: f64 = 1e-9;

/// Eigenvalues of a density matrix below this fraction of the largest one are
/// treated as exact zeros when forming its square root for the concurrence.
pub const RANK_CUTOFF: f64 = 1e-13;

/// Amplitudes whose largest modulus is at or below this are a zero state.
pub const ZERO_AMPLITUDE: f64 = 1e-15;
