//! Numerical tolerances shared by every module.

/// Hermiticity check on density matrices.
pub const HERM: f64 = 1e-9;
/// Deviation of the trace (or squared norm) from one.
pub const TRACE: f64 = 1e-9;
/// Generic elementwise agreement of matrices, isometry and completeness checks.
pub const NUM: f64 = 1e-9;
/// Eigenvalues in `(-PSD, 0]` are clipped to zero; anything below is invalid.
pub const PSD: f64 = 1e-10;
/// Slack for entropic identities and inequalities.
pub const ENT: f64 = 1e-8;
/// Eigenvalues at or below this count as zero when purifying.
pub const RANK: f64 = 1e-10;
