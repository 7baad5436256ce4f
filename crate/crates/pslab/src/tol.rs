//! Mathematical tolerances, pinned in one place.
//!
//! Every check passes its base tolerance through [`scaled`], which applies
//! the multiplicative factor from the `PSLAB_TOL_OVERRIDE` environment
//! variable (default 1, read once per process). Structural limits such as
//! [`MAX_LIFT_DIM`] and [`MAX_GRID_DX`] are not tolerances and never scale.

use std::sync::OnceLock;

/// Per-entry adjoint defect allowed in a Hermitian operator.
pub const HERMITICITY: f64 = 1e-12;
/// Eigenvalue floor for positive semidefiniteness.
pub const PSD: f64 = 1e-10;
/// Allowed distance of a density-matrix trace from 1.
pub const TRACE: f64 = 1e-10;
/// Per-entry error allowed in V diag(w) V* eigendecomposition round trips.
pub const EIGEN_RECONSTRUCTION: f64 = 1e-9;
/// Per-entry agreement between the two channel constructions.
pub const CHANNEL_AGREEMENT: f64 = 1e-11;
/// Per-entry defect allowed in U U* = identity.
pub const UNITARITY: f64 = 1e-12;
/// Slack in the top-eigenvalue bound for the contraction channel.
pub const TOP_BOUND: f64 = 1e-9;
/// Max-entry residual of the exact operator-decomposition identity.
pub const IDENTITY_RESIDUAL: f64 = 1e-11;
/// Gap below the top bound at which a pair counts as an equality case.
pub const EQUALITY_GAP: f64 = 1e-9;
/// Eigenvector residual confirming an equality witness.
pub const EQUALITY_RESIDUAL: f64 = 1e-8;
/// Absolute tolerance on majorization prefix gaps of unit-total spectra.
pub const MAJORIZATION: f64 = 1e-9;
/// Row/column-sum and reconstruction tolerance for stochastic witnesses.
pub const WITNESS: f64 = 1e-9;
/// Entry floor for stochastic witnesses.
pub const WITNESS_ENTRY: f64 = 1e-12;
/// Floor on entropy gaps in the quantum inequality and its chain links.
pub const ENTROPY_GAP: f64 = 1e-8;
/// Floor on entropy gaps implied directly by a majorization verdict.
pub const SCHUR_GAP: f64 = 1e-9;
/// Commutator norm below which two operators count as commuting.
pub const COMMUTING: f64 = 1e-10;
/// Eigenvalue spacing that merges into one degenerate cluster.
pub const DEGENERACY_CLUSTER: f64 = 1e-8;
/// Residual allowed in top-eigenvalue-equals-prefix-sum lift checks.
pub const LIFT_TOP_SUM: f64 = 1e-8;
/// Max-entry residual allowed in the commutator lift identity.
pub const LIFT_COMMUTATOR: f64 = 1e-10;
/// Per-entry residual allowed in lift linearity.
pub const LIFT_LINEARITY: f64 = 1e-12;
/// Upper slack on lifted density-matrix spectra beyond 1.
pub const LIFT_CONTRACTION: f64 = 1e-9;
/// Allowed distance of a grid density's total mass from 1.
pub const GRID_MASS: f64 = 1e-6;
/// Tolerance on mean/variance transport through the scaled convolution.
pub const MOMENT_TRANSPORT: f64 = 1e-3;
/// Quadrature tolerance on grid entropies.
pub const ENTROPY_QUADRATURE: f64 = 1e-3;
/// Floor on the classical entropy power gap (quadrature-limited).
pub const CLASSICAL_GAP: f64 = 5e-3;
/// Pre-renormalization mass drift allowed in the scaled convolution.
pub const QUADRATURE_DRIFT: f64 = 1e-3;

/// Coarsest grid spacing the convolution quadrature accepts.
pub const MAX_GRID_DX: f64 = 0.02;
/// Largest ambient dimension accepted by the exterior-power lift.
pub const MAX_LIFT_DIM: usize = 10;

/// Environment variable holding the global tolerance multiplier.
pub const OVERRIDE_VAR: &str = "PSLAB_TOL_OVERRIDE";

/// Multiplier applied to every mathematical tolerance.
///
/// Invalid or non-positive values fall back to 1; the CLI warns about them
/// separately so the library stays silent.
pub fn override_factor() -> f64 {
    static FACTOR: OnceLock<f64> = OnceLock::new();
    *FACTOR.get_or_init(|| parse_override(std::env::var(OVERRIDE_VAR).ok().as_deref()))
}

/// Parses an override value, falling back to 1 when absent or invalid.
pub fn parse_override(raw: Option<&str>) -> f64 {
    match raw.map(str::trim).filter(|s| !s.is_empty()).map(str::parse::<f64>) {
        Some(Ok(f)) if f.is_finite() && f > 0.0 => f,
        _ => 1.0,
    }
}

/// A base tolerance scaled by the process-wide override factor.
pub fn scaled(base: f64) -> f64 {
    base * override_factor()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_positive_floats() {
        assert_eq!(parse_override(Some("2.5")), 2.5);
        assert_eq!(parse_override(Some(" 1e-3 ")), 1e-3);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert_eq!(parse_override(None), 1.0);
        assert_eq!(parse_override(Some("")), 1.0);
        assert_eq!(parse_override(Some("abc")), 1.0);
        assert_eq!(parse_override(Some("-2")), 1.0);
        assert_eq!(parse_override(Some("0")), 1.0);
        assert_eq!(parse_override(Some("inf")), 1.0);
        assert_eq!(parse_override(Some("NaN")), 1.0);
    }
}
