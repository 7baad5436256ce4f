//! Error taxonomy shared across the crate.
//!
//! Validation and precondition failures are errors; a mathematical check
//! that runs to completion and reports `holds = false` is not. The CLI
//! maps errors to exit code 2 and failed checks to exit code 1.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("entry ({row},{col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("matrix is not Hermitian: adjoint defect {defect:.3e} exceeds {tol:.3e}")]
    NotHermitian { defect: f64, tol: f64 },

    #[error("operator is not positive semidefinite: eigenvalue {eigenvalue:.6e} below -{tol:.3e}")]
    NotPositive { eigenvalue: f64, tol: f64 },

    #[error("trace {trace:.17} is not 1 within {tol:.3e}")]
    TraceNotOne { trace: f64, tol: f64 },

    #[error("spectrum leaves [0, 1]: eigenvalue {eigenvalue:.17} is out of range beyond {tol:.3e}")]
    NotContraction { eigenvalue: f64, tol: f64 },

    #[error("eigensolver did not converge: off-diagonal residual {residual:.3e} after {sweeps} sweeps")]
    EigenConvergence { residual: f64, sweeps: usize },

    #[error("parameter out of range: {0}")]
    ParameterRange(String),

    #[error("sequence is not non-increasing at position {position}")]
    SpectrumOrder { position: usize },

    #[error("sequence totals differ: {left:.17} vs {right:.17}")]
    TotalMismatch { left: f64, right: f64 },

    #[error("majorization fails at prefix {prefix}: gap {gap:.3e}")]
    NotMajorized { prefix: usize, gap: f64 },

    #[error("witness construction failed: residual {residual:.3e}")]
    WitnessConstruction { residual: f64 },

    #[error("entropy argument {value:.17} outside [0, 1]")]
    EntropyDomain { value: f64 },

    #[error("grade {k} out of range for dimension {d}")]
    GradeRange { k: usize, d: usize },

    #[error("dimension {d} exceeds the supported lift bound {bound}")]
    DimensionBound { d: usize, bound: usize },

    #[error("grid too coarse: dx {dx} exceeds the maximum {max_dx}")]
    GridResolution { dx: f64, max_dx: f64 },

    #[error("quadrature drift {drift:.3e} exceeds {tol:.3e} at output dx {dx}")]
    QuadratureDrift { drift: f64, tol: f64, dx: f64 },

    #[error("invalid grid density: {0}")]
    InvalidDensity(String),

    #[error("degenerate density: variance {variance:.3e} admits no Gaussian match")]
    DegenerateDensity { variance: f64 },

    #[error("field {field}: {message}")]
    JsonShape { field: String, message: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("JSON parse: {0}")]
    JsonParse(#[from] serde_json::Error),
}
