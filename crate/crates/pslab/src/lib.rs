//! Verification lab for the partial-swap channel on density matrices.
//!
//! The channel mixes two quantum states with a tunable weight `t` and an
//! interference term: `rho (*)_t sigma = t*rho + (1-t)*sigma +
//! i*sqrt(t(1-t))*[rho, sigma]`. This crate implements the channel two
//! independent ways, verifies that its output spectrum is majorized by the
//! `t`-mix of the input spectra, derives the entropy power inequality
//! `S(rho (*)_t sigma) >= t*S(rho) + (1-t)*S(sigma)` with equality
//! detection, and exercises the proof machinery behind those facts:
//! the top-eigenvalue bound for non-negative contractions (with its exact
//! operator decomposition), exterior-power lifts turning the bound into
//! Ky Fan prefix-sum inequalities, and doubly stochastic witnesses for
//! every majorization verdict.
//!
//! A classical counterpart on 1-D grid densities checks the Shannon
//! entropy power inequality for the scaled convolution
//! `S(rho (*)_theta sigma) >= cos^2(theta)*S(rho) + sin^2(theta)*S(sigma)`.
//!
//! Entry points:
//! - [`channel`]: swap operator, partial-swap unitary, both channel forms.
//! - [`epi`]: majorization and entropy checks for the quantum inequality.
//! - [`majorization`]: prefix-gap verdicts and doubly stochastic witnesses.
//! - [`exterior`]: antisymmetric lifts and gradewise Ky Fan checks.
//! - [`classical`]: grid densities, scaled convolution, classical checks.
//! - [`report`]: seeded sweeps and the JSON report the CLI emits.
//!
//! The `pslab` binary exposes `sweep`, `check-pair`, and `classical`
//! subcommands over the same report machinery. All check tolerances live
//! in [`tol`] and scale uniformly via the `PSLAB_TOL_OVERRIDE` variable.

pub mod channel;
pub mod classical;
pub mod eigen;
pub mod entropy;
pub mod epi;
pub mod error;
pub mod exterior;
pub mod hermitian;
pub mod jsonio;
pub mod majorization;
pub mod matrix;
pub mod report;
pub mod sample;
pub mod tol;

pub use error::{Error, Result};
