//! Von Neumann entropy of spectra and density matrices.
//!
//! Entropy is Schur concave: if `lambda` majorizes `kappa` then
//! `H(lambda) <= H(kappa)`. That bridge turns spectral majorization
//! statements into entropy inequalities.

use crate::error::{Error, Result};
use crate::hermitian::{DensityMatrix, Spectrum};
use crate::majorization::majorizes;
use crate::tol;

/// `-p ln p`, extended by continuity at zero.
///
/// Accepts the slack the eigensolver is allowed to leave: values in
/// `[-psd_tol, 0)` clip to zero, values slightly above one clamp down.
/// Anything further out is a domain error.
pub fn h_entropy_atom(p: f64) -> Result<f64> {
    let psd_tol = tol::scaled(tol::PSD);
    if !p.is_finite() || p < -psd_tol || p > 1.0 + 1e-12 {
        return Err(Error::EntropyDomain { value: p });
    }
    let p = p.clamp(0.0, 1.0);
    if p == 0.0 {
        Ok(0.0)
    } else {
        Ok(-p * p.ln())
    }
}

/// Entropy of a probability-like spectrum (natural log).
pub fn entropy_of_spectrum(spectrum: &Spectrum) -> Result<f64> {
    spectrum.values().iter().map(|&p| h_entropy_atom(p)).sum()
}

/// Von Neumann entropy of a density matrix, from its cached spectrum.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    entropy_of_spectrum(rho.spectrum())
}

/// Schur concavity check: requires `lambda` to majorize `kappa`, then
/// reports whether `H(kappa) - H(lambda) >= -tol` along with the gap.
pub fn entropy_majorization_check(lambda: &Spectrum, kappa: &Spectrum) -> Result<(bool, f64)> {
    let verdict = majorizes(lambda, kappa)?;
    if !verdict.holds {
        let (prefix, gap) = verdict
            .prefix_gaps
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).expect("finite gaps"))
            .map(|(i, &g)| (i, g))
            .expect("non-empty spectra");
        return Err(Error::NotMajorized { prefix, gap });
    }
    let gap = entropy_of_spectrum(kappa)? - entropy_of_spectrum(lambda)?;
    Ok((gap >= -tol::scaled(tol::SCHUR_GAP), gap))
}
