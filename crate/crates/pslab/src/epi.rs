//! The spectral mixing theorem for the partial-swap channel and the
//! entropy power inequality it implies.
//!
//! The theorem: the elementwise mixture `t*lambda(rho) + (1-t)*lambda(sigma)`
//! of the sorted input spectra majorizes the output spectrum
//! `lambda(rho *_t sigma)`. Schur concavity of entropy then gives the chain
//!
//! `S(rho *_t sigma) >= sum_j h(t*lambda_j(rho) + (1-t)*lambda_j(sigma))
//!                   >= t*S(rho) + (1-t)*S(sigma)`,
//!
//! whose outer inequality is the entropy power inequality. Equality holds
//! exactly when some orthonormal basis diagonalizes both inputs with the
//! j-th vector carrying the j-th largest eigenvalue of both.

use serde::{Deserialize, Serialize};

use crate::channel::{convolve_explicit, MixingParameter};
use crate::eigen::eigen_descending;
use crate::entropy::{entropy_of_spectrum, von_neumann_entropy};
use crate::error::{Error, Result};
use crate::hermitian::{DensityMatrix, Spectrum};
use crate::majorization::{majorizes, MajorizationVerdict};
use crate::matrix::ComplexMatrix;
use crate::tol;

/// Max inter-cluster entry of sigma in rho's eigenbasis before the pair is
/// declared unaligned. Sits far above roundoff for genuinely commuting
/// pairs and far below the scale of real cross-cluster coupling.
const BLOCK_OFF_DIAG: f64 = 1e-7;

/// Spectral mixing check: does the mixed input spectrum majorize the output
/// spectrum?
pub fn check_theorem1(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    t: MixingParameter,
) -> Result<MajorizationVerdict> {
    let out = convolve_explicit(rho, sigma, t)?;
    let mixed = Spectrum::mix(rho.spectrum(), sigma.spectrum(), t.t())?;
    majorizes(&mixed, out.spectrum())
}

/// Entropy power inequality outcome.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EpiCheck {
    pub holds: bool,
    /// `S(rho *_t sigma) - t*S(rho) - (1-t)*S(sigma)`.
    pub gap: f64,
}

/// Entropy power inequality: output entropy dominates the mixed input
/// entropies.
pub fn check_epi(rho: &DensityMatrix, sigma: &DensityMatrix, t: MixingParameter) -> Result<EpiCheck> {
    let out = convolve_explicit(rho, sigma, t)?;
    let gap = von_neumann_entropy(&out)?
        - t.t() * von_neumann_entropy(rho)?
        - (1.0 - t.t()) * von_neumann_entropy(sigma)?;
    Ok(EpiCheck { holds: gap >= -tol::scaled(tol::ENTROPY_GAP), gap })
}

/// The three entropies linked by the majorization argument.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EntropyChain {
    /// Entropy of the channel output.
    pub s_out: f64,
    /// Entropy of the elementwise spectral mixture.
    pub s_mix: f64,
    /// Weighted average of the input entropies.
    pub s_avg: f64,
}

impl EntropyChain {
    /// `s_out - s_mix`; non-negative by Schur concavity.
    pub fn first_link(&self) -> f64 {
        self.s_out - self.s_mix
    }

    /// `s_mix - s_avg`; non-negative by concavity of the entropy atom.
    pub fn second_link(&self) -> f64 {
        self.s_mix - self.s_avg
    }
}

/// Evaluates all three chain entropies for one pair and mixing weight.
pub fn entropy_chain(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    t: MixingParameter,
) -> Result<EntropyChain> {
    let out = convolve_explicit(rho, sigma, t)?;
    let mixed = Spectrum::mix(rho.spectrum(), sigma.spectrum(), t.t())?;
    Ok(EntropyChain {
        s_out: von_neumann_entropy(&out)?,
        s_mix: entropy_of_spectrum(&mixed)?,
        s_avg: t.t() * von_neumann_entropy(rho)?
            + (1.0 - t.t()) * von_neumann_entropy(sigma)?,
    })
}

/// True iff some orthonormal basis diagonalizes both inputs with the j-th
/// vector carrying the j-th largest eigenvalue of both.
///
/// Decided as: the inputs commute, sigma is block diagonal across the
/// degeneracy clusters of rho's eigenbasis, and the per-cluster spectra of
/// sigma, read in rho's descending cluster order, are globally
/// non-increasing. Within a degenerate cluster of rho any basis works, so
/// only the cluster-level ordering is constrained.
pub fn theorem1_equality_detect(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<bool> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(format!(
            "density dimensions differ: {} vs {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    let comm = ComplexMatrix::commutator(rho.matrix(), sigma.matrix())?;
    if comm.frobenius_norm() > tol::scaled(tol::COMMUTING) {
        return Ok(false);
    }

    let (lam, v) = rho.eigen()?;
    let m_raw = v.adjoint().mul(sigma.matrix())?.mul(&v)?;
    // Symmetrize away the eigenvector roundoff before re-decomposing.
    let m = m_raw.add(&m_raw.adjoint())?.scale(num_complex::Complex64::new(0.5, 0.0));

    let n = rho.dim();
    let cluster_tol = tol::scaled(tol::DEGENERACY_CLUSTER);
    let mut boundaries = vec![0usize];
    for i in 1..n {
        if lam.values()[i - 1] - lam.values()[i] > cluster_tol {
            boundaries.push(i);
        }
    }
    boundaries.push(n);

    let in_same_cluster = |i: usize, j: usize| -> bool {
        boundaries
            .windows(2)
            .any(|w| i >= w[0] && i < w[1] && j >= w[0] && j < w[1])
    };
    for i in 0..n {
        for j in 0..n {
            if !in_same_cluster(i, j) && m[(i, j)].norm() > BLOCK_OFF_DIAG {
                return Ok(false);
            }
        }
    }

    let mut sigma_ordered = Vec::with_capacity(n);
    for w in boundaries.windows(2) {
        let (start, end) = (w[0], w[1]);
        let size = end - start;
        if size == 1 {
            sigma_ordered.push(m[(start, start)].re);
        } else {
            let block = ComplexMatrix::from_fn(size, size, |i, j| m[(start + i, start + j)]);
            let (vals, _) = eigen_descending(&block)?;
            sigma_ordered.extend(vals);
        }
    }
    Ok(sigma_ordered
        .windows(2)
        .all(|w| w[1] - w[0] <= cluster_tol))
}
