//! Seeded random instances: density matrices, Hermitian operators,
//! non-negative contractions, unitaries, and near-equality pairs.
//!
//! Determinism contract: every sampler derives all randomness from the
//! seed it is given, so identical seeds reproduce bit-identical values.
//! Sweeps derive per-trial seeds with [`derived_seed`].

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::hermitian::{DensityMatrix, HermitianOperator};
use crate::matrix::ComplexMatrix;

/// splitmix64 finalizer; decorrelates structured seed inputs.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Stable per-trial seed for a sweep cell; `role` separates the streams
/// drawn within one cell (0 = rho, 1 = sigma, 2..= auxiliary).
pub fn derived_seed(base: u64, dim: usize, trial: u64, role: u64) -> u64 {
    let mut x = splitmix64(base);
    x = splitmix64(x ^ (dim as u64).wrapping_mul(0xd6e8feb86659fd93));
    x = splitmix64(x ^ trial.wrapping_mul(0xa3ec647659359acd));
    splitmix64(x ^ role)
}

/// The stream cipher generator every sampler draws from.
pub fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Matrix with independent standard complex Gaussian entries.
fn ginibre(rng: &mut ChaCha8Rng, d: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            m.set(i, j, Complex64::new(standard_normal(rng), standard_normal(rng)));
        }
    }
    m
}

/// Hilbert-Schmidt ensemble: `G G* / Tr(G G*)`. Full rank almost surely.
pub fn random_density(seed: u64, d: usize) -> Result<DensityMatrix> {
    if d == 0 {
        return Err(Error::DimensionMismatch("density dimension must be positive".into()));
    }
    let mut rng = rng_from(seed);
    let g = ginibre(&mut rng, d);
    let gg = g.mul(&g.adjoint())?;
    let trace = gg.trace().re;
    DensityMatrix::new(gg.scale(Complex64::new(1.0 / trace, 0.0)))
}

/// Gaussian Hermitian matrix `(M + M*) / 2` with O(1) entries.
pub fn random_hermitian(rng: &mut ChaCha8Rng, d: usize) -> Result<HermitianOperator> {
    let m = ginibre(rng, d);
    HermitianOperator::new(m.add(&m.adjoint())?.scale(Complex64::new(0.5, 0.0)))
}

/// Hermitian operator with spectrum affinely mapped into a random
/// sub-interval of [0, 1]; the extremes are attained exactly.
pub fn random_contraction(seed: u64, d: usize) -> Result<HermitianOperator> {
    if d == 0 {
        return Err(Error::DimensionMismatch("contraction dimension must be positive".into()));
    }
    let mut rng = rng_from(seed);
    let h = random_hermitian(&mut rng, d)?;
    let lo: f64 = rng.random_range(0.0..0.3);
    let hi: f64 = rng.random_range(0.7..1.0);
    let spectrum = h.spectrum()?;
    let top = spectrum.values()[0];
    let bottom = *spectrum.values().last().expect("non-empty");
    if top - bottom < 1e-9 {
        return Ok(HermitianOperator::from_real_diag(&vec![lo; d]));
    }
    let scale = (hi - lo) / (top - bottom);
    let shifted = h
        .matrix()
        .sub(&ComplexMatrix::identity(d).scale(Complex64::new(bottom, 0.0)))?
        .scale(Complex64::new(scale, 0.0))
        .add(&ComplexMatrix::identity(d).scale(Complex64::new(lo, 0.0)))?;
    HermitianOperator::new(shifted)
}

/// Haar-like unitary: eigenvector matrix of a random Hermitian operator.
pub fn random_unitary(seed: u64, d: usize) -> Result<ComplexMatrix> {
    let mut rng = rng_from(seed);
    let h = random_hermitian(&mut rng, d)?;
    Ok(h.eigen()?.1)
}

/// `exp(i * epsilon * H)` for Hermitian `H`, via its eigendecomposition.
pub fn unitary_phase(h: &HermitianOperator, epsilon: f64) -> Result<ComplexMatrix> {
    let (spectrum, v) = h.eigen()?;
    let phases: Vec<Complex64> = spectrum
        .values()
        .iter()
        .map(|&w| Complex64::from_polar(1.0, epsilon * w))
        .collect();
    let n = h.dim();
    let mut d = ComplexMatrix::zeros(n, n);
    for (i, &p) in phases.iter().enumerate() {
        d.set(i, i, p);
    }
    v.mul(&d)?.mul(&v.adjoint())
}

/// Near-equality pair: `sigma = V rho V*` with `V = exp(i*epsilon*H)` for a
/// spectral-radius-1 Hermitian `H`. At `epsilon = 0` the pair is equal.
pub fn perturbed_pair(seed: u64, d: usize, epsilon: f64) -> Result<(DensityMatrix, DensityMatrix)> {
    let rho = random_density(splitmix64(seed), d)?;
    let mut rng = rng_from(splitmix64(seed ^ 0x517cc1b727220a95));
    let h = random_hermitian(&mut rng, d)?;
    let radius = h
        .spectrum()?
        .values()
        .iter()
        .fold(0.0f64, |acc, &w| acc.max(w.abs()))
        .max(1e-12);
    let normalized = HermitianOperator::new(h.matrix().scale(Complex64::new(1.0 / radius, 0.0)))?;
    let v = unitary_phase(&normalized, epsilon)?;
    let sigma = DensityMatrix::new(v.mul(rho.matrix())?.mul(&v.adjoint())?)?;
    Ok((rho, sigma))
}

/// Pair diagonal in one shared random eigenbasis with aligned (sorted)
/// spectra; the equality case of the majorization theorem.
pub fn random_aligned_pair(seed: u64, d: usize) -> Result<(DensityMatrix, DensityMatrix)> {
    let v = random_unitary(splitmix64(seed ^ 0x2545f4914f6cdd1d), d)?;
    let mut rng = rng_from(splitmix64(seed ^ 0x9e6c63d0876a9a99));
    let rho = conjugated_diag(&v, &random_simplex_descending(&mut rng, d))?;
    let sigma = conjugated_diag(&v, &random_simplex_descending(&mut rng, d))?;
    Ok((rho, sigma))
}

/// Sorted (descending) uniform sample from the probability simplex.
pub fn random_simplex_descending(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..d).map(|_| -f64::ln(rng.random_range(0.0f64..1.0).max(1e-300))).collect();
    let total: f64 = w.iter().sum();
    for x in &mut w {
        *x /= total;
    }
    w.sort_by(|a, b| b.partial_cmp(a).expect("finite weights"));
    w
}

fn conjugated_diag(v: &ComplexMatrix, weights: &[f64]) -> Result<DensityMatrix> {
    DensityMatrix::new(v.mul(&ComplexMatrix::diag(weights))?.mul(&v.adjoint())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ComplexMatrix;
    use crate::tol;

    #[test]
    fn density_is_deterministic() {
        let a = random_density(42, 4).unwrap();
        let b = random_density(42, 4).unwrap();
        assert_eq!(a.matrix(), b.matrix());
    }

    #[test]
    fn different_seeds_differ() {
        let a = random_density(1, 3).unwrap();
        let b = random_density(2, 3).unwrap();
        assert!(a.matrix().max_abs_diff(b.matrix()).unwrap() > 1e-6);
    }

    #[test]
    fn one_dimensional_density_is_one() {
        let rho = random_density(9, 1).unwrap();
        assert!((rho.matrix()[(0, 0)].re - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn density_rejects_dimension_zero() {
        assert!(random_density(1, 0).is_err());
    }

    #[test]
    fn spectra_live_on_the_simplex() {
        for seed in 0..50 {
            let rho = random_density(seed, 4).unwrap();
            let s = rho.spectrum();
            assert!((s.sum() - 1.0).abs() <= 1e-10);
            assert!(s.values().iter().all(|&v| (-1e-12..=1.0 + 1e-12).contains(&v)));
        }
    }

    #[test]
    fn contraction_spectra_sit_inside_unit_interval() {
        for seed in 0..30 {
            let a = random_contraction(seed, 5).unwrap();
            let s = a.contraction_spectrum().unwrap();
            assert!(s.values()[0] <= 1.0 + 1e-12);
            assert!(*s.values().last().unwrap() >= -1e-12);
        }
    }

    #[test]
    fn random_unitary_is_unitary() {
        let u = random_unitary(7, 4).unwrap();
        let gram = u.adjoint().mul(&u).unwrap();
        assert!(gram.max_abs_diff(&ComplexMatrix::identity(4)).unwrap() <= tol::UNITARITY);
    }

    #[test]
    fn unitary_phase_is_unitary_and_trivial_at_zero() {
        let mut rng = super::rng_from(11);
        let h = random_hermitian(&mut rng, 3).unwrap();
        let v = unitary_phase(&h, 0.0).unwrap();
        assert!(v.max_abs_diff(&ComplexMatrix::identity(3)).unwrap() <= 1e-12);
        let w = unitary_phase(&h, 0.01).unwrap();
        let gram = w.adjoint().mul(&w).unwrap();
        assert!(gram.max_abs_diff(&ComplexMatrix::identity(3)).unwrap() <= 1e-12);
    }

    #[test]
    fn perturbed_pair_is_close_but_distinct() {
        let (rho, sigma) = perturbed_pair(5, 3, 1e-2).unwrap();
        let gap = rho.matrix().max_abs_diff(sigma.matrix()).unwrap();
        assert!(gap > 1e-6, "perturbation too small: {gap}");
        assert!(gap < 0.1, "perturbation too large: {gap}");
    }

    #[test]
    fn aligned_pair_commutes() {
        let (rho, sigma) = random_aligned_pair(3, 4).unwrap();
        let comm = ComplexMatrix::commutator(rho.matrix(), sigma.matrix()).unwrap();
        assert!(comm.frobenius_norm() <= 1e-12);
    }

    #[test]
    fn derived_seed_separates_roles() {
        let a = derived_seed(1, 2, 3, 0);
        let b = derived_seed(1, 2, 3, 1);
        let c = derived_seed(1, 2, 4, 0);
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_eq!(a, derived_seed(1, 2, 3, 0));
    }
}
