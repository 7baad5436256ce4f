//! Validated operator types: Hermitian operators, density matrices, and
//! non-increasing spectra.
//!
//! Construction is validation. A [`HermitianOperator`] certifies a bounded
//! adjoint defect; a [`DensityMatrix`] additionally certifies positive
//! semidefiniteness and unit trace, and caches its spectrum since every
//! downstream check consumes it.

use crate::eigen;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, MatrixWire};
use crate::tol;

/// Real eigenvalues (or any totals-carrying sequence) in non-increasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::DimensionMismatch("spectrum must be non-empty".into()));
        }
        for (i, w) in values.windows(2).enumerate() {
            if !(w[0].is_finite() && w[1].is_finite()) || w[0] < w[1] {
                return Err(Error::SpectrumOrder { position: i + 1 });
            }
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Elementwise `t*a + (1-t)*b`; stays non-increasing.
    pub fn mix(a: &Self, b: &Self, t: f64) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch(format!(
                "cannot mix spectra of lengths {} and {}",
                a.len(),
                b.len()
            )));
        }
        let values = a
            .values
            .iter()
            .zip(&b.values)
            .map(|(x, y)| t * x + (1.0 - t) * y)
            .collect();
        Self::new(values)
    }
}

/// Square complex matrix equal to its adjoint within tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    mat: ComplexMatrix,
}

impl HermitianOperator {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "Hermitian operator must be square, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        if !mat.all_finite() {
            return Err(Error::DimensionMismatch("matrix has non-finite entries".into()));
        }
        let defect = mat.hermiticity_defect();
        let tol = tol::scaled(tol::HERMITICITY);
        if defect > tol {
            return Err(Error::NotHermitian { defect, tol });
        }
        Ok(Self { mat })
    }

    pub fn from_real_diag(values: &[f64]) -> Self {
        Self { mat: ComplexMatrix::diag(values) }
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn eigen(&self) -> Result<(Spectrum, ComplexMatrix)> {
        let (values, vectors) = eigen::eigen_descending(&self.mat)?;
        Ok((Spectrum::new(values)?, vectors))
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        Ok(self.eigen()?.0)
    }

    pub fn top_eigenvalue(&self) -> Result<f64> {
        Ok(self.spectrum()?.values()[0])
    }

    /// Spectrum, after certifying it lies in `[0, 1]` within tolerance.
    pub fn contraction_spectrum(&self) -> Result<Spectrum> {
        let spectrum = self.spectrum()?;
        let tol = tol::scaled(tol::PSD);
        for &v in spectrum.values() {
            if !(-tol..=1.0 + tol).contains(&v) {
                return Err(Error::NotContraction { eigenvalue: v, tol });
            }
        }
        Ok(spectrum)
    }
}

/// Positive semidefinite Hermitian operator with unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    op: HermitianOperator,
    spectrum: Spectrum,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let op = HermitianOperator::new(mat)?;
        let spectrum = op.spectrum()?;
        let psd_tol = tol::scaled(tol::PSD);
        let smallest = *spectrum.values().last().expect("spectrum is non-empty");
        if smallest < -psd_tol {
            return Err(Error::NotPositive { eigenvalue: smallest, tol: psd_tol });
        }
        let trace = op.matrix().trace().re;
        let trace_tol = tol::scaled(tol::TRACE);
        if (trace - 1.0).abs() > trace_tol {
            return Err(Error::TraceNotOne { trace, tol: trace_tol });
        }
        Ok(Self { op, spectrum })
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.op.matrix()
    }

    pub fn hermitian(&self) -> &HermitianOperator {
        &self.op
    }

    /// Eigenvalues cached at construction, non-increasing.
    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn eigen(&self) -> Result<(Spectrum, ComplexMatrix)> {
        self.op.eigen()
    }

    pub fn to_wire(&self) -> MatrixWire {
        self.matrix().to_wire()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::new(ComplexMatrix::from_json(text)?)
    }

    pub fn read_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| Error::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn spectrum_rejects_increasing() {
        assert!(Spectrum::new(vec![0.2, 0.8]).is_err());
        assert!(Spectrum::new(vec![0.8, 0.2]).is_ok());
    }

    #[test]
    fn spectrum_mix_is_elementwise() {
        let a = Spectrum::new(vec![1.0, 0.0]).unwrap();
        let b = Spectrum::new(vec![0.6, 0.4]).unwrap();
        let m = Spectrum::mix(&a, &b, 0.25).unwrap();
        assert!((m.values()[0] - 0.7).abs() <= 1e-15);
        assert!((m.values()[1] - 0.3).abs() <= 1e-15);
    }

    #[test]
    fn density_accepts_the_worked_output() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(0.75, 0.0), c(0.25, 0.25)],
            vec![c(0.25, -0.25), c(0.25, 0.0)],
        ])
        .unwrap();
        let rho = DensityMatrix::new(m).unwrap();
        assert_eq!(rho.dim(), 2);
        assert!((rho.spectrum().sum() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn density_rejects_negative_eigenvalue() {
        let m = ComplexMatrix::diag(&[1.5, -0.5]);
        assert!(matches!(DensityMatrix::new(m), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn density_rejects_wrong_trace() {
        let m = ComplexMatrix::diag(&[0.7, 0.7]);
        assert!(matches!(DensityMatrix::new(m), Err(Error::TraceNotOne { .. })));
    }

    #[test]
    fn density_rejects_non_hermitian() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(0.5, 0.0), c(0.5, 0.0)],
            vec![c(0.0, 0.0), c(0.5, 0.0)],
        ])
        .unwrap();
        assert!(matches!(DensityMatrix::new(m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn one_dimensional_density() {
        let rho = DensityMatrix::new(ComplexMatrix::diag(&[1.0])).unwrap();
        assert_eq!(rho.spectrum().values(), &[1.0]);
    }

    #[test]
    fn contraction_spectrum_gates_range() {
        let ok = HermitianOperator::from_real_diag(&[1.0, 0.5, 0.0]);
        assert!(ok.contraction_spectrum().is_ok());
        let too_big = HermitianOperator::from_real_diag(&[1.5, 0.0]);
        assert!(matches!(too_big.contraction_spectrum(), Err(Error::NotContraction { .. })));
        let negative = HermitianOperator::from_real_diag(&[0.5, -0.2]);
        assert!(negative.contraction_spectrum().is_err());
    }
}
