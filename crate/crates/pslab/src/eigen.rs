//! Cyclic Jacobi eigendecomposition for Hermitian matrices.
//!
//! Each rotation annihilates one off-diagonal pair (p, q) with a complex
//! plane rotation; full sweeps repeat until the off-diagonal Frobenius norm
//! falls below `1e-13` times the input norm. Eigenpairs are returned in
//! non-increasing eigenvalue order with a deterministic tie-break: every
//! eigenvector is phase-normalized so its largest-modulus component is real
//! positive, and exactly equal eigenvalues are ordered lexicographically by
//! rounded eigenvector entries.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::tol;

/// Off-diagonal Frobenius norm relative to the input norm at convergence.
const RELATIVE_RESIDUAL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;
/// Decimal places kept when eigenvector entries break eigenvalue ties.
const TIE_BREAK_DECIMALS: f64 = 1e12;

/// Eigenvalues in non-increasing order with eigenvectors as the columns of
/// a unitary matrix, `H = V diag(values) V*`.
pub fn eigen_descending(h: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    let defect = h.hermiticity_defect();
    let herm_tol = tol::scaled(tol::HERMITICITY);
    if defect > herm_tol {
        return Err(Error::NotHermitian { defect, tol: herm_tol });
    }

    let n = h.dim();
    let input_norm = h.frobenius_norm();
    let mut a: Vec<Complex64> = h.data().to_vec();
    let mut v: Vec<Complex64> = ComplexMatrix::identity(n).data().to_vec();

    if input_norm > 0.0 {
        let target = RELATIVE_RESIDUAL * input_norm;
        let mut converged = false;
        let mut residual = off_diagonal_norm(&a, n);
        for _ in 0..MAX_SWEEPS {
            if residual <= target {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    rotate(&mut a, &mut v, n, p, q);
                }
            }
            residual = off_diagonal_norm(&a, n);
        }
        if !converged && residual > target {
            return Err(Error::EigenConvergence { residual, sweeps: MAX_SWEEPS });
        }
    }

    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    let mut columns: Vec<Vec<Complex64>> =
        (0..n).map(|j| (0..n).map(|i| v[i * n + j]).collect()).collect();
    for col in &mut columns {
        canonical_phase(col);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        values[j]
            .partial_cmp(&values[i])
            .expect("eigenvalues are finite")
            .then_with(|| lexicographic(&columns[j], &columns[i]))
    });
    values = order.iter().map(|&i| values[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| columns[order[j]][i]);
    Ok((values, vectors))
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[i * n + j].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One complex Jacobi rotation zeroing the (p, q) entry.
///
/// With `gamma = a[p][q] = |gamma| e^{i phi}` and real diagonal entries
/// `alpha, beta`, the rotation angle satisfies `t^2 - 2*tau*t - 1 = 0`,
/// `tau = (beta - alpha) / (2|gamma|)`; the smaller-magnitude root keeps
/// the rotation closest to the identity.
fn rotate(a: &mut [Complex64], v: &mut [Complex64], n: usize, p: usize, q: usize) {
    let gamma = a[p * n + q];
    let abs_g = gamma.norm();
    if abs_g <= 1e-300 {
        return;
    }
    let phase = gamma / abs_g;
    let alpha = a[p * n + p].re;
    let beta = a[q * n + q].re;
    let tau = (beta - alpha) / (2.0 * abs_g);
    let t = -tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let sp = phase * s;
    let spc = phase.conj() * s;
    // Rows: A <- R* A with R_pp = c, R_pq = -s e^{i phi}, R_qp = s e^{-i phi}, R_qq = c.
    for j in 0..n {
        let ap = a[p * n + j];
        let aq = a[q * n + j];
        a[p * n + j] = c * ap + sp * aq;
        a[q * n + j] = -spc * ap + c * aq;
    }
    // Columns: A <- A R, and the eigenvector accumulator V <- V R.
    for i in 0..n {
        let ap = a[i * n + p];
        let aq = a[i * n + q];
        a[i * n + p] = c * ap + spc * aq;
        a[i * n + q] = -sp * ap + c * aq;
        let vp = v[i * n + p];
        let vq = v[i * n + q];
        v[i * n + p] = c * vp + spc * vq;
        v[i * n + q] = -sp * vp + c * vq;
    }
    // The rotation is built to zero this pair exactly; flush roundoff.
    a[p * n + q] = Complex64::ZERO;
    a[q * n + p] = Complex64::ZERO;
    a[p * n + p] = Complex64::new(a[p * n + p].re, 0.0);
    a[q * n + q] = Complex64::new(a[q * n + q].re, 0.0);
}

/// Rotates a vector so its largest-modulus component is real positive.
fn canonical_phase(col: &mut [Complex64]) {
    let mut best = 0usize;
    let mut best_norm = 0.0f64;
    for (i, z) in col.iter().enumerate() {
        let nz = z.norm();
        if nz > best_norm {
            best_norm = nz;
            best = i;
        }
    }
    if best_norm == 0.0 {
        return;
    }
    let phase = col[best] / best_norm;
    let rot = phase.conj();
    for z in col.iter_mut() {
        *z *= rot;
    }
}

fn lexicographic(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    let round = |x: f64| (x * TIE_BREAK_DECIMALS).round();
    for (za, zb) in a.iter().zip(b) {
        for (xa, xb) in [(za.re, zb.re), (za.im, zb.im)] {
            match round(xa).partial_cmp(&round(xb)).expect("entries are finite") {
                std::cmp::Ordering::Equal => continue,
                other => return other,
            }
        }
    }
    std::cmp::Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn reconstruction_error(h: &ComplexMatrix, values: &[f64], v: &ComplexMatrix) -> f64 {
        let lambda = ComplexMatrix::diag(values);
        let rebuilt = v.mul(&lambda).unwrap().mul(&v.adjoint()).unwrap();
        rebuilt.max_abs_diff(h).unwrap()
    }

    #[test]
    fn diagonal_matrix_sorts_descending() {
        let h = ComplexMatrix::diag(&[1.0, 4.0, 2.0]);
        let (values, v) = eigen_descending(&h).unwrap();
        assert_eq!(values, vec![4.0, 2.0, 1.0]);
        assert!(reconstruction_error(&h, &values, &v) <= 1e-12);
    }

    #[test]
    fn flip_matrix_spectrum() {
        let h = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let (values, v) = eigen_descending(&h).unwrap();
        assert!((values[0] - 1.0).abs() <= 1e-14);
        assert!((values[1] + 1.0).abs() <= 1e-14);
        assert!(reconstruction_error(&h, &values, &v) <= 1e-12);
    }

    #[test]
    fn worked_two_by_two_spectrum() {
        // [[3/4, (1+i)/4], [(1-i)/4, 1/4]] has eigenvalues 1/2 +- sqrt(3)/4.
        let h = ComplexMatrix::from_rows(&[
            vec![c(0.75, 0.0), c(0.25, 0.25)],
            vec![c(0.25, -0.25), c(0.25, 0.0)],
        ])
        .unwrap();
        let (values, v) = eigen_descending(&h).unwrap();
        assert!((values[0] - 0.93301270189221932338).abs() <= 1e-10);
        assert!((values[1] - 0.066987298107780676618).abs() <= 1e-10);
        assert!(reconstruction_error(&h, &values, &v) <= 1e-10);
    }

    #[test]
    fn zero_matrix_is_fine() {
        let (values, v) = eigen_descending(&ComplexMatrix::zeros(3, 3)).unwrap();
        assert_eq!(values, vec![0.0; 3]);
        assert_eq!(v, ComplexMatrix::identity(3));
    }

    #[test]
    fn degenerate_spectrum_is_deterministic() {
        let h = ComplexMatrix::from_rows(&[
            vec![c(0.5, 0.0), c(0.0, 0.0), c(0.1, 0.1)],
            vec![c(0.0, 0.0), c(0.5, 0.0), c(0.1, -0.1)],
            vec![c(0.1, -0.1), c(0.1, 0.1), c(0.2, 0.0)],
        ])
        .unwrap();
        let (v1, e1) = eigen_descending(&h).unwrap();
        let (v2, e2) = eigen_descending(&h).unwrap();
        assert_eq!(v1, v2);
        assert_eq!(e1, e2);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(eigen_descending(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn unitarity_of_eigenvectors() {
        let h = ComplexMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(0.3, 0.7), c(-0.2, 0.1)],
            vec![c(0.3, -0.7), c(-1.0, 0.0), c(0.5, 0.0)],
            vec![c(-0.2, -0.1), c(0.5, 0.0), c(0.4, 0.0)],
        ])
        .unwrap();
        let (_, v) = eigen_descending(&h).unwrap();
        let gram = v.adjoint().mul(&v).unwrap();
        assert!(gram.max_abs_diff(&ComplexMatrix::identity(3)).unwrap() <= 1e-13);
    }
}
