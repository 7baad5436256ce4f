//! Antisymmetric k-fold lifts and the identities that drive the spectral
//! mixing proof.
//!
//! The derivation lift `A^[k]` acts on the wedge basis by replacing one
//! slot at a time. Its eigenvalues are the k-subset sums of the
//! eigenvalues of `A`, so the top eigenvalue of the lift is the sum of the
//! k largest eigenvalues of `A`. Combined with `[A,B]^[k] = [A^[k],B^[k]]`,
//! the top-bound certificate applies grade by grade and yields every
//! prefix-sum inequality of the majorization statement at once.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channel::{star_matrix, MixingParameter};
use crate::eigen::eigen_descending;
use crate::error::{Error, Result};
use crate::hermitian::{DensityMatrix, HermitianOperator};
use crate::matrix::ComplexMatrix;
use crate::tol;

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Lexicographic wedge basis of grade `k` over ambient dimension `d`.
#[derive(Debug, Clone)]
pub struct ExteriorBasis {
    d: usize,
    k: usize,
    indices: Vec<Vec<usize>>,
}

impl ExteriorBasis {
    pub fn new(d: usize, k: usize) -> Result<Self> {
        if d > tol::MAX_LIFT_DIM {
            return Err(Error::DimensionBound { d, bound: tol::MAX_LIFT_DIM });
        }
        if k == 0 || k > d {
            return Err(Error::GradeRange { k, d });
        }
        let mut indices = Vec::with_capacity(binomial(d, k));
        let mut current = Vec::with_capacity(k);
        collect_subsets(d, k, 0, &mut current, &mut indices);
        debug_assert_eq!(indices.len(), binomial(d, k));
        Ok(Self { d, k, indices })
    }

    pub fn ambient_dim(&self) -> usize {
        self.d
    }

    pub fn grade(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// The strictly increasing k-subsets, lexicographically ordered.
    pub fn indices(&self) -> &[Vec<usize>] {
        &self.indices
    }

    /// Matrix of the derivation lift of `a` in this basis.
    pub fn lift(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        if !a.is_square() || a.rows() != self.d {
            return Err(Error::DimensionMismatch(format!(
                "lift needs a {d}x{d} operator, got {r}x{c}",
                d = self.d,
                r = a.rows(),
                c = a.cols()
            )));
        }
        let n = self.indices.len();
        let mut out = ComplexMatrix::zeros(n, n);
        for (row, set_i) in self.indices.iter().enumerate() {
            for (col, set_j) in self.indices.iter().enumerate() {
                out.set(row, col, self.entry(a, set_i, set_j));
            }
        }
        Ok(out)
    }

    /// Entry (I, J): diagonal sum when I = J, a signed single replacement
    /// when the subsets differ in exactly one slot, zero otherwise.
    fn entry(&self, a: &ComplexMatrix, set_i: &[usize], set_j: &[usize]) -> Complex64 {
        let only_i: Vec<usize> = set_i.iter().copied().filter(|v| !set_j.contains(v)).collect();
        match only_i.len() {
            0 => set_i
                .iter()
                .map(|&i| a[(i, i)])
                .fold(Complex64::new(0.0, 0.0), |acc, v| acc + v),
            1 => {
                let from = only_i[0];
                let to = *set_j
                    .iter()
                    .find(|v| !set_i.contains(v))
                    .expect("symmetric difference has one element per side");
                let pos_i = set_i.iter().position(|&v| v == from).expect("member");
                let pos_j = set_j.iter().position(|&v| v == to).expect("member");
                let sign = if (pos_i + pos_j) % 2 == 0 { 1.0 } else { -1.0 };
                a[(from, to)] * Complex64::new(sign, 0.0)
            }
            _ => Complex64::new(0.0, 0.0),
        }
    }
}

fn collect_subsets(
    d: usize,
    k: usize,
    start: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if current.len() == k {
        out.push(current.clone());
        return;
    }
    let remaining = k - current.len();
    for v in start..=(d - remaining) {
        current.push(v);
        collect_subsets(d, k, v + 1, current, out);
        current.pop();
    }
}

/// Derivation lift of a square operator to grade `k`.
pub fn lift_operator(a: &ComplexMatrix, k: usize) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "lift needs a square operator, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    ExteriorBasis::new(a.rows(), k)?.lift(a)
}

/// Residual of `lambda_1(A^[k]) = sum of the k largest eigenvalues of A`.
pub fn top_eigen_sum_check(a: &HermitianOperator, k: usize) -> Result<f64> {
    let lifted = lift_operator(a.matrix(), k)?;
    let (lift_values, _) = eigen_descending(&lifted)?;
    let (spectrum, _) = a.eigen()?;
    let prefix: f64 = spectrum.values()[..k].iter().sum();
    Ok((lift_values[0] - prefix).abs())
}

/// Residual of `[A,B]^[k] = [A^[k], B^[k]]`, as a max entry modulus.
pub fn commutator_lift_check(a: &ComplexMatrix, b: &ComplexMatrix, k: usize) -> Result<f64> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "commutator lift needs equal shapes, got {}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let lifted_commutator = lift_operator(&ComplexMatrix::commutator(a, b)?, k)?;
    let commutator_of_lifts =
        ComplexMatrix::commutator(&lift_operator(a, k)?, &lift_operator(b, k)?)?;
    commutator_of_lifts.max_abs_diff(&lifted_commutator)
}

/// Both sides of the grade-k prefix-sum inequality, plus the residual of
/// lifting commuting with the channel.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct KyFanCheck {
    /// `lambda_1(lift(rho *_t sigma))`, the k-th prefix sum of the output.
    pub lhs: f64,
    /// `t*lambda_1(lift(rho)) + (1-t)*lambda_1(lift(sigma))`.
    pub rhs: f64,
    /// Max entry gap between `lift(rho *_t sigma)` and the channel applied
    /// to the lifted contractions.
    pub channel_lift_residual: f64,
}

/// Evaluates the grade-k prefix-sum inequality through the lift.
pub fn ky_fan_via_lift(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    t: MixingParameter,
    k: usize,
) -> Result<KyFanCheck> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(format!(
            "density dimensions differ: {} vs {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    let basis = ExteriorBasis::new(rho.dim(), k)?;
    let lift_rho = basis.lift(rho.matrix())?;
    let lift_sigma = basis.lift(sigma.matrix())?;
    let lift_out = basis.lift(&star_matrix(rho.matrix(), sigma.matrix(), t)?)?;

    let top = |m: &ComplexMatrix| -> Result<f64> { Ok(eigen_descending(m)?.0[0]) };
    let lhs = top(&lift_out)?;
    let rhs = t.t() * top(&lift_rho)? + (1.0 - t.t()) * top(&lift_sigma)?;
    let star_of_lifts = star_matrix(&lift_rho, &lift_sigma, t)?;
    Ok(KyFanCheck {
        lhs,
        rhs,
        channel_lift_residual: lift_out.max_abs_diff(&star_of_lifts)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;

    #[test]
    fn basis_is_lexicographic() {
        let b = ExteriorBasis::new(4, 2).unwrap();
        let want: Vec<Vec<usize>> =
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]];
        assert_eq!(b.indices(), want.as_slice());
        assert_eq!(b.len(), 6);
    }

    #[test]
    fn grade_and_dimension_bounds() {
        assert!(matches!(ExteriorBasis::new(3, 0), Err(Error::GradeRange { .. })));
        assert!(matches!(ExteriorBasis::new(3, 4), Err(Error::GradeRange { .. })));
        assert!(matches!(ExteriorBasis::new(11, 2), Err(Error::DimensionBound { .. })));
    }

    #[test]
    fn diagonal_lift_adds_subset_entries() {
        let lifted = lift_operator(&ComplexMatrix::diag(&[3.0, 2.0, 1.0]), 2).unwrap();
        let want = ComplexMatrix::diag(&[5.0, 4.0, 3.0]);
        assert!(lifted.max_abs_diff(&want).unwrap() == 0.0);
    }

    #[test]
    fn grade_one_lift_is_the_operator() {
        let a = ComplexMatrix::from_fn(3, 3, |i, j| {
            Complex64::new((i + 2 * j) as f64, (i as f64) - (j as f64))
        });
        assert!(lift_operator(&a, 1).unwrap().max_abs_diff(&a).unwrap() == 0.0);
    }

    #[test]
    fn top_grade_lift_is_the_trace() {
        let a = ComplexMatrix::from_fn(3, 3, |i, j| Complex64::new((i * j) as f64 + 1.0, 0.0));
        let lifted = lift_operator(&a, 3).unwrap();
        assert_eq!(lifted.rows(), 1);
        assert!((lifted[(0, 0)] - a.trace()).norm() == 0.0);
    }

    #[test]
    fn identity_lifts_to_grade_times_identity() {
        let id = ComplexMatrix::identity(5);
        for k in 1..=5 {
            let lifted = lift_operator(&id, k).unwrap();
            let want = ComplexMatrix::identity(lifted.rows())
                .scale(Complex64::new(k as f64, 0.0));
            assert!(lifted.max_abs_diff(&want).unwrap() == 0.0);
        }
    }

    #[test]
    fn lift_is_linear_and_hermiticity_preserving() {
        let a = sample::random_density(21, 4).unwrap().matrix().clone();
        let b = sample::random_density(22, 4).unwrap().matrix().clone();
        let (alpha, beta) = (Complex64::new(1.7, 0.0), Complex64::new(-0.4, 0.0));
        for k in 1..=4 {
            let combined = lift_operator(&a.scale(alpha).add(&b.scale(beta)).unwrap(), k).unwrap();
            let separate = lift_operator(&a, k)
                .unwrap()
                .scale(alpha)
                .add(&lift_operator(&b, k).unwrap().scale(beta))
                .unwrap();
            assert!(combined.max_abs_diff(&separate).unwrap() <= tol::LIFT_LINEARITY);
            assert!(combined.hermiticity_defect() <= 1e-12);
        }
    }

    #[test]
    fn top_eigen_sum_trivial_cases() {
        let diag = HermitianOperator::new(ComplexMatrix::diag(&[3.0, 2.0, 1.0])).unwrap();
        assert!(top_eigen_sum_check(&diag, 2).unwrap() <= 1e-14);
        let id = HermitianOperator::new(ComplexMatrix::identity(4)).unwrap();
        for k in 1..=4 {
            assert!(top_eigen_sum_check(&id, k).unwrap() <= 1e-14);
        }
    }

    #[test]
    fn top_eigen_sum_random_psd() {
        let rho = sample::random_density(31, 5).unwrap();
        assert!(top_eigen_sum_check(rho.hermitian(), 3).unwrap() <= tol::LIFT_TOP_SUM);
    }

    #[test]
    fn commutator_lift_trivial_cases() {
        let a = ComplexMatrix::diag(&[1.0, 2.0]);
        let b = ComplexMatrix::diag(&[3.0, 4.0]);
        assert!(commutator_lift_check(&a, &b, 2).unwrap() <= 1e-15);
        let rho = ComplexMatrix::diag(&[1.0, 0.0]);
        let half = Complex64::new(0.5, 0.0);
        let sigma = ComplexMatrix::from_rows(&[vec![half, half], vec![half, half]]).unwrap();
        assert!(commutator_lift_check(&rho, &sigma, 2).unwrap() <= 1e-15);
    }

    #[test]
    fn commutator_lift_random_pair() {
        let a = sample::random_density(41, 4).unwrap().matrix().clone();
        let b = sample::random_density(42, 4).unwrap().matrix().clone();
        for k in 1..=4 {
            assert!(commutator_lift_check(&a, &b, k).unwrap() <= tol::LIFT_COMMUTATOR);
        }
    }

    #[test]
    fn lifted_density_is_a_contraction() {
        let rho = sample::random_density(51, 5).unwrap();
        for k in 1..=5 {
            let lifted = HermitianOperator::new(lift_operator(rho.matrix(), k).unwrap()).unwrap();
            let spectrum = lifted.contraction_spectrum().unwrap();
            assert!(spectrum.values()[0] <= 1.0 + tol::LIFT_CONTRACTION);
        }
    }

    #[test]
    fn ky_fan_worked_pair_top_grade_is_exact() {
        let rho = DensityMatrix::new(ComplexMatrix::diag(&[1.0, 0.0])).unwrap();
        let half = Complex64::new(0.5, 0.0);
        let sigma = DensityMatrix::new(
            ComplexMatrix::from_rows(&[vec![half, half], vec![half, half]]).unwrap(),
        )
        .unwrap();
        let t = MixingParameter::new(0.5).unwrap();
        let k1 = ky_fan_via_lift(&rho, &sigma, t, 1).unwrap();
        assert!((k1.lhs - 0.93301270189221932338).abs() <= 1e-12);
        assert!((k1.rhs - 1.0).abs() <= 1e-12);
        assert!(k1.channel_lift_residual <= 1e-14);
        let k2 = ky_fan_via_lift(&rho, &sigma, t, 2).unwrap();
        assert!((k2.lhs - 1.0).abs() <= 1e-12);
        assert!((k2.rhs - 1.0).abs() <= 1e-12);
        assert!(k2.channel_lift_residual <= 1e-14);
    }

    #[test]
    fn ky_fan_matches_prefix_sums() {
        let rho = sample::random_density(61, 4).unwrap();
        let sigma = sample::random_density(62, 4).unwrap();
        let t = MixingParameter::new(0.3).unwrap();
        let out = crate::channel::convolve_explicit(&rho, &sigma, t).unwrap();
        let mut prefix = 0.0;
        for k in 1..=4 {
            prefix += out.spectrum().values()[k - 1];
            let check = ky_fan_via_lift(&rho, &sigma, t, k).unwrap();
            assert!((check.lhs - prefix).abs() <= tol::LIFT_TOP_SUM);
            assert!(check.lhs <= check.rhs + tol::LIFT_TOP_SUM);
            assert!(check.channel_lift_residual <= tol::LIFT_COMMUTATOR);
        }
    }
}
