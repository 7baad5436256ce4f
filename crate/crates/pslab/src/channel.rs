//! The partial-swap channel, built two independent ways, and the
//! top-eigenvalue bound for non-negative contractions with its exact
//! operator decomposition.
//!
//! The partial-swap unitary on `H (x) H` is `U_t = sqrt(t)*1 +
//! i*sqrt(1-t)*S` with `S` the swap. Conjugating a product state and
//! tracing out the second factor gives the channel
//!
//! ```text
//! rho (*)_t sigma = Tr2[U_t* (rho (x) sigma) U_t]
//!                 = t*rho + (1-t)*sigma + i*sqrt(t(1-t))*[rho, sigma]
//! ```
//!
//! (the adjoint sits on the left; putting it on the right flips the sign
//! of the commutator term). The same formula applied to non-negative
//! contractions `A, B` obeys `lambda_1(A (*)_t B) <= t*lambda_1(A) +
//! (1-t)*lambda_1(B)`, certified here by the identity
//!
//! ```text
//! bound*1 - A (*)_t B = t(X - X^2) + (1-t)(Y - Y^2) + Z Z*
//! ```
//!
//! with `X = lambda_1(A)*1 - A`, `Y = lambda_1(B)*1 - B`, and
//! `Z = sqrt(t)*X + i*sqrt(1-t)*Y`: a manifestly positive right-hand side.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hermitian::{DensityMatrix, HermitianOperator};
use crate::matrix::ComplexMatrix;
use crate::tol;

/// Mixing weight `t` in [0, 1]; `sqrt(t) = cos(theta)` ties it to the
/// classical mixing angle. Stored as `t`, `theta` derived on demand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixingParameter {
    t: f64,
}

impl MixingParameter {
    pub fn new(t: f64) -> Result<Self> {
        if !t.is_finite() || !(0.0..=1.0).contains(&t) {
            return Err(Error::ParameterRange(format!("t must lie in [0, 1], got {t}")));
        }
        Ok(Self { t })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Angle with `cos^2(theta) = t`.
    pub fn theta(&self) -> f64 {
        self.t.sqrt().acos()
    }

    /// `sqrt(t(1-t))`, the commutator weight.
    pub fn cross_weight(&self) -> f64 {
        (self.t * (1.0 - self.t)).sqrt()
    }
}

/// Swap operator on the product space: `S (u (x) v) = v (x) u`.
pub fn swap_operator(d: usize) -> ComplexMatrix {
    let mut s = ComplexMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            s.set(i * d + j, j * d + i, Complex64::ONE);
        }
    }
    s
}

/// `U_t = sqrt(t)*1 + i*sqrt(1-t)*S` on the product space.
pub fn partial_swap_unitary(t: MixingParameter, d: usize) -> ComplexMatrix {
    let id = ComplexMatrix::identity(d * d);
    let s = swap_operator(d);
    id.scale(Complex64::new(t.t().sqrt(), 0.0))
        .add(&s.scale(Complex64::new(0.0, (1.0 - t.t()).sqrt())))
        .expect("shapes agree by construction")
}

/// Channel via the product-space unitary: `Tr2[U_t* (rho (x) sigma) U_t]`.
pub fn convolve_via_trace(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    t: MixingParameter,
) -> Result<DensityMatrix> {
    let d = check_same_dim(rho.dim(), sigma.dim())?;
    let u = partial_swap_unitary(t, d);
    let product = rho.matrix().tensor_product(sigma.matrix());
    let conjugated = u.adjoint().mul(&product)?.mul(&u)?;
    DensityMatrix::new(conjugated.partial_trace_second(d)?)
}

/// Channel via the explicit formula
/// `t*rho + (1-t)*sigma + i*sqrt(t(1-t))*[rho, sigma]`.
pub fn convolve_explicit(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    t: MixingParameter,
) -> Result<DensityMatrix> {
    check_same_dim(rho.dim(), sigma.dim())?;
    DensityMatrix::new(star_matrix(rho.matrix(), sigma.matrix(), t)?)
}

/// The star combination on raw matrices; Hermitian whenever both inputs are.
pub fn star_matrix(a: &ComplexMatrix, b: &ComplexMatrix, t: MixingParameter) -> Result<ComplexMatrix> {
    let comm = ComplexMatrix::commutator(a, b)?;
    a.scale(Complex64::new(t.t(), 0.0))
        .add(&b.scale(Complex64::new(1.0 - t.t(), 0.0)))?
        .add(&comm.scale(Complex64::new(0.0, t.cross_weight())))
}

/// `A (*)_t B` for non-negative contractions, validated on the way in.
pub fn contraction_star(
    a: &HermitianOperator,
    b: &HermitianOperator,
    t: MixingParameter,
) -> Result<HermitianOperator> {
    check_same_dim(a.dim(), b.dim())?;
    a.contraction_spectrum()?;
    b.contraction_spectrum()?;
    HermitianOperator::new(star_matrix(a.matrix(), b.matrix(), t)?)
}

/// The operators certifying the top-eigenvalue bound.
#[derive(Debug, Clone)]
pub struct TopBoundCertificate {
    /// `X = lambda_1(A)*1 - A`; spectrum in [0, 1].
    pub x: HermitianOperator,
    /// `Y = lambda_1(B)*1 - B`; spectrum in [0, 1].
    pub y: HermitianOperator,
    /// `Z = sqrt(t)*X + i*sqrt(1-t)*Y`; not Hermitian in general.
    pub z: ComplexMatrix,
    /// `t*lambda_1(A) + (1-t)*lambda_1(B)`.
    pub bound: f64,
}

/// Builds the decomposition behind the top-eigenvalue bound.
pub fn top_bound_certificate(
    a: &HermitianOperator,
    b: &HermitianOperator,
    t: MixingParameter,
) -> Result<TopBoundCertificate> {
    let d = check_same_dim(a.dim(), b.dim())?;
    let top_a = a.contraction_spectrum()?.values()[0];
    let top_b = b.contraction_spectrum()?.values()[0];
    let id = ComplexMatrix::identity(d);
    let x = HermitianOperator::new(id.scale(Complex64::new(top_a, 0.0)).sub(a.matrix())?)?;
    let y = HermitianOperator::new(id.scale(Complex64::new(top_b, 0.0)).sub(b.matrix())?)?;
    let z = x
        .matrix()
        .scale(Complex64::new(t.t().sqrt(), 0.0))
        .add(&y.matrix().scale(Complex64::new(0.0, (1.0 - t.t()).sqrt())))?;
    Ok(TopBoundCertificate { x, y, z, bound: t.t() * top_a + (1.0 - t.t()) * top_b })
}

/// Max-entry residual of the certificate identity
/// `t(X - X^2) + (1-t)(Y - Y^2) + Z Z* = bound*1 - A (*)_t B`.
///
/// This is an algebraic identity; the residual is pure roundoff.
pub fn top_bound_identity_residual(
    a: &HermitianOperator,
    b: &HermitianOperator,
    t: MixingParameter,
) -> Result<f64> {
    let cert = top_bound_certificate(a, b, t)?;
    let d = a.dim();
    let weighted_gap = |m: &ComplexMatrix, w: f64| -> Result<ComplexMatrix> {
        Ok(m.sub(&m.mul(m)?)?.scale(Complex64::new(w, 0.0)))
    };
    let lhs = weighted_gap(cert.x.matrix(), t.t())?
        .add(&weighted_gap(cert.y.matrix(), 1.0 - t.t())?)?
        .add(&cert.z.mul(&cert.z.adjoint())?)?;
    let star = star_matrix(a.matrix(), b.matrix(), t)?;
    let rhs = ComplexMatrix::identity(d).scale(Complex64::new(cert.bound, 0.0)).sub(&star)?;
    lhs.max_abs_diff(&rhs)
}

/// Top eigenvector of `A (*)_t B` when the bound is attained, confirmed as
/// a shared top eigenvector of `A` and `B`; `None` when the bound is strict.
///
/// Only defined for `t` strictly inside (0, 1): at the endpoints the channel
/// returns one input and the bound is trivially attained.
pub fn equality_witness(
    a: &HermitianOperator,
    b: &HermitianOperator,
    t: MixingParameter,
) -> Result<Option<Vec<Complex64>>> {
    if t.t() <= 0.0 || t.t() >= 1.0 {
        return Err(Error::ParameterRange(format!(
            "equality analysis needs t strictly inside (0, 1), got {}",
            t.t()
        )));
    }
    let cert = top_bound_certificate(a, b, t)?;
    let star = contraction_star(a, b, t)?;
    let (spectrum, vectors) = star.eigen()?;
    let top = spectrum.values()[0];
    if top < cert.bound - tol::scaled(tol::EQUALITY_GAP) {
        return Ok(None);
    }
    let d = star.dim();
    let phi: Vec<Complex64> = (0..d).map(|i| vectors[(i, 0)]).collect();
    let top_a = a.top_eigenvalue()?;
    let top_b = b.top_eigenvalue()?;
    let residual_tol = tol::scaled(tol::EQUALITY_RESIDUAL);
    if eigen_residual(a.matrix(), &phi, top_a) <= residual_tol
        && eigen_residual(b.matrix(), &phi, top_b) <= residual_tol
    {
        Ok(Some(phi))
    } else {
        Ok(None)
    }
}

/// `|| M phi - value * phi ||`.
fn eigen_residual(m: &ComplexMatrix, phi: &[Complex64], value: f64) -> f64 {
    let d = m.dim();
    let mut sum = 0.0;
    for i in 0..d {
        let mut acc = Complex64::ZERO;
        for j in 0..d {
            acc += m[(i, j)] * phi[j];
        }
        sum += (acc - Complex64::new(value, 0.0) * phi[i]).norm_sqr();
    }
    sum.sqrt()
}

fn check_same_dim(a: usize, b: usize) -> Result<usize> {
    if a != b {
        return Err(Error::DimensionMismatch(format!("operator dimensions differ: {a} vs {b}")));
    }
    Ok(a)
}
