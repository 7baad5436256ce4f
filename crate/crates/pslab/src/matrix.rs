//! Dense complex matrices and the handful of operations the channel needs:
//! adjoints, products, tensor products, partial trace over the second
//! factor, and commutators.
//!
//! Matrices are row-major over `Complex64` and may be rectangular, though
//! every operator in the crate is square. The repo-wide JSON wire format is
//! `{"dim": d, "re": [[..]], "im": [[..]]}` with full-precision writers.

use std::ops::Index;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jsonio;

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::ZERO; rows * cols] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.set(i, i, Complex64::ONE);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("rows must be non-empty and uniform".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.concat() })
    }

    /// Diagonal matrix with real entries.
    pub fn diag(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, Complex64::new(v, 0.0));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix.
    pub fn dim(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    fn same_shape(&self, other: &Self, op: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{op} needs equal shapes, got {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "add")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "sub")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let data = self.data.iter().map(|a| a * factor).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "mul needs inner dimensions to agree, got {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        debug_assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise difference in modulus.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.same_shape(other, "max_abs_diff")?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Largest modulus of `A[i][j] - conj(A[j][i])`.
    pub fn hermiticity_defect(&self) -> f64 {
        debug_assert!(self.is_square());
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Kronecker product; block (i,j) equals `self[i][j] * other`.
    pub fn tensor_product(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        Self::from_fn(rows, cols, |i, j| {
            self[(i / other.rows, j / other.cols)] * other[(i % other.rows, j % other.cols)]
        })
    }

    /// Trace over the second tensor factor: `out[i][j] = sum_k M[i*d+k][j*d+k]`.
    pub fn partial_trace_second(&self, sub_dim: usize) -> Result<Self> {
        let side = sub_dim
            .checked_mul(sub_dim)
            .filter(|&s| self.is_square() && self.rows == s)
            .ok_or_else(|| {
                Error::DimensionMismatch(format!(
                    "partial trace needs a {0}x{0} matrix with side {1}^2, got {2}x{3}",
                    sub_dim * sub_dim,
                    sub_dim,
                    self.rows,
                    self.cols
                ))
            })?;
        debug_assert_eq!(side, self.rows);
        Ok(Self::from_fn(sub_dim, sub_dim, |i, j| {
            (0..sub_dim).map(|k| self[(i * sub_dim + k, j * sub_dim + k)]).sum()
        }))
    }

    /// `AB - BA`; anti-Hermitian whenever both inputs are Hermitian.
    pub fn commutator(a: &Self, b: &Self) -> Result<Self> {
        if !a.is_square() || !b.is_square() || a.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "commutator needs equal square matrices, got {}x{} and {}x{}",
                a.rows, a.cols, b.rows, b.cols
            )));
        }
        a.mul(b)?.sub(&b.mul(a)?)
    }

    pub fn to_wire(&self) -> MatrixWire {
        debug_assert!(self.is_square());
        let d = self.rows;
        let re = (0..d).map(|i| (0..d).map(|j| self[(i, j)].re).collect()).collect();
        let im = (0..d).map(|i| (0..d).map(|j| self[(i, j)].im).collect()).collect();
        MatrixWire { dim: d, re, im }
    }

    pub fn to_json(&self) -> Result<String> {
        jsonio::to_string_full(&self.to_wire())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: MatrixWire = serde_json::from_str(text)?;
        wire.validate()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

/// Repo-wide JSON form of a square complex matrix.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixWire {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixWire {
    /// Checks shape and finiteness, then builds the matrix.
    pub fn validate(&self) -> Result<ComplexMatrix> {
        if self.dim == 0 {
            return Err(Error::JsonShape { field: "dim".into(), message: "must be positive".into() });
        }
        for (name, part) in [("re", &self.re), ("im", &self.im)] {
            if part.len() != self.dim {
                return Err(Error::JsonShape {
                    field: name.into(),
                    message: format!("expected {} rows, got {}", self.dim, part.len()),
                });
            }
            for (i, row) in part.iter().enumerate() {
                if row.len() != self.dim {
                    return Err(Error::JsonShape {
                        field: format!("{name}[{i}]"),
                        message: format!("expected {} columns, got {}", self.dim, row.len()),
                    });
                }
                for (j, v) in row.iter().enumerate() {
                    if !v.is_finite() {
                        return Err(Error::JsonShape {
                            field: format!("{name}[{i}][{j}]"),
                            message: "not finite".into(),
                        });
                    }
                }
            }
        }
        Ok(ComplexMatrix::from_fn(self.dim, self.dim, |i, j| {
            Complex64::new(self.re[i][j], self.im[i][j])
        }))
    }
}
