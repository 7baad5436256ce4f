//! Majorization verdicts on spectra and doubly stochastic witnesses.
//!
//! `kappa` is majorized by `lambda` when every prefix sum of `kappa` is at
//! most the matching prefix sum of `lambda` and the totals agree. The
//! constructive converse builds a doubly stochastic `D` with
//! `D lambda = kappa` as a product of at most `n - 1` T-transforms, each a
//! 2x2 averaging step that fixes one more coordinate exactly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::Spectrum;
use crate::tol;

/// Coordinates closer to target than this count as already fixed during
/// witness construction; pure roundoff, far below the check tolerances.
const FIX_EPS: f64 = 1e-15;

/// Outcome of a prefix-sum comparison.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MajorizationVerdict {
    pub holds: bool,
    /// `sum_{j<=k} lambda_j - sum_{j<=k} kappa_j` for each prefix `k`.
    pub prefix_gaps: Vec<f64>,
    /// Sequences agree elementwise within tolerance.
    pub is_equality: bool,
}

impl MajorizationVerdict {
    pub fn min_prefix_gap(&self) -> f64 {
        self.prefix_gaps.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Does `lambda` majorize `kappa`?
pub fn majorizes(lambda: &Spectrum, kappa: &Spectrum) -> Result<MajorizationVerdict> {
    if lambda.len() != kappa.len() {
        return Err(Error::DimensionMismatch(format!(
            "spectra lengths differ: {} vs {}",
            lambda.len(),
            kappa.len()
        )));
    }
    let tol_major = tol::scaled(tol::MAJORIZATION);
    let (tl, tk) = (lambda.sum(), kappa.sum());
    if (tl - tk).abs() > tol_major {
        return Err(Error::TotalMismatch { left: tl, right: tk });
    }
    let mut prefix_gaps = Vec::with_capacity(lambda.len());
    let mut gap = 0.0;
    for (l, k) in lambda.values().iter().zip(kappa.values()) {
        gap += l - k;
        prefix_gaps.push(gap);
    }
    let holds = prefix_gaps.iter().all(|&g| g >= -tol_major);
    let is_equality = lambda
        .values()
        .iter()
        .zip(kappa.values())
        .all(|(l, k)| (l - k).abs() <= tol_major);
    Ok(MajorizationVerdict { holds, prefix_gaps, is_equality })
}

/// Non-negative square matrix with unit row and column sums.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DoublyStochasticWitness {
    pub matrix: Vec<Vec<f64>>,
}

impl DoublyStochasticWitness {
    /// Checks the entry floor and the row/column sums.
    pub fn validate(&self) -> Result<()> {
        let n = self.matrix.len();
        let entry_floor = -tol::scaled(tol::WITNESS_ENTRY);
        let sum_tol = tol::scaled(tol::WITNESS);
        let mut col_sums = vec![0.0f64; n];
        for (i, row) in self.matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "witness row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            let mut row_sum = 0.0;
            for (j, &v) in row.iter().enumerate() {
                if v < entry_floor {
                    return Err(Error::WitnessConstruction { residual: -v });
                }
                row_sum += v;
                col_sums[j] += v;
            }
            if (row_sum - 1.0).abs() > sum_tol {
                return Err(Error::WitnessConstruction { residual: (row_sum - 1.0).abs() });
            }
        }
        for &s in &col_sums {
            if (s - 1.0).abs() > sum_tol {
                return Err(Error::WitnessConstruction { residual: (s - 1.0).abs() });
            }
        }
        Ok(())
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Doubly stochastic `D` with `D lambda = kappa`, built from T-transforms.
///
/// Argument order matches the construction's direction: the target comes
/// first, the majorizing source second.
pub fn hlp_witness(kappa: &Spectrum, lambda: &Spectrum) -> Result<DoublyStochasticWitness> {
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

    let n = lambda.len();
    let target = kappa.values();
    let mut x: Vec<f64> = lambda.values().to_vec();
    let mut d: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    for _ in 0..n.saturating_sub(1) {
        // First coordinate still above target; prefix ordering guarantees
        // any leading mismatch is a surplus.
        let Some(j) = (0..n).find(|&i| x[i] - target[i] > FIX_EPS) else {
            break;
        };
        let Some(k) = ((j + 1)..n).find(|&i| target[i] - x[i] > FIX_EPS) else {
            break;
        };
        let surplus = x[j] - target[j];
        let deficit = target[k] - x[k];
        let denom = x[j] - x[k];
        debug_assert!(denom > 0.0);
        let moved = surplus.min(deficit);
        let s = moved / denom;
        debug_assert!(s <= 0.5 + 1e-12);
        if surplus <= deficit {
            x[k] += surplus;
            x[j] = target[j];
        } else {
            x[j] -= deficit;
            x[k] = target[k];
        }
        // D <- T D with T the (j,k) averaging transform of weight s.
        for col in 0..n {
            let dj = d[j][col];
            let dk = d[k][col];
            d[j][col] = (1.0 - s) * dj + s * dk;
            d[k][col] = s * dj + (1.0 - s) * dk;
        }
    }

    let witness = DoublyStochasticWitness { matrix: d };
    witness.validate()?;
    let rebuilt = witness.apply(lambda.values());
    let witness_tol = tol::scaled(tol::WITNESS);
    let residual = rebuilt
        .iter()
        .zip(target)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    if residual > witness_tol {
        return Err(Error::WitnessConstruction { residual });
    }
    Ok(witness)
}
