//! Grid densities on the line, the scaled convolution, and the classical
//! entropy power inequality.
//!
//! A `GridDensity` stores piecewise-constant density values on uniform
//! cells: `values[i]` is the density on
//! `[x_min + i*dx, x_min + (i+1)*dx]`, quadrature points sit at cell
//! centers, and mass is `dx * sum(values)`. The scaled convolution
//! produces the density of `cos(theta)*X + sin(theta)*Y` for independent
//! samples of the two inputs; its mean and variance follow the
//! `cos^2/sin^2` mixing law, which is what the tests pin.
//!
//! All quadrature is midpoint rule. The convolution integral over `y`
//! subdivides the exact intersection of the two support windows into equal
//! cells no wider than the grid step, so window ends never overshoot.

use std::f64::consts::FRAC_PI_2;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

/// Mixing angle strictly inside (0, pi/2); endpoints degenerate to a
/// single-input identity and are rejected.
#[derive(Debug, Clone, Copy)]
pub struct MixingAngle {
    theta: f64,
}

impl MixingAngle {
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() || theta <= 0.0 || theta >= FRAC_PI_2 {
            return Err(Error::ParameterRange(format!(
                "mixing angle must lie strictly inside (0, pi/2), got {theta}"
            )));
        }
        Ok(Self { theta })
    }

    /// Angle with `cos^2(theta) = t`, bridging the quantum mixing weight.
    pub fn from_mixing_weight(t: f64) -> Result<Self> {
        if !t.is_finite() || t <= 0.0 || t >= 1.0 {
            return Err(Error::ParameterRange(format!(
                "interior mixing weight required for an angle, got {t}"
            )));
        }
        Self::new(t.sqrt().acos())
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn cos(&self) -> f64 {
        self.theta.cos()
    }

    pub fn sin(&self) -> f64 {
        self.theta.sin()
    }
}

/// Wire form of a grid density.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridWire {
    pub x_min: f64,
    pub dx: f64,
    pub values: Vec<f64>,
}

impl GridWire {
    fn validate(&self) -> Result<()> {
        if !self.x_min.is_finite() {
            return Err(Error::JsonShape {
                field: "x_min".into(),
                message: "must be finite".into(),
            });
        }
        if !self.dx.is_finite() || self.dx <= 0.0 {
            return Err(Error::JsonShape {
                field: "dx".into(),
                message: "must be finite and positive".into(),
            });
        }
        if self.values.is_empty() {
            return Err(Error::JsonShape {
                field: "values".into(),
                message: "must be non-empty".into(),
            });
        }
        for (i, v) in self.values.iter().enumerate() {
            if !v.is_finite() || *v < 0.0 {
                return Err(Error::JsonShape {
                    field: format!("values[{i}]"),
                    message: "must be finite and non-negative".into(),
                });
            }
        }
        Ok(())
    }
}

/// Piecewise-constant probability density on a uniform grid.
#[derive(Debug, Clone)]
pub struct GridDensity {
    x_min: f64,
    dx: f64,
    values: Vec<f64>,
}

impl GridDensity {
    /// Validates shape, sign, and unit mass within tolerance.
    pub fn new(x_min: f64, dx: f64, values: Vec<f64>) -> Result<Self> {
        let wire = GridWire { x_min, dx, values };
        wire.validate().map_err(|e| match e {
            Error::JsonShape { field, message } => {
                Error::InvalidDensity(format!("{field}: {message}"))
            }
            other => other,
        })?;
        let density = Self { x_min: wire.x_min, dx: wire.dx, values: wire.values };
        let mass = density.mass();
        if (mass - 1.0).abs() > tol::scaled(tol::GRID_MASS) {
            return Err(Error::InvalidDensity(format!(
                "total mass {mass} is not 1 within tolerance"
            )));
        }
        Ok(density)
    }

    /// Scales non-negative raw values to unit mass, then validates.
    pub fn normalized(x_min: f64, dx: f64, mut raw: Vec<f64>) -> Result<Self> {
        let mass: f64 = raw.iter().sum::<f64>() * dx;
        if !mass.is_finite() || mass <= 0.0 {
            return Err(Error::InvalidDensity(format!(
                "raw values integrate to {mass}, cannot normalize"
            )));
        }
        for v in &mut raw {
            *v /= mass;
        }
        Self::new(x_min, dx, raw)
    }

    /// Discretized centered-or-shifted Gaussian, spanning eight standard
    /// deviations each side and renormalized to exact unit mass.
    pub fn gaussian(mean: f64, variance: f64, dx: f64) -> Result<Self> {
        if !variance.is_finite() || variance <= 0.0 {
            return Err(Error::DegenerateDensity { variance });
        }
        let sd = variance.sqrt();
        let n = ((16.0 * sd) / dx).ceil() as usize;
        let x_min = mean - (n as f64) * dx / 2.0;
        let norm = 1.0 / (sd * (2.0 * std::f64::consts::PI).sqrt());
        let raw: Vec<f64> = (0..n)
            .map(|i| {
                let x = x_min + (i as f64 + 0.5) * dx;
                let z = (x - mean) / sd;
                norm * (-0.5 * z * z).exp()
            })
            .collect();
        Self::normalized(x_min, dx, raw)
    }

    /// Uniform density on `[a, b]`; the spacing is nudged so the support
    /// is tiled exactly and the mass is exactly one.
    pub fn uniform(a: f64, b: f64, dx: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || b <= a || dx <= 0.0 {
            return Err(Error::InvalidDensity(format!(
                "uniform support [{a}, {b}] with spacing {dx} is invalid"
            )));
        }
        let n = (((b - a) / dx).round() as usize).max(1);
        let dx_eff = (b - a) / n as f64;
        Self::new(a, dx_eff, vec![1.0 / (b - a); n])
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn dx(&self) -> f64 {
        self.dx
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

    /// Upper edge of the grid support.
    pub fn x_max(&self) -> f64 {
        self.x_min + self.dx * self.values.len() as f64
    }

    pub fn mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.dx
    }

    /// Density value of the cell containing `x`, zero outside the grid.
    pub fn value_at(&self, x: f64) -> f64 {
        let pos = (x - self.x_min) / self.dx;
        if pos < 0.0 {
            return 0.0;
        }
        let idx = pos as usize;
        if idx >= self.values.len() {
            0.0
        } else {
            self.values[idx]
        }
    }

    pub fn mean(&self) -> f64 {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| v * (self.x_min + (i as f64 + 0.5) * self.dx))
            .sum::<f64>()
            * self.dx
    }

    pub fn variance(&self) -> f64 {
        let mean = self.mean();
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let x = self.x_min + (i as f64 + 0.5) * self.dx;
                v * (x - mean) * (x - mean)
            })
            .sum::<f64>()
            * self.dx
    }

    pub fn to_wire(&self) -> GridWire {
        GridWire { x_min: self.x_min, dx: self.dx, values: self.values.clone() }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: GridWire = serde_json::from_str(text)?;
        wire.validate()?;
        Self::new(wire.x_min, wire.dx, wire.values)
    }

    pub fn read_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }
}

/// Convolution output plus the quadrature drift that renormalization
/// absorbed.
#[derive(Debug, Clone)]
pub struct ConvolutionResult {
    pub density: GridDensity,
    /// `|pre-renormalization mass - 1|`.
    pub drift: f64,
}

/// Density of `cos(theta)*X + sin(theta)*Y` for independent `X ~ rho`,
/// `Y ~ sigma`.
///
/// The output grid spans the exact reachable support, padded a tenth on
/// each side, at the finer of the two input spacings. For each output cell
/// the `y`-integral runs over the exact window where both inputs are
/// supported, split into equal midpoint cells.
pub fn scaled_convolution(
    rho: &GridDensity,
    sigma: &GridDensity,
    theta: MixingAngle,
) -> Result<ConvolutionResult> {
    let max_dx = tol::MAX_GRID_DX;
    for dx in [rho.dx(), sigma.dx()] {
        if dx > max_dx {
            return Err(Error::GridResolution { dx, max_dx });
        }
    }
    let (ct, st) = (theta.cos(), theta.sin());
    let dx_out = rho.dx().min(sigma.dx());
    let lo = ct * rho.x_min() + st * sigma.x_min();
    let hi = ct * rho.x_max() + st * sigma.x_max();
    let pad = 0.1 * (hi - lo);
    let x_min = lo - pad;
    let n = (((hi - lo) + 2.0 * pad) / dx_out).ceil() as usize;

    let mut values = vec![0.0f64; n];
    for (i, value) in values.iter_mut().enumerate() {
        let x = x_min + (i as f64 + 0.5) * dx_out;
        // rho is evaluated at x*ct - y*st, sigma at x*st + y*ct; each
        // support translates to a y-window, and only the overlap counts.
        let y0 = ((x * ct - rho.x_max()) / st).max((sigma.x_min() - x * st) / ct);
        let y1 = ((x * ct - rho.x_min()) / st).min((sigma.x_max() - x * st) / ct);
        if y1 <= y0 {
            continue;
        }
        let cells = (((y1 - y0) / dx_out).ceil() as usize).max(1);
        let dy = (y1 - y0) / cells as f64;
        let mut acc = 0.0;
        for j in 0..cells {
            let y = y0 + (j as f64 + 0.5) * dy;
            acc += rho.value_at(x * ct - y * st) * sigma.value_at(x * st + y * ct);
        }
        *value = acc * dy;
    }

    let mass: f64 = values.iter().sum::<f64>() * dx_out;
    let drift = (mass - 1.0).abs();
    let drift_tol = tol::scaled(tol::QUADRATURE_DRIFT);
    if !mass.is_finite() || mass <= 0.0 || drift > drift_tol {
        return Err(Error::QuadratureDrift { drift, tol: drift_tol, dx: dx_out });
    }
    for v in &mut values {
        *v /= mass;
    }
    Ok(ConvolutionResult { density: GridDensity::new(x_min, dx_out, values)?, drift })
}

/// Differential entropy by midpoint quadrature; empty cells contribute
/// nothing.
pub fn differential_entropy(rho: &GridDensity) -> f64 {
    rho.values()
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| -v * v.ln())
        .sum::<f64>()
        * rho.dx()
}

/// Centered Gaussian on the input's spacing with the input's variance; the
/// entropy-maximizing comparison density.
pub fn gaussian_match(rho: &GridDensity) -> Result<GridDensity> {
    let variance = rho.variance();
    if variance <= 1e-12 {
        return Err(Error::DegenerateDensity { variance });
    }
    GridDensity::gaussian(0.0, variance, rho.dx())
}

/// Classical entropy power inequality outcome.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ClassicalEpiCheck {
    pub holds: bool,
    /// `S(rho *_theta sigma) - cos^2(theta)*S(rho) - sin^2(theta)*S(sigma)`.
    pub gap: f64,
    /// Quadrature drift of the convolution, for diagnostics.
    pub drift: f64,
}

/// Entropy of the scaled convolution against the mixed input entropies.
pub fn check_classical_epi(
    rho: &GridDensity,
    sigma: &GridDensity,
    theta: MixingAngle,
) -> Result<ClassicalEpiCheck> {
    let out = scaled_convolution(rho, sigma, theta)?;
    let (c2, s2) = (theta.cos() * theta.cos(), theta.sin() * theta.sin());
    let gap = differential_entropy(&out.density)
        - c2 * differential_entropy(rho)
        - s2 * differential_entropy(sigma);
    Ok(ClassicalEpiCheck {
        holds: gap >= -tol::scaled(tol::CLASSICAL_GAP),
        gap,
        drift: out.drift,
    })
}

/// Spacing used by the randomized density family.
pub const FAMILY_DX: f64 = 0.01;

/// Deterministic density family for sweeps: Gaussians, uniforms, and
/// two-component Gaussian mixtures, all with O(1) support.
pub fn random_grid_density(seed: u64) -> Result<GridDensity> {
    use rand::Rng;
    let mut rng = crate::sample::rng_from(seed);
    match rng.random_range(0..3u8) {
        0 => {
            let mean = rng.random_range(-1.0..1.0);
            let variance = rng.random_range(0.25..4.0);
            GridDensity::gaussian(mean, variance, FAMILY_DX)
        }
        1 => {
            let a = rng.random_range(-1.5..0.0);
            let width = rng.random_range(0.5..3.0);
            GridDensity::uniform(a, a + width, FAMILY_DX)
        }
        _ => {
            let m1 = rng.random_range(-2.5..-0.5);
            let m2 = rng.random_range(0.5..2.5);
            let v1 = rng.random_range(0.25..2.25);
            let v2 = rng.random_range(0.25..2.25);
            let weight = rng.random_range(0.3..0.7);
            mixture(m1, v1, m2, v2, weight)
        }
    }
}

fn mixture(m1: f64, v1: f64, m2: f64, v2: f64, weight: f64) -> Result<GridDensity> {
    let (s1, s2) = (v1.sqrt(), v2.sqrt());
    let lo = (m1 - 8.0 * s1).min(m2 - 8.0 * s2);
    let hi = (m1 + 8.0 * s1).max(m2 + 8.0 * s2);
    let n = ((hi - lo) / FAMILY_DX).ceil() as usize;
    let pdf = |x: f64, m: f64, s: f64| {
        let z = (x - m) / s;
        (-0.5 * z * z).exp() / (s * (2.0 * std::f64::consts::PI).sqrt())
    };
    let raw: Vec<f64> = (0..n)
        .map(|i| {
            let x = lo + (i as f64 + 0.5) * FAMILY_DX;
            weight * pdf(x, m1, s1) + (1.0 - weight) * pdf(x, m2, s2)
        })
        .collect();
    GridDensity::normalized(lo, FAMILY_DX, raw)
}
