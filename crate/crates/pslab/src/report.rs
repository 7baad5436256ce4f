//! Sweep orchestration and machine-readable run reports.
//!
//! A sweep samples one density pair per (dimension, trial) from the seeded
//! ensemble and evaluates the selected checks at every mixing weight. A
//! completed check that fails its contract is counted and its inputs are
//! attached to the report; only infrastructure problems (I/O, invalid
//! config) surface as errors. Reports are deterministic for a fixed config
//! apart from the timestamp.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::channel::{convolve_explicit, top_bound_identity_residual, MixingParameter};
use crate::classical::{
    check_classical_epi, differential_entropy, random_grid_density, scaled_convolution,
    GridDensity, MixingAngle,
};
use crate::epi::{check_epi, check_theorem1};
use crate::error::{Error, Result};
use crate::exterior::ky_fan_via_lift;
use crate::hermitian::{DensityMatrix, Spectrum};
use crate::majorization::{hlp_witness, DoublyStochasticWitness};
use crate::matrix::MatrixWire;
use crate::sample::{derived_seed, random_density};
use crate::tol;

/// Seed-derivation role of the first density input.
pub const ROLE_RHO: u64 = 0;
/// Seed-derivation role of the second density input.
pub const ROLE_SIGMA: u64 = 1;
/// Seed-derivation role of the first grid density in the classical bridge.
pub const ROLE_GRID_RHO: u64 = 2;
/// Seed-derivation role of the second grid density in the classical bridge.
pub const ROLE_GRID_SIGMA: u64 = 3;

/// The checks a sweep can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// Mixed input spectrum majorizes the output spectrum.
    Theorem1,
    /// Output entropy dominates the mixed input entropies.
    Epi,
    /// Top-bound decomposition is an exact identity.
    Lemma1,
    /// Prefix-sum inequalities through exterior lifts, every grade.
    Lift,
    /// Grid-density counterpart at the matching mixing angle.
    Classical,
}

impl CheckKind {
    pub const ALL: [CheckKind; 5] = [
        CheckKind::Theorem1,
        CheckKind::Epi,
        CheckKind::Lemma1,
        CheckKind::Lift,
        CheckKind::Classical,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CheckKind::Theorem1 => "theorem1",
            CheckKind::Epi => "epi",
            CheckKind::Lemma1 => "lemma1",
            CheckKind::Lift => "lift",
            CheckKind::Classical => "classical",
        }
    }
}

impl std::fmt::Display for CheckKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .iter()
            .find(|k| k.name() == s)
            .copied()
            .ok_or_else(|| {
                Error::ParameterRange(format!(
                    "unknown check '{s}'; expected one of theorem1, epi, lemma1, lift, classical"
                ))
            })
    }
}

/// Sweep parameters; the full report echoes this verbatim.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepConfig {
    pub seed: u64,
    pub dims: Vec<usize>,
    pub t_grid: Vec<f64>,
    pub trials: usize,
    pub checks: Vec<CheckKind>,
    /// Force sigma = rho, exercising the equality case.
    pub equal_pair: bool,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dims.is_empty() || self.dims.iter().any(|&d| d == 0) {
            return Err(Error::ParameterRange("dims must be non-empty positive integers".into()));
        }
        if self.t_grid.is_empty()
            || self.t_grid.iter().any(|&t| !t.is_finite() || !(0.0..=1.0).contains(&t))
        {
            return Err(Error::ParameterRange("t grid values must lie in [0, 1]".into()));
        }
        if self.trials == 0 {
            return Err(Error::ParameterRange("trials must be at least 1".into()));
        }
        if self.checks.is_empty() {
            return Err(Error::ParameterRange("at least one check is required".into()));
        }
        Ok(())
    }
}

/// Pass/fail tally for one check kind.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct CheckCounts {
    pub pass: u64,
    pub fail: u64,
}

/// Per-pair verdict, the unit the report and golden files store.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairVerdict {
    pub t: f64,
    pub dim: usize,
    pub prefix_gaps: Vec<f64>,
    pub entropy_gap: f64,
    pub equality: bool,
    pub seed: Option<u64>,
}

/// Inputs of a failed check, sufficient to replay it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FailingCase {
    pub check: CheckKind,
    pub t: f64,
    pub dim: usize,
    pub seed: Option<u64>,
    pub rho: Option<MatrixWire>,
    pub sigma: Option<MatrixWire>,
    pub detail: String,
}

/// Extremes across all evaluated cases.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
pub struct WorstGaps {
    /// Most negative prefix gap seen by the majorization check.
    pub min_prefix_gap: Option<f64>,
    /// Most negative entropy gap seen by the inequality check.
    pub min_entropy_gap: Option<f64>,
    /// Largest residual of the top-bound identity.
    pub max_identity_residual: Option<f64>,
}

impl WorstGaps {
    fn lower(slot: &mut Option<f64>, candidate: f64) {
        *slot = Some(slot.map_or(candidate, |v| v.min(candidate)));
    }

    fn raise(slot: &mut Option<f64>, candidate: f64) {
        *slot = Some(slot.map_or(candidate, |v| v.max(candidate)));
    }
}

/// Classical command outcome: the three entropies, the gap, and the
/// moment-transport residuals.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassicalOutcome {
    pub theta: f64,
    pub entropy_rho: f64,
    pub entropy_sigma: f64,
    pub entropy_out: f64,
    pub gap: f64,
    pub holds: bool,
    pub drift: f64,
    pub mean_residual: f64,
    pub variance_residual: f64,
}

/// Complete machine-readable run record.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    /// Milliseconds since the epoch; excluded from golden comparisons.
    pub timestamp_ms: u128,
    pub command: String,
    pub config: serde_json::Value,
    pub counts: BTreeMap<String, CheckCounts>,
    pub worst: WorstGaps,
    pub pair: Option<PairVerdict>,
    pub witness: Option<DoublyStochasticWitness>,
    pub classical: Option<ClassicalOutcome>,
    pub failures: Vec<FailingCase>,
}

impl RunReport {
    fn new(command: &str, config: serde_json::Value) -> Self {
        let timestamp_ms = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_millis())
            .unwrap_or(0);
        Self {
            timestamp_ms,
            command: command.to_string(),
            config,
            counts: BTreeMap::new(),
            worst: WorstGaps::default(),
            pair: None,
            witness: None,
            classical: None,
            failures: Vec::new(),
        }
    }

    pub fn total_failures(&self) -> u64 {
        self.counts.values().map(|c| c.fail).sum()
    }

    fn tally(&mut self, check: CheckKind, passed: bool) {
        let entry = self.counts.entry(check.name().to_string()).or_default();
        if passed {
            entry.pass += 1;
        } else {
            entry.fail += 1;
        }
    }
}

/// One evaluated check: pass/fail plus a failure description.
struct CaseOutcome {
    passed: bool,
    detail: String,
}

/// Runs the configured checks over the seeded ensemble.
pub fn cmd_sweep(config: &SweepConfig) -> Result<RunReport> {
    config.validate()?;
    let mut report = RunReport::new("sweep", serde_json::to_value(config)?);

    for &dim in &config.dims {
        for trial in 0..config.trials {
            let rho_seed = derived_seed(config.seed, dim, trial as u64, ROLE_RHO);
            let sigma_seed = derived_seed(config.seed, dim, trial as u64, ROLE_SIGMA);
            let rho = random_density(rho_seed, dim)?;
            let sigma = if config.equal_pair {
                rho.clone()
            } else {
                random_density(sigma_seed, dim)?
            };
            for &t_value in &config.t_grid {
                let t = MixingParameter::new(t_value)?;
                for &check in &config.checks {
                    let outcome = match check {
                        CheckKind::Theorem1 => eval_theorem1(&rho, &sigma, t, &mut report.worst),
                        CheckKind::Epi => eval_epi(&rho, &sigma, t, &mut report.worst),
                        CheckKind::Lemma1 => eval_lemma1(&rho, &sigma, t, &mut report.worst),
                        CheckKind::Lift => eval_lift(&rho, &sigma, t),
                        CheckKind::Classical => {
                            eval_classical_bridge(config.seed, dim, trial as u64, t_value)
                        }
                    };
                    report.tally(check, outcome.passed);
                    if !outcome.passed {
                        report.failures.push(FailingCase {
                            check,
                            t: t_value,
                            dim,
                            seed: Some(rho_seed),
                            rho: Some(rho.to_wire()),
                            sigma: Some(sigma.to_wire()),
                            detail: outcome.detail,
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

fn eval_theorem1(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    t: MixingParameter,
    worst: &mut WorstGaps,
) -> CaseOutcome {
    match check_theorem1(rho, sigma, t) {
        Ok(verdict) => {
            let min_gap = verdict.min_prefix_gap();
            WorstGaps::lower(&mut worst.min_prefix_gap, min_gap);
            CaseOutcome {
                passed: verdict.holds,
                detail: format!("minimum prefix gap {min_gap:e}"),
            }
        }
        Err(e) => CaseOutcome { passed: false, detail: e.to_string() },
    }
}

fn eval_epi(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    t: MixingParameter,
    worst: &mut WorstGaps,
) -> CaseOutcome {
    match check_epi(rho, sigma, t) {
        Ok(check) => {
            WorstGaps::lower(&mut worst.min_entropy_gap, check.gap);
            CaseOutcome { passed: check.holds, detail: format!("entropy gap {:e}", check.gap) }
        }
        Err(e) => CaseOutcome { passed: false, detail: e.to_string() },
    }
}

fn eval_lemma1(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    t: MixingParameter,
    worst: &mut WorstGaps,
) -> CaseOutcome {
    match top_bound_identity_residual(rho.hermitian(), sigma.hermitian(), t) {
        Ok(residual) => {
            WorstGaps::raise(&mut worst.max_identity_residual, residual);
            CaseOutcome {
                passed: residual <= tol::scaled(tol::IDENTITY_RESIDUAL),
                detail: format!("identity residual {residual:e}"),
            }
        }
        Err(e) => CaseOutcome { passed: false, detail: e.to_string() },
    }
}

fn eval_lift(rho: &DensityMatrix, sigma: &DensityMatrix, t: MixingParameter) -> CaseOutcome {
    let top_tol = tol::scaled(tol::LIFT_TOP_SUM);
    let residual_tol = tol::scaled(tol::LIFT_COMMUTATOR);
    for k in 1..=rho.dim() {
        match ky_fan_via_lift(rho, sigma, t, k) {
            Ok(check) => {
                if check.lhs > check.rhs + top_tol {
                    return CaseOutcome {
                        passed: false,
                        detail: format!(
                            "grade {k}: prefix sum {:.17e} exceeds bound {:.17e}",
                            check.lhs, check.rhs
                        ),
                    };
                }
                if check.channel_lift_residual > residual_tol {
                    return CaseOutcome {
                        passed: false,
                        detail: format!(
                            "grade {k}: lift/channel residual {:e}",
                            check.channel_lift_residual
                        ),
                    };
                }
            }
            Err(e) => {
                return CaseOutcome { passed: false, detail: format!("grade {k}: {e}") };
            }
        }
    }
    CaseOutcome { passed: true, detail: String::new() }
}

/// Classical counterpart at the angle with `cos^2(theta) = t`. Endpoint
/// weights have no interior angle and the statement is trivially an
/// equality, so they count as passes. The dimension only salts the grid
/// seeds.
fn eval_classical_bridge(seed: u64, dim: usize, trial: u64, t_value: f64) -> CaseOutcome {
    if t_value == 0.0 || t_value == 1.0 {
        return CaseOutcome { passed: true, detail: String::new() };
    }
    let run = || -> Result<CaseOutcome> {
        let theta = MixingAngle::from_mixing_weight(t_value)?;
        let rho = random_grid_density(derived_seed(seed, dim, trial, ROLE_GRID_RHO))?;
        let sigma = random_grid_density(derived_seed(seed, dim, trial, ROLE_GRID_SIGMA))?;
        let check = check_classical_epi(&rho, &sigma, theta)?;
        Ok(CaseOutcome {
            passed: check.holds,
            detail: format!("classical gap {:e}, drift {:e}", check.gap, check.drift),
        })
    };
    run().unwrap_or_else(|e| CaseOutcome { passed: false, detail: e.to_string() })
}

/// Evaluates one pair loaded from matrix JSON files.
pub fn cmd_check_pair(
    rho_path: &Path,
    sigma_path: &Path,
    t_value: f64,
    want_witness: bool,
) -> Result<RunReport> {
    let rho = DensityMatrix::read_file(rho_path)?;
    let sigma = DensityMatrix::read_file(sigma_path)?;
    let t = MixingParameter::new(t_value)?;
    let config = serde_json::json!({
        "rho": rho_path.display().to_string(),
        "sigma": sigma_path.display().to_string(),
        "t": t_value,
        "witness": want_witness,
    });
    let mut report = RunReport::new("check-pair", config);

    let verdict = check_theorem1(&rho, &sigma, t)?;
    let epi = check_epi(&rho, &sigma, t)?;
    WorstGaps::lower(&mut report.worst.min_prefix_gap, verdict.min_prefix_gap());
    WorstGaps::lower(&mut report.worst.min_entropy_gap, epi.gap);
    report.tally(CheckKind::Theorem1, verdict.holds);
    report.tally(CheckKind::Epi, epi.holds);
    for (check, passed, detail) in [
        (CheckKind::Theorem1, verdict.holds, format!("minimum prefix gap {:e}", verdict.min_prefix_gap())),
        (CheckKind::Epi, epi.holds, format!("entropy gap {:e}", epi.gap)),
    ] {
        if !passed {
            report.failures.push(FailingCase {
                check,
                t: t_value,
                dim: rho.dim(),
                seed: None,
                rho: Some(rho.to_wire()),
                sigma: Some(sigma.to_wire()),
                detail,
            });
        }
    }
    report.pair = Some(PairVerdict {
        t: t_value,
        dim: rho.dim(),
        prefix_gaps: verdict.prefix_gaps.clone(),
        entropy_gap: epi.gap,
        equality: verdict.is_equality,
        seed: None,
    });
    if want_witness {
        let out = convolve_explicit(&rho, &sigma, t)?;
        let mixed = Spectrum::mix(rho.spectrum(), sigma.spectrum(), t.t())?;
        report.witness = Some(hlp_witness(out.spectrum(), &mixed)?);
    }
    Ok(report)
}

/// Evaluates the classical inequality for two grid-density JSON files.
pub fn cmd_classical(rho_path: &Path, sigma_path: &Path, theta_value: f64) -> Result<RunReport> {
    let rho = GridDensity::read_file(rho_path)?;
    let sigma = GridDensity::read_file(sigma_path)?;
    let theta = MixingAngle::new(theta_value)?;
    let config = serde_json::json!({
        "rho": rho_path.display().to_string(),
        "sigma": sigma_path.display().to_string(),
        "theta": theta_value,
    });
    let mut report = RunReport::new("classical", config);

    let out = scaled_convolution(&rho, &sigma, theta)?;
    let entropy_rho = differential_entropy(&rho);
    let entropy_sigma = differential_entropy(&sigma);
    let entropy_out = differential_entropy(&out.density);
    let (c2, s2) = (theta.cos() * theta.cos(), theta.sin() * theta.sin());
    let gap = entropy_out - c2 * entropy_rho - s2 * entropy_sigma;
    let holds = gap >= -tol::scaled(tol::CLASSICAL_GAP);
    let mean_residual = (out.density.mean()
        - theta.cos() * rho.mean()
        - theta.sin() * sigma.mean())
    .abs();
    let variance_residual =
        (out.density.variance() - c2 * rho.variance() - s2 * sigma.variance()).abs();
    report.tally(CheckKind::Classical, holds);
    if !holds {
        report.failures.push(FailingCase {
            check: CheckKind::Classical,
            t: theta_value,
            dim: 1,
            seed: None,
            rho: None,
            sigma: None,
            detail: format!("mixing angle {theta_value}: classical gap {gap:e}"),
        });
    }
    report.classical = Some(ClassicalOutcome {
        theta: theta_value,
        entropy_rho,
        entropy_sigma,
        entropy_out,
        gap,
        holds,
        drift: out.drift,
        mean_residual,
        variance_residual,
    });
    Ok(report)
}

/// Report serialized with full-precision floats, for stdout and goldens.
pub fn render_report(report: &RunReport) -> Result<String> {
    crate::jsonio::to_string_full(report)
}

/// Parsed report with the timestamp removed, for determinism comparisons.
pub fn comparable_value(rendered: &str) -> Result<serde_json::Value> {
    let mut value: serde_json::Value = serde_json::from_str(rendered)?;
    if let Some(obj) = value.as_object_mut() {
        obj.remove("timestamp_ms");
    }
    Ok(value)
}
