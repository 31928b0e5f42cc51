//! Pass/fail evaluation of the per-run checks.
//!
//! Every check reduces the run to one number, the `worst` value, and passes
//! when `worst ≤ limit`. Rates are fitted log-slopes, so their limits are
//! negative.

use std::fmt;

use curveflow::bounds::{
    derivative_ladder, fit_log_slope, kappa_monotonicity_violation, kappa_range_violation,
    DerivativeSample, LadderConfig,
};
use curveflow::BoundsError;
use serde::{Deserialize, Serialize};

use crate::config::Mode;

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, clap::ValueEnum,
)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    /// Largest deficit `max(0, −min Z)` of the chord-arc comparison.
    MinZ,
    /// Largest excess of `κ_max²` over `1 + 2e^{−2(t−t̄)}`.
    CurvatureBound,
    /// Largest excursion of κ outside its initial range.
    KappaRange,
    /// Largest increase of `κ_max` or decrease of `κ_min` between snapshots.
    KappaMonotone,
    /// Largest excess of `∫(κ−1)² ds` over `2e^{−2(t−t̄)}`.
    L2Deficit,
    /// Log-slope of the `L²` deficit over `t ∈ [1, 5]`.
    DeficitRate,
    /// Log-slope of the Bonnesen gap over `t ∈ [1, 4]`.
    BonnesenRate,
    /// `max|κ − 1|` at the final snapshot.
    KappaConvergence,
    /// Radial distance to the unit circle at the final snapshot.
    Hausdorff,
    /// Scaled derivative norms over their calibrated constants.
    DerivativeBound,
    /// Log-slope of `max|Dκ|` over `t ∈ [2, 5]`.
    DerivativeRate,
    /// Gagliardo–Nirenberg ratio over its value at `t = 0.5`, on `[0.5, 4]`.
    GnBounded,
    /// Relative deviation of the unnormalized length from `L(0)e^τ`.
    LengthLaw,
    /// Hausdorff distance between the two formulations.
    CrossCheck,
}

impl CheckName {
    pub const ALL: [CheckName; 14] = [
        CheckName::MinZ,
        CheckName::CurvatureBound,
        CheckName::KappaRange,
        CheckName::KappaMonotone,
        CheckName::L2Deficit,
        CheckName::DeficitRate,
        CheckName::BonnesenRate,
        CheckName::KappaConvergence,
        CheckName::Hausdorff,
        CheckName::DerivativeBound,
        CheckName::DerivativeRate,
        CheckName::GnBounded,
        CheckName::LengthLaw,
        CheckName::CrossCheck,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::MinZ => "min_z",
            CheckName::CurvatureBound => "curvature_bound",
            CheckName::KappaRange => "kappa_range",
            CheckName::KappaMonotone => "kappa_monotone",
            CheckName::L2Deficit => "l2_deficit",
            CheckName::DeficitRate => "deficit_rate",
            CheckName::BonnesenRate => "bonnesen_rate",
            CheckName::KappaConvergence => "kappa_convergence",
            CheckName::Hausdorff => "hausdorff",
            CheckName::DerivativeBound => "derivative_bound",
            CheckName::DerivativeRate => "derivative_rate",
            CheckName::GnBounded => "gn_bounded",
            CheckName::LengthLaw => "length_law",
            CheckName::CrossCheck => "cross_check",
        }
    }

    pub fn default_limit(self) -> f64 {
        match self {
            CheckName::MinZ => 5e-3,
            CheckName::CurvatureBound => 1e-2,
            CheckName::KappaRange => 1e-3,
            CheckName::KappaMonotone => 1e-6,
            CheckName::L2Deficit => 1e-3,
            CheckName::DeficitRate => -1.8,
            CheckName::BonnesenRate => -0.8,
            CheckName::KappaConvergence => 0.02,
            CheckName::Hausdorff => 0.02,
            CheckName::DerivativeBound => 1.5,
            CheckName::DerivativeRate => -0.3,
            CheckName::GnBounded => 10.0,
            CheckName::LengthLaw => 1e-2,
            CheckName::CrossCheck => 5e-3,
        }
    }

    /// Shortest horizon at which the check is enabled by default: the end
    /// of its fit window, or the time its limit refers to.
    fn horizon(self) -> f64 {
        match self {
            CheckName::DeficitRate
            | CheckName::KappaConvergence
            | CheckName::Hausdorff
            | CheckName::DerivativeBound
            | CheckName::DerivativeRate => 5.0,
            CheckName::BonnesenRate | CheckName::GnBounded => 4.0,
            _ => 0.0,
        }
    }

    fn applies_to(self, mode: Mode) -> bool {
        match self {
            CheckName::LengthLaw => mode != Mode::Normalized,
            CheckName::CrossCheck => mode == Mode::Both,
            _ => true,
        }
    }

    /// Checks enabled when the configuration does not list any.
    pub fn defaults(mode: Mode, t_end: f64) -> Vec<CheckName> {
        CheckName::ALL
            .into_iter()
            .filter(|c| c.applies_to(mode) && t_end >= c.horizon() - 1e-9)
            .collect()
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: CheckName,
    pub status: Status,
    pub worst: f64,
    pub limit: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    fn new(name: CheckName, worst: f64, limit: f64) -> Self {
        let status = if worst <= limit { Status::Pass } else { Status::Fail };
        CheckResult {
            name,
            status,
            worst,
            limit,
            note: None,
        }
    }

    fn failed(name: CheckName, limit: f64, note: String) -> Self {
        CheckResult {
            name,
            status: Status::Fail,
            worst: f64::NAN,
            limit,
            note: Some(note),
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// One CSV row: the values of a snapshot of the normalized curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub t: f64,
    pub length: f64,
    pub kappa_min: f64,
    pub kappa_max: f64,
    pub min_z: f64,
    pub tbar: f64,
    pub thm12_residual: f64,
    pub l2_deficit: f64,
    pub dkappa_max: f64,
    pub d2kappa_max: f64,
    pub gn_ratio: Option<f64>,
    pub bonnesen_gap: f64,
    pub hausdorff: f64,
    pub center_norm: f64,
    /// Rounding-noise estimate of `max|Dκ|` on this mesh.
    pub dkappa_noise: f64,
}

/// Everything the checks read.
#[derive(Debug, Clone, Default)]
pub struct History {
    pub rows: Vec<Row>,
    /// Mesh spacing `2π/n` of the normalized curve.
    pub h: f64,
    /// Values at or below these are discretization floors, not signal.
    pub deficit_floor: f64,
    pub gap_floor: f64,
    /// `(τ, L)` of the unnormalized flow, when it ran.
    pub lengths: Vec<(f64, f64)>,
    pub cross_check: Option<f64>,
}

const EPS_T: f64 = 1e-9;

fn in_window(t: f64, (lo, hi): (f64, f64)) -> bool {
    t >= lo - EPS_T && t <= hi + EPS_T
}

/// A log-slope check. Samples at or below `floor` are excluded; a window
/// that the run covers but whose values are all at the floor passes, since
/// the quantity has already decayed as far as the mesh can resolve.
fn rate_check(
    name: CheckName,
    limit: f64,
    samples: &[(f64, f64)],
    window: (f64, f64),
    floor: f64,
) -> CheckResult {
    match fit_log_slope(samples, window, floor) {
        Ok(fit) => CheckResult::new(name, fit.slope, limit)
            .with_note(format!("{} samples above the floor {floor:.3e}", fit.points)),
        Err(BoundsError::InsufficientData { .. }) => {
            let covered = samples.iter().filter(|s| in_window(s.0, window)).count();
            if covered >= 2 {
                CheckResult {
                    name,
                    status: Status::Pass,
                    worst: f64::NAN,
                    limit,
                    note: Some(format!("all samples at or below the floor {floor:.3e}")),
                }
            } else {
                CheckResult::failed(
                    name,
                    limit,
                    format!("run does not cover the window [{}, {}]", window.0, window.1),
                )
            }
        }
        Err(e) => CheckResult::failed(name, limit, e.to_string()),
    }
}

fn max_of(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(0.0, f64::max)
}

/// Second-derivative noise: one more difference quotient than `Dκ`.
fn d2_noise(row: &Row, h: f64) -> f64 {
    row.dkappa_noise / h
}

/// Derivative samples with values inside the rounding noise set to zero.
fn derivative_samples(history: &History) -> Vec<DerivativeSample> {
    history
        .rows
        .iter()
        .map(|r| DerivativeSample {
            time: r.t,
            dkappa_max: if r.dkappa_max > r.dkappa_noise { r.dkappa_max } else { 0.0 },
            d2kappa_max: if r.d2kappa_max > d2_noise(r, history.h) { r.d2kappa_max } else { 0.0 },
        })
        .collect()
}

pub fn evaluate(name: CheckName, limit: f64, history: &History) -> CheckResult {
    let rows = &history.rows;
    if rows.is_empty() && !matches!(name, CheckName::LengthLaw | CheckName::CrossCheck) {
        return CheckResult::failed(name, limit, "no snapshots".into());
    }
    match name {
        CheckName::MinZ => {
            let min = rows.iter().map(|r| r.min_z).fold(f64::INFINITY, f64::min);
            CheckResult::new(name, (-min).max(0.0), limit)
                .with_note(format!("smallest min_Z {min:.6e}"))
        }
        CheckName::CurvatureBound => {
            CheckResult::new(name, max_of(rows.iter().map(|r| r.thm12_residual)), limit)
        }
        CheckName::KappaRange | CheckName::KappaMonotone => {
            let extremes: Vec<(f64, f64)> =
                rows.iter().map(|r| (r.kappa_min, r.kappa_max)).collect();
            let worst = if name == CheckName::KappaRange {
                kappa_range_violation(&extremes)
            } else {
                kappa_monotonicity_violation(&extremes)
            };
            CheckResult::new(name, worst, limit)
        }
        CheckName::L2Deficit => {
            let excess = rows.iter().map(|r| {
                r.l2_deficit - 2.0 * (-2.0 * (r.t - r.tbar)).exp()
            });
            CheckResult::new(name, max_of(excess), limit)
        }
        CheckName::DeficitRate => {
            let s: Vec<(f64, f64)> = rows.iter().map(|r| (r.t, r.l2_deficit)).collect();
            rate_check(name, limit, &s, (1.0, 5.0), history.deficit_floor)
        }
        CheckName::BonnesenRate => {
            let s: Vec<(f64, f64)> = rows.iter().map(|r| (r.t, r.bonnesen_gap)).collect();
            rate_check(name, limit, &s, (1.0, 4.0), history.gap_floor)
        }
        CheckName::KappaConvergence => {
            let last = rows[rows.len() - 1];
            let worst = (last.kappa_max - 1.0).max(1.0 - last.kappa_min);
            CheckResult::new(name, worst, limit).with_note(format!("at t = {}", last.t))
        }
        CheckName::Hausdorff => {
            let last = rows[rows.len() - 1];
            CheckResult::new(name, last.hausdorff, limit).with_note(format!("at t = {}", last.t))
        }
        CheckName::DerivativeBound => {
            let config = LadderConfig::default();
            match derivative_ladder(&derivative_samples(history), &config) {
                Ok(r) => CheckResult::new(name, r.dkappa_ratio.max(r.d2kappa_ratio), limit)
                    .with_note(format!(
                        "Dκ ratio {:.4}, D²κ ratio {:.4}",
                        r.dkappa_ratio, r.d2kappa_ratio
                    )),
                Err(e) => CheckResult::failed(name, limit, e.to_string()),
            }
        }
        CheckName::DerivativeRate => {
            let s: Vec<(f64, f64)> = derivative_samples(history)
                .iter()
                .map(|d| (d.time, d.dkappa_max))
                .collect();
            rate_check(name, limit, &s, LadderConfig::default().slope_window, 0.0)
        }
        CheckName::GnBounded => gn_check(name, limit, rows),
        CheckName::LengthLaw => match curveflow::flow::length_law_residual(&history.lengths) {
            Ok(r) => CheckResult::new(name, r, limit),
            Err(e) => CheckResult::failed(name, limit, e.to_string()),
        },
        CheckName::CrossCheck => match history.cross_check {
            Some(d) => CheckResult::new(name, d, limit),
            None => CheckResult::failed(name, limit, "the cross-check needs mode \"both\"".into()),
        },
    }
}

fn gn_check(name: CheckName, limit: f64, rows: &[Row]) -> CheckResult {
    let window = (0.5, 4.0);
    let inside: Vec<&Row> = rows.iter().filter(|r| in_window(r.t, window)).collect();
    let Some(first) = inside.first() else {
        return CheckResult::failed(name, limit, "run does not reach t = 0.5".into());
    };
    let values: Vec<f64> = inside.iter().filter_map(|r| r.gn_ratio).collect();
    match first.gn_ratio {
        Some(base) => {
            let sup = values.iter().copied().fold(0.0, f64::max);
            CheckResult::new(name, sup / base, limit)
                .with_note(format!("baseline {base:.6e} at t = {}", first.t))
        }
        None if values.is_empty() => CheckResult {
            name,
            status: Status::Pass,
            worst: f64::NAN,
            limit,
            note: Some("ratio below its noise floor throughout".into()),
        },
        None => CheckResult::failed(name, limit, "no baseline at the start of the window".into()),
    }
}
