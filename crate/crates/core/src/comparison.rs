//! The chord–arc comparison profile and the two-point function.
//!
//! The profile is
//!
//! ```text
//! f(x, t) = 2 e^t arctan(e^{-t} sin(x/2)),   x ∈ [0, 2π], t ∈ ℝ,
//! ```
//!
//! and along a normalized flow with offset `t̄` every pair of curve points
//! satisfies `d ≥ f(l, t − t̄)`, where `d` is the chord and `l` the arc
//! between them. This module evaluates `f`, its derivatives, the operator
//! `Lf = (f′² − 1)/f″ − f − ∂f/∂t` and the derivative of `Lf`, checks their
//! sign certificates on grids, finds the smallest admissible offset for a
//! given curve and scans the two-point function `Z = d − f(l, t − t̄)`.
//!
//! Everything is written in terms of `z = sin(x/2)` and `w = e^{-t} z`, with
//! `ln w` used to pick a branch, so no intermediate overflows for large `|t|`.

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use crate::curve::{compute_metrics, CurveMetrics, DiscreteCurve};
use crate::error::ProfileError;

/// Above this value of `w = e^{-t} sin(x/2)` the arctangent is replaced by
/// its expansion `π/2 − 1/w`.
const ARCTAN_ASYMPTOTIC: f64 = 1e8;
/// Below this value `arctan(w)/w` and `g(w)/w` use their Taylor series.
const SMALL_W: f64 = 0.1;

/// Smallest `x` at which `Lf` is evaluated by formula; the value at `0` is
/// the limit `0`.
pub const LF_X_MIN: f64 = 1e-6;

/// Relative length tolerance for curves handed to the comparison routines.
pub const LENGTH_TOLERANCE: f64 = 1e-8;

/// Arguments of the profile: arc-length `x` and profile time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileParams {
    pub x: f64,
    pub t: f64,
}

impl ProfileParams {
    pub fn new(x: f64, t: f64) -> Self {
        ProfileParams { x, t }
    }
}

fn check_domain(x: f64, lo: f64, hi: f64) -> Result<(), ProfileError> {
    if x >= lo && x <= hi {
        Ok(())
    } else {
        Err(ProfileError::Domain { x, lo, hi })
    }
}

fn check_t(t: f64) -> Result<(), ProfileError> {
    if t.is_finite() {
        Ok(())
    } else {
        Err(ProfileError::Parameter(format!("profile time {t} is not finite")))
    }
}

/// Quantities shared by every profile formula.
#[derive(Debug, Clone, Copy)]
struct Terms {
    /// `sin(x/2)`
    z: f64,
    /// `cos(x/2)`
    c: f64,
    /// `ln(e^{-t} z)`, `-∞` when `z = 0`.
    ln_w: f64,
    /// `1 / (1 + w²)`
    q: f64,
    /// `w² / (1 + w²)`
    p: f64,
}

impl Terms {
    fn new(x: f64, t: f64) -> Self {
        let (z, c) = (0.5 * x).sin_cos();
        let z = z.max(0.0);
        let ln_w = if z > 0.0 { z.ln() - t } else { f64::NEG_INFINITY };
        let (q, p) = if ln_w > 0.0 {
            let e = (-2.0 * ln_w).exp();
            (e / (1.0 + e), 1.0 / (1.0 + e))
        } else {
            let e = (2.0 * ln_w).exp();
            (1.0 / (1.0 + e), e / (1.0 + e))
        };
        Terms { z, c, ln_w, q, p }
    }

    fn w(&self) -> f64 {
        self.ln_w.exp()
    }

    fn asymptotic(&self) -> bool {
        self.ln_w > ARCTAN_ASYMPTOTIC.ln()
    }
}

/// `arctan(w) / w` for `w ≥ 0`.
fn arctan_ratio(w: f64) -> f64 {
    if w < SMALL_W {
        let w2 = w * w;
        // Σ (-1)^k w^{2k} / (2k+1)
        let mut sum = 0.0;
        let mut power = 1.0;
        for k in 0..12 {
            let term = power / (2 * k + 1) as f64;
            sum += if k % 2 == 0 { term } else { -term };
            power *= w2;
        }
        sum
    } else {
        w.atan() / w
    }
}

/// `g(w) / w` where `g(w) = arctan w − w / (1 + w²)`.
fn g_ratio(w: f64) -> f64 {
    if w < SMALL_W {
        let w2 = w * w;
        // Σ_{k≥1} (-1)^{k+1} 2k/(2k+1) w^{2k}
        let mut sum = 0.0;
        let mut power = w2;
        for k in 1..13 {
            let term = 2.0 * k as f64 / (2 * k + 1) as f64 * power;
            sum += if k % 2 == 1 { term } else { -term };
            power *= w2;
        }
        sum
    } else {
        (w.atan() - w / (1.0 + w * w)) / w
    }
}

/// `g(z) = arctan z − z / (1 + z²)`, the time-derivative kernel of the
/// profile. Non-negative for `z ≥ 0`.
pub fn g(z: f64) -> f64 {
    if z == 0.0 {
        0.0
    } else if z.abs() < SMALL_W {
        z * g_ratio(z.abs())
    } else {
        z.atan() - z / (1.0 + z * z)
    }
}

fn f_raw(x: f64, t: f64) -> f64 {
    let k = Terms::new(x, t);
    if k.z == 0.0 {
        0.0
    } else if k.asymptotic() {
        PI * t.exp() - 2.0 * (2.0 * t).exp() / k.z
    } else {
        2.0 * k.z * arctan_ratio(k.w())
    }
}

fn f_t_raw(x: f64, t: f64) -> f64 {
    let k = Terms::new(x, t);
    if k.z == 0.0 {
        0.0
    } else if k.asymptotic() {
        PI * t.exp() - 4.0 * (2.0 * t).exp() / k.z
    } else {
        2.0 * k.z * g_ratio(k.w())
    }
}

fn lf_raw(x: f64, t: f64) -> f64 {
    let k = Terms::new(x, t);
    let z = k.z;
    let first = if t <= 0.0 {
        // numerator and denominator divided by α = e^{-2t}; α z² = w²
        let beta = (2.0 * t).exp();
        2.0 * z * (beta + 2.0 + k.p / k.q) / (beta + 2.0 - z * z)
    } else {
        let alpha = (-2.0 * t).exp();
        2.0 * z * (1.0 + 2.0 * alpha + alpha * alpha * z * z) / (1.0 + 2.0 * alpha - alpha * z * z)
    };
    first - 2.0 * f_raw(x, t) + 2.0 * z * k.q
}

fn d_lf_raw(x: f64, t: f64) -> f64 {
    let k = Terms::new(x, t);
    let (z, c) = (k.z, k.c);
    let head = -c * k.q - 2.0 * c * k.p * k.q;
    let tail = if t <= 0.0 {
        let beta = (2.0 * t).exp();
        let w2 = if k.q > 0.0 { k.p / k.q } else { f64::INFINITY };
        let den = beta + 2.0 - z * z;
        c * (beta + 2.0 + 3.0 * w2) / den + 2.0 * z * z * c * (beta + 2.0 + w2) / (den * den)
    } else {
        let alpha = (-2.0 * t).exp();
        let den = 1.0 + 2.0 * alpha - alpha * z * z;
        c * (1.0 + 2.0 * alpha + 3.0 * alpha * alpha * z * z) / den
            + 2.0 * alpha * z * z * c * (1.0 + 2.0 * alpha + alpha * alpha * z * z) / (den * den)
    };
    head + tail
}

/// `f(x, t) = 2 e^t arctan(e^{-t} sin(x/2))` for `x ∈ [0, 2π]`.
pub fn f_value(p: ProfileParams) -> Result<f64, ProfileError> {
    check_domain(p.x, 0.0, TAU)?;
    check_t(p.t)?;
    Ok(f_raw(p.x, p.t))
}

/// `∂f/∂x = cos(x/2) / (1 + e^{-2t} sin²(x/2))`.
pub fn f_x(p: ProfileParams) -> Result<f64, ProfileError> {
    check_domain(p.x, 0.0, TAU)?;
    check_t(p.t)?;
    let k = Terms::new(p.x, p.t);
    Ok(k.c * k.q)
}

/// `∂²f/∂x² = −½ sin(x/2) / (1 + αs²) − α cos²(x/2) sin(x/2) / (1 + αs²)²`
/// with `α = e^{-2t}`, `s = sin(x/2)`.
pub fn f_xx(p: ProfileParams) -> Result<f64, ProfileError> {
    check_domain(p.x, 0.0, TAU)?;
    check_t(p.t)?;
    let k = Terms::new(p.x, p.t);
    if k.z == 0.0 {
        return Ok(0.0);
    }
    Ok(-0.5 * k.z * k.q - k.q * k.p * k.c * k.c / k.z)
}

/// `∂f/∂t = 2 e^t g(e^{-t} sin(x/2))`.
pub fn f_t(p: ProfileParams) -> Result<f64, ProfileError> {
    check_domain(p.x, 0.0, TAU)?;
    check_t(p.t)?;
    Ok(f_t_raw(p.x, p.t))
}

/// `Lf(x, t) = (f′² − 1)/f″ − f − ∂f/∂t` on `x ∈ (0, π]`, evaluated through
/// its simplified closed form
///
/// ```text
/// Lf = 2s(1 + 2α + α²s²) / (1 + 2α − αs²) − 4e^t arctan(e^{-t}s) + 2s / (1 + αs²).
/// ```
///
/// At `x = 0` the quotient is indeterminate; the limit is `0` and this
/// function reports [`ProfileError::Singularity`] instead of evaluating it.
pub fn lf_value(p: ProfileParams) -> Result<f64, ProfileError> {
    check_t(p.t)?;
    if p.x == 0.0 {
        return Err(ProfileError::Singularity);
    }
    check_domain(p.x, 0.0, PI)?;
    Ok(lf_raw(p.x, p.t))
}

/// Closed form of `∂Lf/∂x` on `x ∈ (0, π]`.
pub fn d_lf_value(p: ProfileParams) -> Result<f64, ProfileError> {
    check_t(p.t)?;
    if p.x == 0.0 {
        return Err(ProfileError::Singularity);
    }
    check_domain(p.x, 0.0, PI)?;
    Ok(d_lf_raw(p.x, p.t))
}

/// The degree-8 polynomial in `z` whose sign certifies `∂Lf/∂x ≥ 0`:
///
/// ```text
/// A = (2α + 5α² + 2α³) z² + (8α² + 25α³ + 16α⁴) z⁴ + (−2α³ + 3α⁴ + 6α⁵) z⁶ − α⁵ z⁸
/// ```
///
/// with `z = sin(x/2) ∈ [0, 1]` and `α = e^{-2t} > 0`.
pub fn a_polynomial(z: f64, alpha: f64) -> Result<f64, ProfileError> {
    check_domain(z, 0.0, 1.0)?;
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(ProfileError::Parameter(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    let a2 = alpha * alpha;
    let a3 = a2 * alpha;
    let a4 = a3 * alpha;
    let a5 = a4 * alpha;
    let c1 = 2.0 * alpha + 5.0 * a2 + 2.0 * a3;
    let c2 = 8.0 * a2 + 25.0 * a3 + 16.0 * a4;
    let c3 = -2.0 * a3 + 3.0 * a4 + 6.0 * a5;
    let c4 = -a5;
    let u = z * z;
    Ok(u * (c1 + u * (c2 + u * (c3 + u * c4))))
}

/// A rectangular `(x, t)` grid with inclusive bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub x_step: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub t_step: f64,
}

impl Default for ProfileGrid {
    fn default() -> Self {
        ProfileGrid {
            x_min: 1e-3,
            x_max: PI,
            x_step: 1e-3,
            t_min: -5.0,
            t_max: 5.0,
            t_step: 0.01,
        }
    }
}

/// `lo, lo + step, …` up to `hi`, with `hi` itself appended when the steps
/// do not land on it.
pub fn grid_axis(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    let mut axis: Vec<f64> = (0..=count).map(|k| lo + k as f64 * step).collect();
    if let Some(&last) = axis.last() {
        if hi - last > 1e-12 * step.max(hi.abs()) {
            axis.push(hi);
        } else if let Some(l) = axis.last_mut() {
            *l = hi;
        }
    }
    axis
}

impl ProfileGrid {
    /// Validates the grid for the `Lf` checks: `0 < x_min ≤ x_max ≤ π`.
    pub fn validate(&self) -> Result<(), ProfileError> {
        for (name, step) in [("x_step", self.x_step), ("t_step", self.t_step)] {
            if !(step > 0.0 && step.is_finite()) {
                return Err(ProfileError::Parameter(format!(
                    "{name} must be positive, got {step}"
                )));
            }
        }
        if self.x_min <= 0.0 || self.x_min > self.x_max {
            return Err(ProfileError::Parameter(format!(
                "need 0 < x_min ≤ x_max, got [{}, {}]",
                self.x_min, self.x_max
            )));
        }
        check_domain(self.x_max, 0.0, PI)?;
        if !(self.t_min <= self.t_max && self.t_min.is_finite() && self.t_max.is_finite()) {
            return Err(ProfileError::Parameter(format!(
                "invalid t range [{}, {}]",
                self.t_min, self.t_max
            )));
        }
        Ok(())
    }

    pub fn xs(&self) -> Vec<f64> {
        grid_axis(self.x_min, self.x_max, self.x_step)
    }

    pub fn ts(&self) -> Vec<f64> {
        grid_axis(self.t_min, self.t_max, self.t_step)
    }

    pub fn node_count(&self) -> usize {
        self.xs().len() * self.ts().len()
    }
}

/// Location and value of a grid minimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridMinimum {
    pub value: f64,
    pub x: f64,
    pub t: f64,
}

#[derive(Clone, Copy)]
struct Candidate {
    value: f64,
    i: usize,
    j: usize,
}

impl Candidate {
    const NONE: Candidate = Candidate {
        value: f64::INFINITY,
        i: usize::MAX,
        j: usize::MAX,
    };

    fn new(value: f64, i: usize, j: usize) -> Self {
        // NaN is treated as a violation so it can never hide.
        let value = if value.is_nan() { f64::NEG_INFINITY } else { value };
        Candidate { value, i, j }
    }

    /// Smaller value wins; ties go to the lexicographically first index pair,
    /// so parallel reductions match the sequential scan exactly.
    fn min(self, other: Candidate) -> Candidate {
        match self.value.partial_cmp(&other.value) {
            Some(Ordering::Less) => self,
            Some(Ordering::Greater) => other,
            _ => {
                if (self.i, self.j) <= (other.i, other.j) {
                    self
                } else {
                    other
                }
            }
        }
    }
}

fn grid_min<F>(xs: &[f64], ts: &[f64], eval: F) -> GridMinimum
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let best = xs
        .par_iter()
        .enumerate()
        .map(|(i, &x)| {
            ts.iter()
                .enumerate()
                .fold(Candidate::NONE, |acc, (j, &t)| acc.min(Candidate::new(eval(x, t), i, j)))
        })
        .reduce(|| Candidate::NONE, Candidate::min);
    GridMinimum {
        value: best.value,
        x: xs[best.i],
        t: ts[best.j],
    }
}

/// Minimum of `Lf` over the grid.
pub fn lf_grid_check(grid: &ProfileGrid) -> Result<GridMinimum, ProfileError> {
    grid.validate()?;
    Ok(grid_min(&grid.xs(), &grid.ts(), lf_raw))
}

/// `Lf(x, t)` at `x = LF_X_MIN` for each `t`, which should vanish with `x`.
pub fn lf_near_zero(ts: &[f64]) -> Vec<f64> {
    ts.iter().map(|&t| lf_raw(LF_X_MIN, t)).collect()
}

/// Step used for finite differences of `Lf` in `x`.
pub const D_LF_STEP: f64 = 1e-5;

/// Result of [`d_lf_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DLfCheck {
    /// Minimum of the central difference of `Lf` in `x`.
    pub min_finite_difference: GridMinimum,
    /// Minimum of the closed form of `∂Lf/∂x`.
    pub min_closed_form: GridMinimum,
    /// Largest `|fd − closed| / max(1, |closed|)` over the grid.
    pub max_disagreement: f64,
}

/// Central difference of `Lf` in `x` with step [`D_LF_STEP`]. `Lf` is
/// symmetric about `x = π`, so the stencil may straddle `π`.
pub fn d_lf_finite_difference(x: f64, t: f64) -> f64 {
    let h = D_LF_STEP.min(0.5 * x);
    (lf_raw(x + h, t) - lf_raw(x - h, t)) / (2.0 * h)
}

/// Minimum over the grid of `∂Lf/∂x`, by finite differences and by the
/// closed form, plus the worst disagreement between the two.
pub fn d_lf_check(grid: &ProfileGrid) -> Result<DLfCheck, ProfileError> {
    grid.validate()?;
    let xs = grid.xs();
    let ts = grid.ts();
    let min_finite_difference = grid_min(&xs, &ts, d_lf_finite_difference);
    let min_closed_form = grid_min(&xs, &ts, d_lf_raw);
    let disagreement = grid_min(&xs, &ts, |x, t| {
        let closed = d_lf_raw(x, t);
        -(d_lf_finite_difference(x, t) - closed).abs() / closed.abs().max(1.0)
    });
    Ok(DLfCheck {
        min_finite_difference,
        min_closed_form,
        max_disagreement: -disagreement.value,
    })
}

/// Grid for the `A`-polynomial check: `z ∈ [0, 1]` and
/// `α = 10^e`, `e ∈ [log_alpha_min, log_alpha_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AGrid {
    pub z_step: f64,
    pub log_alpha_min: f64,
    pub log_alpha_max: f64,
    pub log_alpha_step: f64,
}

impl Default for AGrid {
    fn default() -> Self {
        AGrid {
            z_step: 1e-3,
            log_alpha_min: -3.0,
            log_alpha_max: 3.0,
            log_alpha_step: 0.01,
        }
    }
}

/// Minimum of `A` over the grid; `x` holds `z` and `t` holds `α`.
pub fn a_polynomial_check(grid: &AGrid) -> Result<GridMinimum, ProfileError> {
    if !(grid.z_step > 0.0 && grid.log_alpha_step > 0.0) {
        return Err(ProfileError::Parameter("grid steps must be positive".into()));
    }
    let zs = grid_axis(0.0, 1.0, grid.z_step);
    let alphas: Vec<f64> = grid_axis(grid.log_alpha_min, grid.log_alpha_max, grid.log_alpha_step)
        .into_iter()
        .map(|e| 10f64.powf(e))
        .collect();
    Ok(grid_min(&zs, &alphas, |z, a| {
        a_polynomial(z, a).unwrap_or(f64::NEG_INFINITY)
    }))
}

/// Worst disagreement between central differences of `f` (step `h`) and
/// the closed forms of `f_x`, `f_xx` and `f_t` over the grid, measured as
/// `|fd − closed| / max(1, |closed|)`.
pub fn derivative_cross_check(grid: &ProfileGrid, h: f64) -> Result<[f64; 3], ProfileError> {
    grid.validate()?;
    let xs: Vec<f64> = grid.xs().into_iter().filter(|&x| x + h <= TAU && x - h >= 0.0).collect();
    let ts = grid.ts();
    let worst = |eval: &(dyn Fn(f64, f64) -> f64 + Sync)| -grid_min(&xs, &ts, |x, t| -eval(x, t)).value;
    let dx = worst(&|x, t| {
        let fd = (f_raw(x + h, t) - f_raw(x - h, t)) / (2.0 * h);
        let closed = f_x(ProfileParams::new(x, t)).unwrap();
        (fd - closed).abs() / closed.abs().max(1.0)
    });
    let dxx = worst(&|x, t| {
        let fd = (f_raw(x + h, t) - 2.0 * f_raw(x, t) + f_raw(x - h, t)) / (h * h);
        let closed = f_xx(ProfileParams::new(x, t)).unwrap();
        (fd - closed).abs() / closed.abs().max(1.0)
    });
    let dt = worst(&|x, t| {
        let fd = (f_raw(x, t + h) - f_raw(x, t - h)) / (2.0 * h);
        let closed = f_t_raw(x, t);
        (fd - closed).abs() / closed.abs().max(1.0)
    });
    Ok([dx, dxx, dt])
}

/// Bisection interval and tolerance for [`compute_tbar`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TbarSearch {
    pub lo: f64,
    pub hi: f64,
    pub tol: f64,
}

impl Default for TbarSearch {
    fn default() -> Self {
        TbarSearch {
            lo: -50.0,
            hi: 50.0,
            tol: 1e-6,
        }
    }
}

fn check_normalized(metrics: &CurveMetrics) -> Result<(), ProfileError> {
    if ((metrics.total_length - TAU) / TAU).abs() > LENGTH_TOLERANCE {
        Err(ProfileError::NotNormalized {
            length: metrics.total_length,
        })
    } else {
        Ok(())
    }
}

/// Profile argument for an arc that may exceed `π` by rounding.
fn arc_argument(l: f64) -> f64 {
    l.clamp(0.0, TAU)
}

/// Whether every vertex pair satisfies `d ≥ f(l, -tbar)`, and, in the limit
/// of coincident points, every vertex satisfies `κ² ≤ 1 + 2e^{2 tbar}`.
pub fn offset_is_admissible(curve: &DiscreteCurve, metrics: &CurveMetrics, tbar: f64) -> bool {
    let bound = 1.0 + 2.0 * (2.0 * tbar).exp();
    if metrics.curvature.iter().any(|k| k * k > bound) {
        return false;
    }
    pairs_admissible(curve, metrics, tbar)
}

/// Pair part of [`offset_is_admissible`].
pub fn pairs_admissible(curve: &DiscreteCurve, metrics: &CurveMetrics, tbar: f64) -> bool {
    let n = curve.len();
    (0..n).into_par_iter().all(|i| {
        ((i + 1)..n).all(|j| {
            curve.chord_distance(i, j) >= f_raw(arc_argument(metrics.arc_distance(i, j)), -tbar)
        })
    })
}

/// Smallest offset `t̄` in the search interval such that the comparison
/// `d ≥ f(l, −t̄)` holds on the given curve, found by bisection.
///
/// Feasibility is monotone in `t̄` because `∂f/∂t ≥ 0`. Besides every vertex
/// pair, the test includes the coincident-point limit of the comparison,
/// `κ² ≤ 1 + 2e^{2t̄}` at every vertex: a polygon has no pairs closer than
/// one edge, and without the limit the scan would miss the constraint that
/// sharply curved regions place on `t̄`.
pub fn compute_tbar(curve: &DiscreteCurve, search: &TbarSearch) -> Result<f64, ProfileError> {
    let metrics = compute_metrics(curve)?;
    tbar_with(curve, &metrics, search, offset_is_admissible)
}

/// [`compute_tbar`] restricted to vertex pairs.
pub fn compute_tbar_pairs_only(
    curve: &DiscreteCurve,
    search: &TbarSearch,
) -> Result<f64, ProfileError> {
    let metrics = compute_metrics(curve)?;
    tbar_with(curve, &metrics, search, pairs_admissible)
}

fn tbar_with(
    curve: &DiscreteCurve,
    metrics: &CurveMetrics,
    search: &TbarSearch,
    admissible: fn(&DiscreteCurve, &CurveMetrics, f64) -> bool,
) -> Result<f64, ProfileError> {
    if !(search.lo <= search.hi && search.tol > 0.0) {
        return Err(ProfileError::Parameter(format!(
            "invalid search interval [{}, {}] with tolerance {}",
            search.lo, search.hi, search.tol
        )));
    }
    check_normalized(metrics)?;
    if !curve.convexity_check() {
        return Err(ProfileError::Curve(crate::error::CurveError::NotConvex));
    }
    if admissible(curve, metrics, search.lo) {
        return Ok(search.lo);
    }
    if !admissible(curve, metrics, search.hi) {
        return Err(ProfileError::NoAdmissibleOffset { hi: search.hi });
    }
    let (mut lo, mut hi) = (search.lo, search.hi);
    while hi - lo > search.tol {
        let mid = 0.5 * (lo + hi);
        if admissible(curve, metrics, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Minimum of the two-point function over all vertex pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonReport {
    pub tbar: f64,
    pub min_z: f64,
    pub argmin_pair: (usize, usize),
    pub time: f64,
}

/// Exhaustive scan of `Z = d − f(l, time − tbar)` over all `N(N−1)/2` vertex
/// pairs. The curve must have length `2π`.
pub fn min_z_scan(
    curve: &DiscreteCurve,
    time: f64,
    tbar: f64,
) -> Result<ComparisonReport, ProfileError> {
    let metrics = compute_metrics(curve)?;
    min_z_scan_with(curve, &metrics, time, tbar)
}

/// [`min_z_scan`] with precomputed metrics.
pub fn min_z_scan_with(
    curve: &DiscreteCurve,
    metrics: &CurveMetrics,
    time: f64,
    tbar: f64,
) -> Result<ComparisonReport, ProfileError> {
    check_normalized(metrics)?;
    check_t(time - tbar)?;
    let s = time - tbar;
    let n = curve.len();
    let best = (0..n)
        .into_par_iter()
        .map(|i| {
            ((i + 1)..n).fold(Candidate::NONE, |acc, j| {
                let z = curve.chord_distance(i, j) - f_raw(arc_argument(metrics.arc_distance(i, j)), s);
                acc.min(Candidate::new(z, i, j))
            })
        })
        .reduce(|| Candidate::NONE, Candidate::min);
    Ok(ComparisonReport {
        tbar,
        min_z: best.value,
        argmin_pair: (best.i, best.j),
        time,
    })
}

/// `f(x, t)` as `t → ∞`: the chord of the unit circle over arc `x`.
pub fn circle_chord(x: f64) -> f64 {
    2.0 * (0.5 * x).sin()
}
