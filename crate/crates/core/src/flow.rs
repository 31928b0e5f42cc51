//! Explicit time stepping of the inverse curvature flow.
//!
//! Two formulations are integrated:
//!
//! * unnormalized, `∂F/∂τ = ν / κ`: every vertex moves outward with speed
//!   equal to the radius of curvature, and the length grows like `e^τ`;
//! * normalized, `∂F/∂t = −F + ν / κ`, followed after every step by an exact
//!   rescaling about the origin back to length `2π`.
//!
//! Both use forward Euler. The curvature evolves by a parabolic equation
//! with diffusion coefficient `1/κ²`, so a step is only accepted when
//! `dt ≤ safety · (min Δs)² · (min κ)²`. [`evolve`] splits each requested
//! step into substeps that satisfy this bound; the single-step functions
//! reject violating steps instead.

use std::f64::consts::TAU;

use crate::curve::{
    compute_metrics, hausdorff_distance, resample_uniform, CurveMetrics, DiscreteCurve, Point,
};
use crate::error::{CurveError, FlowError};

/// Relative tolerance on the length of a normalized curve.
pub const NORMALIZED_LENGTH_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FlowMode {
    Unnormalized,
    Normalized,
}

impl FlowMode {
    pub fn name(self) -> &'static str {
        match self {
            FlowMode::Unnormalized => "unnormalized",
            FlowMode::Normalized => "normalized",
        }
    }
}

/// Step size, resampling schedule and stability safety factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl {
    pub dt: f64,
    pub resample_every: usize,
    pub safety: f64,
}

impl Default for StepControl {
    fn default() -> Self {
        StepControl {
            dt: 1e-4,
            resample_every: 10,
            safety: 0.2,
        }
    }
}

impl StepControl {
    pub fn with_dt(dt: f64) -> Self {
        StepControl {
            dt,
            ..StepControl::default()
        }
    }

    pub fn validate(&self) -> Result<(), FlowError> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(FlowError::Parameter(format!("dt must be positive, got {}", self.dt)));
        }
        if self.resample_every == 0 {
            return Err(FlowError::Parameter("resample_every must be at least 1".into()));
        }
        if !(self.safety > 0.0 && self.safety <= 1.0) {
            return Err(FlowError::Parameter(format!(
                "safety must lie in (0, 1], got {}",
                self.safety
            )));
        }
        Ok(())
    }
}

/// Largest stable explicit step for the given geometry.
pub fn stability_bound(metrics: &CurveMetrics, safety: f64) -> f64 {
    let ds = metrics.min_edge();
    let k = metrics.kappa_min().max(0.0);
    safety * ds * ds * k * k
}

/// A curve together with its flow time and formulation.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowState {
    pub curve: DiscreteCurve,
    pub time: f64,
    pub mode: FlowMode,
    /// Length of the curve the flow was started from.
    pub initial_length: f64,
    /// Comparison offset, when one has been computed for this run.
    pub tbar: Option<f64>,
    /// Accepted steps since the last resampling.
    pub steps_since_resample: usize,
}

impl FlowState {
    /// Starts a flow at `t = 0`. The curve must be convex, and for the
    /// normalized flow it must have length `2π` (see [`renormalize`]).
    pub fn new(curve: DiscreteCurve, mode: FlowMode) -> Result<Self, FlowError> {
        if !curve.convexity_check() {
            return Err(CurveError::NotConvex.into());
        }
        let length = curve.length();
        if mode == FlowMode::Normalized && ((length - TAU) / TAU).abs() > NORMALIZED_LENGTH_TOLERANCE {
            return Err(FlowError::Parameter(format!(
                "normalized flow needs length 2π, got {length}"
            )));
        }
        Ok(FlowState {
            curve,
            time: 0.0,
            mode,
            initial_length: length,
            tbar: None,
            steps_since_resample: 0,
        })
    }

    /// Renormalizes `curve` and starts the normalized flow from it.
    pub fn normalized(curve: DiscreteCurve) -> Result<Self, FlowError> {
        Self::new(renormalize(&curve), FlowMode::Normalized)
    }

    pub fn unnormalized(curve: DiscreteCurve) -> Result<Self, FlowError> {
        Self::new(curve, FlowMode::Unnormalized)
    }
}

/// Scales the curve about the origin so that its length is `2π`.
pub fn renormalize(curve: &DiscreteCurve) -> DiscreteCurve {
    let length = curve.length();
    let factor = TAU / length;
    if factor == 1.0 {
        return curve.clone();
    }
    curve.scaled(factor)
}

fn expect_mode(state: &FlowState, mode: FlowMode) -> Result<(), FlowError> {
    if state.mode == mode {
        Ok(())
    } else {
        Err(FlowError::ModeMismatch {
            expected: mode.name(),
            found: state.mode.name(),
        })
    }
}

/// One forward Euler step from `state`, whose metrics are `metrics`.
fn advance(
    state: &FlowState,
    metrics: &CurveMetrics,
    control: &StepControl,
    dt: f64,
) -> Result<FlowState, FlowError> {
    if let Some((vertex, &curvature)) = metrics
        .curvature
        .iter()
        .enumerate()
        .find(|(_, &k)| !(k > 0.0))
    {
        return Err(FlowError::ConvexityLoss { vertex, curvature });
    }
    let bound = stability_bound(metrics, control.safety);
    if dt > bound * (1.0 + 1e-9) {
        return Err(FlowError::StepRejected { dt, bound });
    }

    let normalized = state.mode == FlowMode::Normalized;
    let moved: Vec<Point> = state
        .curve
        .vertices()
        .iter()
        .zip(metrics.curvature.iter().zip(&metrics.outward_normal))
        .map(|(&v, (&k, &nu))| {
            let velocity = if normalized { nu / k - v } else { nu / k };
            v + velocity * dt
        })
        .collect();

    let mut curve = DiscreteCurve::new(moved)?;
    let mut steps_since_resample = state.steps_since_resample + 1;
    if steps_since_resample >= control.resample_every {
        curve = resample_uniform(&curve, curve.len())?;
        steps_since_resample = 0;
    }
    if normalized {
        curve = renormalize(&curve);
    }
    if !curve.convexity_check() {
        let m = compute_metrics(&curve)?;
        let (vertex, curvature) = m
            .curvature
            .iter()
            .copied()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap_or((0, f64::NAN));
        return Err(FlowError::ConvexityLoss { vertex, curvature });
    }
    Ok(FlowState {
        curve,
        time: state.time + dt,
        steps_since_resample,
        ..state.clone()
    })
}

/// One explicit Euler step of `∂F/∂τ = ν / κ`.
pub fn step_unnormalized(state: &FlowState, control: &StepControl) -> Result<FlowState, FlowError> {
    expect_mode(state, FlowMode::Unnormalized)?;
    control.validate()?;
    let metrics = compute_metrics(&state.curve)?;
    advance(state, &metrics, control, control.dt)
}

/// One explicit Euler step of `∂F/∂t = −F + ν / κ`, followed by rescaling
/// to length `2π`.
pub fn step_normalized(state: &FlowState, control: &StepControl) -> Result<FlowState, FlowError> {
    expect_mode(state, FlowMode::Normalized)?;
    control.validate()?;
    let metrics = compute_metrics(&state.curve)?;
    advance(state, &metrics, control, control.dt)
}

/// Dispatches on the state's mode.
pub fn step(state: &FlowState, control: &StepControl) -> Result<FlowState, FlowError> {
    match state.mode {
        FlowMode::Unnormalized => step_unnormalized(state, control),
        FlowMode::Normalized => step_normalized(state, control),
    }
}

/// What an observer sees at a snapshot time.
#[derive(Debug, Clone, Copy)]
pub struct Snapshot<'a> {
    pub time: f64,
    pub mode: FlowMode,
    pub curve: &'a DiscreteCurve,
    pub metrics: &'a CurveMetrics,
}

pub type Observer<'o> = &'o mut dyn FnMut(&Snapshot<'_>);

/// Snapshot times `start, start + interval, …` and `t_end`.
pub fn snapshot_times(start: f64, t_end: f64, interval: Option<f64>) -> Vec<f64> {
    let mut times = vec![start];
    if let Some(interval) = interval {
        let mut k = 1;
        loop {
            let t = start + k as f64 * interval;
            if t >= t_end - 1e-9 * interval {
                break;
            }
            times.push(t);
            k += 1;
        }
    }
    if t_end > start {
        times.push(t_end);
    }
    times
}

/// Integrates from `state.time` to `t_end`.
///
/// Every requested step of `control.dt` is shortened to the stability bound
/// of the current curve when necessary, and steps are clipped to land
/// exactly on snapshot times. At every snapshot after the first the curve
/// is resampled to a uniform mesh (and renormalized in the normalized flow)
/// before the observers see it, so snapshot metrics are always taken on
/// uniform meshes. Observers are called at `state.time`, at every multiple
/// of `snapshot_interval` after it, and at `t_end`.
pub fn evolve(
    state: FlowState,
    control: &StepControl,
    t_end: f64,
    snapshot_interval: Option<f64>,
    observers: &mut [Observer<'_>],
) -> Result<FlowState, FlowError> {
    control.validate()?;
    if !(t_end >= state.time) || !t_end.is_finite() {
        return Err(FlowError::Parameter(format!(
            "t_end = {t_end} precedes the current time {}",
            state.time
        )));
    }
    if let Some(interval) = snapshot_interval {
        if !(interval > 0.0 && interval.is_finite()) {
            return Err(FlowError::Parameter(format!(
                "snapshot interval must be positive, got {interval}"
            )));
        }
    }

    let times = snapshot_times(state.time, t_end, snapshot_interval);
    let mut state = state;
    let mut metrics = compute_metrics(&state.curve)?;
    notify(observers, &state, &metrics);

    for &target in &times[1..] {
        loop {
            let remaining = target - state.time;
            if remaining <= 0.0 {
                break;
            }
            let stable = stability_bound(&metrics, control.safety);
            let limit = control.dt.min(stable);
            let last = remaining <= limit * (1.0 + 1e-9);
            let dt = if last { remaining } else { limit };
            let at = state.time;
            state = advance(&state, &metrics, control, dt).map_err(|e| FlowError::AtTime {
                time: at,
                source: Box::new(e),
            })?;
            if last {
                state.time = target;
            }
            metrics = compute_metrics(&state.curve)?;
            if last {
                break;
            }
        }
        if state.steps_since_resample != 0 {
            let mut curve = resample_uniform(&state.curve, state.curve.len())?;
            if state.mode == FlowMode::Normalized {
                curve = renormalize(&curve);
            }
            state.curve = curve;
            state.steps_since_resample = 0;
            metrics = compute_metrics(&state.curve)?;
        }
        notify(observers, &state, &metrics);
    }
    Ok(state)
}

fn notify(observers: &mut [Observer<'_>], state: &FlowState, metrics: &CurveMetrics) {
    let snapshot = Snapshot {
        time: state.time,
        mode: state.mode,
        curve: &state.curve,
        metrics,
    };
    for observer in observers.iter_mut() {
        observer(&snapshot);
    }
}

/// Largest relative deviation of a `(time, length)` history from the law
/// `L(τ) = L(0) e^{τ − τ₀}`, where the first entry is `(τ₀, L(0))`.
pub fn length_law_residual(history: &[(f64, f64)]) -> Result<f64, FlowError> {
    let &(t0, l0) = history
        .first()
        .ok_or_else(|| FlowError::Parameter("empty length history".into()))?;
    Ok(history
        .iter()
        .map(|&(t, l)| {
            let expected = l0 * (t - t0).exp();
            ((l - expected) / expected).abs()
        })
        .fold(0.0, f64::max))
}

/// Runs the unnormalized flow from `initial` and the normalized flow from
/// its renormalization, and returns the largest Hausdorff distance between
/// the rescaled unnormalized curve and the normalized curve over the
/// snapshot times.
pub fn cross_check_formulations(
    initial: &DiscreteCurve,
    control: &StepControl,
    t_end: f64,
    snapshot_interval: Option<f64>,
) -> Result<f64, FlowError> {
    let mut rescaled: Vec<DiscreteCurve> = Vec::new();
    let mut record_unnormalized = |s: &Snapshot<'_>| rescaled.push(renormalize(s.curve));
    evolve(
        FlowState::unnormalized(initial.clone())?,
        control,
        t_end,
        snapshot_interval,
        &mut [&mut record_unnormalized],
    )?;

    let mut normalized: Vec<DiscreteCurve> = Vec::new();
    let mut record_normalized = |s: &Snapshot<'_>| normalized.push(s.curve.clone());
    evolve(
        FlowState::normalized(initial.clone())?,
        control,
        t_end,
        snapshot_interval,
        &mut [&mut record_normalized],
    )?;

    Ok(rescaled
        .iter()
        .zip(&normalized)
        .map(|(a, b)| hausdorff_distance(a, b))
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{make_circle, make_ellipse, make_perturbed_circle};
    use approx::assert_abs_diff_eq;

    fn radii(curve: &DiscreteCurve) -> impl Iterator<Item = f64> + '_ {
        curve.vertices().iter().map(|v| v.norm())
    }

    #[test]
    fn one_step_on_a_circle_is_exact() {
        let state = FlowState::unnormalized(make_circle(1.0, 16).unwrap()).unwrap();
        let next = step_unnormalized(&state, &StepControl::with_dt(0.01)).unwrap();
        for r in radii(&next.curve) {
            assert_abs_diff_eq!(r, 1.01, epsilon = 1e-12);
        }
        assert_eq!(next.time, 0.01);
    }

    #[test]
    fn repeated_steps_follow_the_geometric_law() {
        let mut state = FlowState::unnormalized(make_circle(2.0, 64).unwrap()).unwrap();
        let control = StepControl::with_dt(1e-3);
        for _ in 0..200 {
            state = step_unnormalized(&state, &control).unwrap();
        }
        let expected = 2.0 * (1.0f64 + 1e-3).powi(200);
        for r in radii(&state.curve) {
            assert!((r - expected).abs() < 1e-12 * expected);
        }
    }

    #[test]
    fn oversized_step_is_rejected() {
        let state = FlowState::unnormalized(make_circle(1.0, 512).unwrap()).unwrap();
        let err = step_unnormalized(&state, &StepControl::with_dt(1e-3)).unwrap_err();
        assert!(matches!(err, FlowError::StepRejected { .. }));
    }

    #[test]
    fn non_convex_curves_are_rejected() {
        let star = make_perturbed_circle(1.0, &[(4, 0.5, 0.0)], 128).unwrap();
        assert!(matches!(
            FlowState::unnormalized(star.clone()),
            Err(FlowError::Curve(CurveError::NotConvex))
        ));
        // Stepping a non-convex curve directly reports the bad vertex.
        let state = FlowState {
            curve: star,
            time: 0.0,
            mode: FlowMode::Unnormalized,
            initial_length: 1.0,
            tbar: None,
            steps_since_resample: 0,
        };
        assert!(matches!(
            step_unnormalized(&state, &StepControl::with_dt(1e-9)),
            Err(FlowError::ConvexityLoss { .. })
        ));
    }

    #[test]
    fn mode_mismatch_is_an_error() {
        let state = FlowState::unnormalized(make_circle(1.0, 32).unwrap()).unwrap();
        assert!(matches!(
            step_normalized(&state, &StepControl::with_dt(1e-4)),
            Err(FlowError::ModeMismatch { .. })
        ));
    }

    #[test]
    fn renormalize_scales_about_the_origin() {
        let c = make_circle(5.0, 128).unwrap();
        let r = renormalize(&c);
        let unit = renormalize(&make_circle(1.0, 128).unwrap());
        for (p, q) in r.vertices().iter().zip(unit.vertices()) {
            assert!((p - q).norm() < 1e-14);
        }
        let again = renormalize(&unit);
        for (p, q) in again.vertices().iter().zip(unit.vertices()) {
            assert!((p - q).norm() < 1e-15);
        }
        let shifted = make_circle(2.0, 128).unwrap().translated(Point::new(4.0, 0.0));
        let scaled = renormalize(&shifted);
        // The inscribed polygon is slightly shorter than the circle, so the
        // factor is 2π/L rather than exactly 1/2.
        let factor = TAU / shifted.length();
        assert!((scaled.centroid() - Point::new(4.0 * factor, 0.0)).norm() < 1e-12);
        assert!((factor - 0.5).abs() < 1e-4);
        assert_abs_diff_eq!(scaled.length(), TAU, epsilon = 1e-12);
    }

    #[test]
    fn round_circle_is_fixed_by_the_normalized_flow() {
        let state = FlowState::normalized(make_circle(1.0, 256).unwrap()).unwrap();
        let next = step_normalized(&state, &StepControl::with_dt(1e-5)).unwrap();
        for (p, q) in next.curve.vertices().iter().zip(state.curve.vertices()) {
            assert!((p - q).norm() < 1e-12);
        }
    }

    #[test]
    fn off_center_circle_drifts_toward_the_origin() {
        let c = Point::new(0.1, 0.0);
        let curve = renormalize(&make_circle(1.0, 128).unwrap()).translated(c);
        let state = FlowState::new(curve, FlowMode::Normalized).unwrap();
        let dt = 1e-5;
        let next = step_normalized(&state, &StepControl::with_dt(dt)).unwrap();
        let moved = next.curve.centroid();
        assert!((moved - c * (1.0 - dt)).norm() < 1e-12);
    }

    #[test]
    fn normalized_step_restores_length() {
        let state = FlowState::normalized(make_ellipse(2.0, 1.0, 128).unwrap()).unwrap();
        let control = StepControl::with_dt(1e-6);
        let mut s = state;
        for _ in 0..25 {
            s = step_normalized(&s, &control).unwrap();
            assert!((s.curve.length() - TAU).abs() < 1e-10);
        }
    }

    #[test]
    fn evolve_rejects_going_backwards() {
        let mut state = FlowState::normalized(make_circle(1.0, 32).unwrap()).unwrap();
        state.time = 1.0;
        assert!(matches!(
            evolve(state, &StepControl::default(), 0.5, None, &mut []),
            Err(FlowError::Parameter(_))
        ));
    }

    #[test]
    fn evolve_lands_on_snapshot_times() {
        let state = FlowState::normalized(make_ellipse(1.5, 1.0, 64).unwrap()).unwrap();
        let mut times = Vec::new();
        let mut spreads = Vec::new();
        let mut obs = |s: &Snapshot<'_>| {
            times.push(s.time);
            spreads.push(s.metrics.edge_spread());
        };
        let end = evolve(state, &StepControl::with_dt(1e-3), 0.05, Some(0.02), &mut [&mut obs]).unwrap();
        assert_eq!(times, vec![0.0, 0.02, 0.04, 0.05]);
        assert_eq!(end.time, 0.05);
        assert!(spreads.iter().all(|&s| s < 1e-9));
    }

    #[test]
    fn kappa_extremes_are_monotone_along_the_normalized_flow() {
        let state = FlowState::normalized(make_ellipse(2.0, 1.0, 128).unwrap()).unwrap();
        let mut extremes = Vec::new();
        let mut obs = |s: &Snapshot<'_>| extremes.push((s.metrics.kappa_min(), s.metrics.kappa_max()));
        evolve(state, &StepControl::default(), 0.5, Some(0.01), &mut [&mut obs]).unwrap();
        for w in extremes.windows(2) {
            assert!(w[1].0 >= w[0].0 - 1e-6);
            assert!(w[1].1 <= w[0].1 + 1e-6);
        }
    }

    #[test]
    fn length_law_on_trivial_history() {
        assert_eq!(length_law_residual(&[(0.0, 3.0)]).unwrap(), 0.0);
        assert!(length_law_residual(&[]).is_err());
        let exact: Vec<(f64, f64)> = (0..5).map(|k| (k as f64, 2.0 * (k as f64).exp())).collect();
        assert!(length_law_residual(&exact).unwrap() < 1e-14);
    }

    #[test]
    fn time_is_attached_to_flow_failures() {
        let mut curve = make_circle(1.0, 64).unwrap().into_vertices();
        curve[10] *= 0.97;
        let curve = DiscreteCurve::new(curve).unwrap();
        let state = FlowState {
            curve,
            time: 0.25,
            mode: FlowMode::Unnormalized,
            initial_length: 1.0,
            tbar: None,
            steps_since_resample: 0,
        };
        let err = evolve(state, &StepControl::with_dt(1e-4), 1.0, None, &mut []).unwrap_err();
        assert_eq!(err.time(), Some(0.25));
        assert!(matches!(err.root(), FlowError::ConvexityLoss { .. }));
    }

    fn length_history(curve: DiscreteCurve, dt: f64, t_end: f64) -> Vec<(f64, f64)> {
        let mut history = Vec::new();
        let mut record = |s: &Snapshot<'_>| history.push((s.time, s.metrics.total_length));
        evolve(
            FlowState::unnormalized(curve).unwrap(),
            &StepControl::with_dt(dt),
            t_end,
            Some(0.1),
            &mut [&mut record],
        )
        .unwrap();
        history
    }

    #[test]
    fn length_grows_exponentially() {
        let circle = length_history(make_circle(1.0, 512).unwrap(), 1e-3, 1.0);
        assert!(length_law_residual(&circle).unwrap() < 1e-2);
        let (_, l0) = circle[0];
        let (t1, l1) = *circle.last().unwrap();
        assert_eq!(t1, 1.0);
        assert!((l1 / l0 / std::f64::consts::E - 1.0).abs() < 1e-2);

        let ellipse = length_history(make_ellipse(2.0, 1.0, 128).unwrap(), 1e-4, 1.0);
        assert!(length_law_residual(&ellipse).unwrap() < 1e-2);
    }

    #[test]
    fn formulations_agree_on_a_circle() {
        let c = make_circle(1.0, 128).unwrap();
        let d = cross_check_formulations(&c, &StepControl::with_dt(1e-3), 1.0, Some(0.25)).unwrap();
        assert!(d < 1e-6, "{d}");
    }

    #[test]
    fn formulation_gap_is_first_order_in_the_step() {
        // On 64 vertices the requested step, not the stability bound, sets
        // the substep, so halving dt halves the substeps.
        let e = make_ellipse(2.0, 1.0, 64).unwrap();
        let gap = |dt: f64| {
            cross_check_formulations(&e, &StepControl::with_dt(dt), 1.0, Some(0.1)).unwrap()
        };
        let (coarse, fine) = (gap(1e-4), gap(5e-5));
        assert!(coarse < 5e-3);
        assert!(coarse / fine >= 1.8, "{coarse} {fine}");
    }
}
