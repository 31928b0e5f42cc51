//! The `run` subcommand: one flow experiment from a configuration.

use std::f64::consts::TAU;
use std::path::Path;

use curveflow::bounds::{
    bonnesen_floor, bounds_report, derivative_noise, l2_deficit_floor,
};
use curveflow::comparison::{compute_tbar, min_z_scan_with, TbarSearch};
use curveflow::curve::{compute_metrics, hausdorff_distance};
use curveflow::flow::{evolve, renormalize, FlowMode, FlowState, Snapshot, StepControl};
use curveflow::{CurveMetrics, DiscreteCurve};
use serde::Serialize;

use crate::checks::{evaluate, CheckName, CheckResult, History, Row, Status};
use crate::config::{ExperimentConfig, Mode};
use crate::output::{write_csv, write_json, write_svg};
use crate::{ExitStatus, RunError};

/// Where and why a run stopped early.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub time: f64,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub status: &'static str,
    pub exit_code: i32,
    pub tbar: Option<f64>,
    pub snapshots: usize,
    pub final_time: Option<f64>,
    pub failure: Option<Failure>,
    pub checks: Vec<CheckResult>,
    pub config: ExperimentConfig,
}

/// Result of [`run`], already written to disk.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub exit: ExitStatus,
    pub summary: Summary,
    pub rows: Vec<Row>,
}

pub const CSV_NAME: &str = "timeseries.csv";
pub const SUMMARY_NAME: &str = "summary.json";

/// Runs the experiment and writes `timeseries.csv`, `summary.json` and, when
/// requested, one SVG per snapshot.
pub fn run(config: &ExperimentConfig) -> Result<Outcome, RunError> {
    config.validate()?;
    std::fs::create_dir_all(&config.out)?;
    if let Some(dir) = &config.svg_dir {
        std::fs::create_dir_all(dir)?;
    }

    let n = config.n;
    let mut history = History {
        h: TAU / n as f64,
        deficit_floor: curveflow::bounds::DEFICIT_FLOOR.max(2.0 * l2_deficit_floor(n)),
        gap_floor: 2.0 * bonnesen_floor(n),
        ..History::default()
    };
    let mut tbar = None;
    let failure = simulate(config, &mut history, &mut tbar).err();

    let enabled = config
        .checks
        .clone()
        .unwrap_or_else(|| CheckName::defaults(config.mode, config.t_end));
    let checks: Vec<CheckResult> = enabled
        .iter()
        .map(|&c| {
            let limit = config.tolerances.get(&c).copied().unwrap_or(c.default_limit());
            evaluate(c, limit, &history)
        })
        .collect();

    let exit = if failure.is_some() {
        ExitStatus::Runtime
    } else if checks.iter().any(|c| c.status == Status::Fail) {
        ExitStatus::CheckFailure
    } else {
        ExitStatus::Pass
    };
    let summary = Summary {
        status: match exit {
            ExitStatus::Pass => "pass",
            ExitStatus::CheckFailure => "fail",
            _ => "error",
        },
        exit_code: exit.code(),
        tbar,
        snapshots: history.rows.len(),
        final_time: history.rows.last().map(|r| r.t),
        failure,
        checks,
        config: config.clone(),
    };
    write_csv(&config.out.join(CSV_NAME), &history.rows)?;
    write_json(&config.out.join(SUMMARY_NAME), &summary)?;
    Ok(Outcome {
        exit,
        summary,
        rows: history.rows,
    })
}

fn fail_at(time: f64, message: impl ToString) -> Failure {
    Failure {
        time,
        message: message.to_string(),
    }
}

/// Builds the initial curve, computes `t̄` and runs the flows, filling
/// `history`. Stops at the first error.
fn simulate(
    config: &ExperimentConfig,
    history: &mut History,
    tbar_out: &mut Option<f64>,
) -> Result<(), Failure> {
    let initial = config.initial_curve().map_err(|e| fail_at(0.0, e))?;
    if !initial.convexity_check() {
        return Err(fail_at(0.0, curveflow::CurveError::NotConvex));
    }
    let tbar = compute_tbar(&renormalize(&initial), &TbarSearch::default())
        .map_err(|e| fail_at(0.0, e))?;
    *tbar_out = Some(tbar);

    let control = StepControl::with_dt(config.dt);
    let interval = Some(config.snapshot_interval);
    let primary_mode = match config.mode {
        Mode::Unnormalized => FlowMode::Unnormalized,
        Mode::Normalized | Mode::Both => FlowMode::Normalized,
    };
    let state = FlowState::new(
        match primary_mode {
            FlowMode::Normalized => renormalize(&initial),
            FlowMode::Unnormalized => initial.clone(),
        },
        primary_mode,
    )
    .map_err(|e| fail_at(0.0, e))?;

    let mut observer_error: Option<Failure> = None;
    let mut normalized_curves: Vec<DiscreteCurve> = Vec::new();
    let keep_curves = config.mode == Mode::Both;
    let svg_dir = config.svg_dir.as_deref();
    let mut record = |s: &Snapshot<'_>| {
        if observer_error.is_some() {
            return;
        }
        match snapshot_row(s, tbar, history, svg_dir) {
            Ok(curve) => {
                if keep_curves {
                    normalized_curves.push(curve);
                }
            }
            Err(f) => observer_error = Some(f),
        }
    };
    let result = evolve(state, &control, config.t_end, interval, &mut [&mut record]);
    if let Some(f) = observer_error {
        return Err(f);
    }
    let last_time = history.rows.last().map_or(0.0, |r| r.t);
    result.map_err(|e| fail_at(e.time().unwrap_or(last_time), e.root()))?;

    if config.mode == Mode::Both {
        let mut rescaled: Vec<DiscreteCurve> = Vec::new();
        let lengths = &mut history.lengths;
        let mut record = |s: &Snapshot<'_>| {
            lengths.push((s.time, s.metrics.total_length));
            rescaled.push(renormalize(s.curve));
        };
        let state = FlowState::unnormalized(initial).map_err(|e| fail_at(0.0, e))?;
        evolve(state, &control, config.t_end, interval, &mut [&mut record])
            .map_err(|e| fail_at(e.time().unwrap_or(0.0), e.root()))?;
        let distance = rescaled
            .iter()
            .zip(&normalized_curves)
            .map(|(a, b)| hausdorff_distance(a, b))
            .fold(0.0, f64::max);
        history.cross_check = Some(distance);
    }
    Ok(())
}

/// Evaluates one snapshot and appends its row. Returns the normalized
/// curve the row was computed on.
fn snapshot_row(
    s: &Snapshot<'_>,
    tbar: f64,
    history: &mut History,
    svg_dir: Option<&Path>,
) -> Result<DiscreteCurve, Failure> {
    let length = s.metrics.total_length;
    let (curve, metrics): (DiscreteCurve, CurveMetrics) = match s.mode {
        FlowMode::Normalized => (s.curve.clone(), s.metrics.clone()),
        FlowMode::Unnormalized => {
            history.lengths.push((s.time, length));
            let c = renormalize(s.curve);
            let m = compute_metrics(&c).map_err(|e| fail_at(s.time, e))?;
            (c, m)
        }
    };
    let z = min_z_scan_with(&curve, &metrics, s.time, tbar).map_err(|e| fail_at(s.time, e))?;
    let r = bounds_report(&curve, &metrics, s.time, tbar).map_err(|e| fail_at(s.time, e))?;
    history.rows.push(Row {
        t: s.time,
        length,
        kappa_min: r.kappa_min,
        kappa_max: r.kappa_max,
        min_z: z.min_z,
        tbar,
        thm12_residual: r.thm12_residual,
        l2_deficit: r.l2_deficit,
        dkappa_max: r.dkappa_max,
        d2kappa_max: r.d2kappa_max,
        gn_ratio: r.gn_ratio,
        bonnesen_gap: r.bonnesen_gap,
        hausdorff: r.hausdorff_to_unit_circle,
        center_norm: r.center_norm,
        dkappa_noise: derivative_noise(&metrics),
    });
    if let Some(dir) = svg_dir {
        let index = history.rows.len() - 1;
        let path = dir.join(format!("snapshot_{index:04}.svg"));
        write_svg(&path, &curve, s.time).map_err(|e| fail_at(s.time, e))?;
    }
    Ok(curve)
}
