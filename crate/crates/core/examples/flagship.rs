//! Normalized flow from the (2, 1) ellipse, printing every check per snapshot.
//!
//! `cargo run --release --example flagship -- [n] [dt] [t_end] [interval]`

use curveflow::bounds::{
    bounds_report, deficit_decay_check, derivative_decay_check, fit_log_slope, kappa_range_violation,
    DerivativeSample, LadderConfig, DEFICIT_FLOOR,
};
use curveflow::comparison::{compute_tbar, min_z_scan_with, TbarSearch};
use curveflow::curve::make_ellipse;
use curveflow::flow::{evolve, FlowState, Snapshot, StepControl};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |i: usize, d: f64| args.get(i).and_then(|s| s.parse().ok()).unwrap_or(d);
    let n = arg(0, 512.0) as usize;
    let dt = arg(1, 1e-4);
    let t_end = arg(2, 5.0);
    let interval = arg(3, 0.1);

    let state = FlowState::normalized(make_ellipse(2.0, 1.0, n)?)?;
    let tbar = compute_tbar(&state.curve, &TbarSearch::default())?;
    println!("tbar = {tbar}");
    println!("t kmin kmax minZ thm12 deficit dk d2k gn gap haus center spread");
    let mut reports = Vec::new();
    let mut print = |s: &Snapshot<'_>| {
        let z = min_z_scan_with(s.curve, s.metrics, s.time, tbar).unwrap();
        let r = bounds_report(s.curve, s.metrics, s.time, tbar).unwrap();
        reports.push(r);
        println!(
            "{:.2} {:.9} {:.9} {:.3e} {:.3e} {:.3e} {:.3e} {:.3e} {:.3e} {:.3e} {:.3e} {:.3e} {:.1e}",
            s.time,
            r.kappa_min,
            r.kappa_max,
            z.min_z,
            r.thm12_residual,
            r.l2_deficit,
            r.dkappa_max,
            r.d2kappa_max,
            r.gn_ratio.unwrap_or(f64::NAN),
            r.bonnesen_gap,
            r.hausdorff_to_unit_circle,
            r.center_norm,
            s.metrics.edge_spread(),
        );
    };
    evolve(state, &StepControl::with_dt(dt), t_end, Some(interval), &mut [&mut print])?;

    let deficits: Vec<(f64, f64)> = reports.iter().map(|r| (r.time, r.l2_deficit)).collect();
    let gaps: Vec<(f64, f64)> = reports.iter().map(|r| (r.time, r.bonnesen_gap)).collect();
    let extremes: Vec<(f64, f64)> = reports.iter().map(|r| (r.kappa_min, r.kappa_max)).collect();
    let ladder: Vec<DerivativeSample> = reports
        .iter()
        .map(|r| DerivativeSample {
            time: r.time,
            dkappa_max: r.dkappa_max,
            d2kappa_max: r.d2kappa_max,
        })
        .collect();
    println!("kappa range violation {:e}", kappa_range_violation(&extremes));
    println!("deficit slope {:?}", deficit_decay_check(&deficits, DEFICIT_FLOOR)?);
    println!("gap slope {:?}", fit_log_slope(&gaps, (1.0, 4.0), 0.0)?);
    println!("ladder {:?}", derivative_decay_check(&ladder, &LadderConfig::default())?);
    Ok(())
}
