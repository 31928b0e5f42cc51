//! CSV, JSON and SVG writers.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use curveflow::DiscreteCurve;
use serde::Serialize;

use crate::checks::Row;

/// Column order of the time-series file.
pub const CSV_HEADER: [&str; 14] = [
    "t",
    "length",
    "kappa_min",
    "kappa_max",
    "min_Z",
    "tbar",
    "thm12_residual",
    "l2_deficit",
    "dkappa_max",
    "d2kappa_max",
    "gn_ratio",
    "bonnesen_gap",
    "hausdorff",
    "center_norm",
];

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn csv_record(r: &Row) -> [String; 14] {
    [
        r.t,
        r.length,
        r.kappa_min,
        r.kappa_max,
        r.min_z,
        r.tbar,
        r.thm12_residual,
        r.l2_deficit,
        r.dkappa_max,
        r.d2kappa_max,
        r.gn_ratio.unwrap_or(f64::NAN),
        r.bonnesen_gap,
        r.hausdorff,
        r.center_norm,
    ]
    .map(format_float)
}

pub fn write_csv(path: &Path, rows: &[Row]) -> io::Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record(csv_record(r))?;
    }
    w.flush()
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)
}

/// The curve on the square `[−2, 2]²` with the unit circle underneath, y up.
pub fn svg_document(curve: &DiscreteCurve, time: f64) -> String {
    let mut d = String::new();
    for (i, v) in curve.vertices().iter().enumerate() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        let _ = write!(d, "{cmd}{:.6} {:.6} ", v.x, -v.y);
    }
    d.push('Z');
    format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-2 -2 4 4\" width=\"400\" height=\"400\">\n",
            "<title>t = {time}</title>\n",
            "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#999\" stroke-width=\"0.01\" stroke-dasharray=\"0.04 0.03\"/>\n",
            "<path d=\"{d}\" fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"0.015\"/>\n",
            "</svg>\n"
        ),
        time = time,
        d = d
    )
}

pub fn write_svg(path: &Path, curve: &DiscreteCurve, time: f64) -> io::Result<()> {
    fs::write(path, svg_document(curve, time))
}
