//! Experiment configuration: a JSON file, overridden field by field from the
//! command line.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::path::{Path, PathBuf};

use curveflow::curve::{make_circle, make_ellipse, make_perturbed_circle};
use curveflow::{DiscreteCurve, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::checks::CheckName;
use crate::ConfigError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Circle,
    Ellipse,
    PerturbedCircle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Normalized,
    Unnormalized,
    /// Both flows, compared against each other.
    Both,
}

/// One Fourier mode of a perturbed circle, `r(θ) = R(1 + Σ a cos(kθ + φ))`.
/// A missing phase is drawn from the seeded generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Perturbation {
    pub mode: u32,
    pub amplitude: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub shape: Shape,
    /// Circle and perturbed-circle radius.
    pub radius: f64,
    /// Ellipse semi-axes.
    pub a: f64,
    pub b: f64,
    pub perturbation: Vec<Perturbation>,
    /// Translation applied to the initial curve.
    pub center: [f64; 2],
    pub n: usize,
    pub dt: f64,
    pub t_end: f64,
    pub mode: Mode,
    pub snapshot_interval: f64,
    /// Enabled checks; `None` enables every check that applies.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckName>>,
    /// Per-check limits replacing the defaults.
    pub tolerances: BTreeMap<CheckName, f64>,
    pub seed: u64,
    /// Directory receiving `timeseries.csv` and `summary.json`.
    pub out: PathBuf,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub svg_dir: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            shape: Shape::Ellipse,
            radius: 1.0,
            a: 2.0,
            b: 1.0,
            perturbation: Vec::new(),
            center: [0.0, 0.0],
            n: 512,
            dt: 1e-4,
            t_end: 5.0,
            mode: Mode::Normalized,
            snapshot_interval: 0.1,
            checks: None,
            tolerances: BTreeMap::new(),
            seed: 0,
            out: PathBuf::from("out"),
            svg_dir: None,
        }
    }
}

/// Command-line values that replace file values when present.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct Overrides {
    #[arg(long, value_enum)]
    pub shape: Option<Shape>,
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub t_end: Option<f64>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long)]
    pub snapshot_interval: Option<f64>,
    /// Comma-separated check names.
    #[arg(long, value_delimiter = ',')]
    pub checks: Option<Vec<CheckName>>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub svg_dir: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn apply(&mut self, o: &Overrides) {
        macro_rules! set {
            ($($field:ident),*) => {
                $(if let Some(v) = &o.$field { self.$field = v.clone(); })*
            };
        }
        set!(shape, radius, a, b, n, dt, t_end, mode, snapshot_interval, seed, out);
        if let Some(checks) = &o.checks {
            self.checks = Some(checks.clone());
        }
        if let Some(dir) = &o.svg_dir {
            self.svg_dir = Some(dir.clone());
        }
    }

    /// Checks the numeric parameters. Convexity of the initial curve is not
    /// a configuration error; it is reported when the run starts.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let positive = [
            ("radius", self.radius),
            ("a", self.a),
            ("b", self.b),
            ("dt", self.dt),
            ("t_end", self.t_end),
            ("snapshot_interval", self.snapshot_interval),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ConfigError::Invalid(format!("{name} must be positive, got {v}")));
            }
        }
        if self.n < curveflow::curve::MIN_VERTICES {
            return Err(ConfigError::Invalid(format!(
                "n must be at least {}, got {}",
                curveflow::curve::MIN_VERTICES,
                self.n
            )));
        }
        if self.center.iter().any(|c| !c.is_finite()) {
            return Err(ConfigError::Invalid("center must be finite".into()));
        }
        if self.shape == Shape::PerturbedCircle && self.perturbation.is_empty() {
            return Err(ConfigError::Invalid(
                "perturbed_circle needs at least one perturbation mode".into(),
            ));
        }
        for p in &self.perturbation {
            if p.mode == 0 || !p.amplitude.is_finite() || p.amplitude < 0.0 {
                return Err(ConfigError::Invalid(format!(
                    "perturbation needs mode ≥ 1 and a finite amplitude ≥ 0, got {p:?}"
                )));
            }
        }
        for (name, v) in &self.tolerances {
            if !v.is_finite() {
                return Err(ConfigError::Invalid(format!("tolerance for {name} is not finite")));
            }
        }
        Ok(())
    }

    /// Fourier modes with every phase filled in; phases left open are drawn
    /// uniformly from `[0, 2π)` in order, from a generator seeded by `seed`.
    pub fn resolved_perturbation(&self) -> Vec<(u32, f64, f64)> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        self.perturbation
            .iter()
            .map(|p| {
                let phase = p.phase.unwrap_or_else(|| rng.gen::<f64>() * TAU);
                (p.mode, p.amplitude, phase)
            })
            .collect()
    }

    /// The initial curve, before any normalization.
    pub fn initial_curve(&self) -> Result<DiscreteCurve, curveflow::CurveError> {
        let curve = match self.shape {
            Shape::Circle => make_circle(self.radius, self.n)?,
            Shape::Ellipse => make_ellipse(self.a, self.b, self.n)?,
            Shape::PerturbedCircle => {
                make_perturbed_circle(self.radius, &self.resolved_perturbation(), self.n)?
            }
        };
        let [x, y] = self.center;
        Ok(if x == 0.0 && y == 0.0 {
            curve
        } else {
            curve.translated(Point::new(x, y))
        })
    }
}
