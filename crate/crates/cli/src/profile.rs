//! The `verify-profile` subcommand: grid certificates for the comparison
//! profile.

use std::fmt;

use curveflow::comparison::{
    a_polynomial_check, d_lf_check, derivative_cross_check, lf_grid_check, lf_near_zero, AGrid,
    GridMinimum, ProfileGrid, LF_X_MIN,
};
use curveflow::ProfileError;

/// Grid minima must not fall below this.
pub const MIN_TOLERANCE: f64 = -1e-8;
/// Agreement of the closed form of `∂Lf/∂x` with its finite difference.
pub const AGREEMENT_TOLERANCE: f64 = 1e-6;
/// `|Lf(LF_X_MIN, t)|` must stay below this.
pub const NEAR_ZERO_TOLERANCE: f64 = 1e-5;
/// Agreement of the derivatives of `f` with their finite differences. The
/// second difference at step `1e-5` carries rounding of order `ε/h² ≈ 1e-5`.
pub const DERIVATIVE_TOLERANCE: f64 = 1e-4;
/// Step of the finite differences of `f`.
pub const DERIVATIVE_STEP: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, clap::Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = ProfileGrid::default().x_min)]
    pub x_min: f64,
    #[arg(long, default_value_t = ProfileGrid::default().x_max)]
    pub x_max: f64,
    #[arg(long, default_value_t = ProfileGrid::default().x_step)]
    pub x_step: f64,
    #[arg(long, default_value_t = ProfileGrid::default().t_min)]
    pub t_min: f64,
    #[arg(long, default_value_t = ProfileGrid::default().t_max)]
    pub t_max: f64,
    #[arg(long, default_value_t = ProfileGrid::default().t_step)]
    pub t_step: f64,
}

impl From<GridArgs> for ProfileGrid {
    fn from(a: GridArgs) -> Self {
        ProfileGrid {
            x_min: a.x_min,
            x_max: a.x_max,
            x_step: a.x_step,
            t_min: a.t_min,
            t_max: a.t_max,
            t_step: a.t_step,
        }
    }
}

/// One line of the verification report.
#[derive(Debug, Clone, PartialEq)]
pub struct Line {
    pub label: &'static str,
    pub value: f64,
    /// Where the value was attained, as `(x, t)`.
    pub at: Option<(f64, f64)>,
    pub pass: bool,
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "ok  " } else { "FAIL" };
        write!(f, "{status} {:<34} {:>24.16e}", self.label, self.value)?;
        if let Some((x, t)) = self.at {
            write!(f, "  at ({x}, {t})")?;
        }
        Ok(())
    }
}

fn minimum(label: &'static str, m: GridMinimum) -> Line {
    Line {
        label,
        value: m.value,
        at: Some((m.x, m.t)),
        pass: m.value >= MIN_TOLERANCE,
    }
}

/// Runs every certificate on the grid. The `A` grid is fixed to
/// `z ∈ [0, 1]` and `α ∈ 10^{[−3, 3]}`.
pub fn verify_profile(grid: &ProfileGrid) -> Result<Vec<Line>, ProfileError> {
    grid.validate()?;
    let mut lines = vec![minimum("min Lf", lf_grid_check(grid)?)];

    let d = d_lf_check(grid)?;
    lines.push(minimum("min dLf/dx (finite difference)", d.min_finite_difference));
    lines.push(minimum("min dLf/dx (closed form)", d.min_closed_form));
    lines.push(Line {
        label: "dLf/dx closed form vs difference",
        value: d.max_disagreement,
        at: None,
        pass: d.max_disagreement <= AGREEMENT_TOLERANCE,
    });

    let a = a_polynomial_check(&AGrid::default())?;
    lines.push(Line {
        label: "min A(z, alpha)",
        value: a.value,
        at: Some((a.x, a.t)),
        pass: a.value >= MIN_TOLERANCE,
    });

    let ts = [-3.0, 0.0, 3.0];
    let near = lf_near_zero(&ts);
    let (worst_t, worst) = ts
        .iter()
        .zip(&near)
        .map(|(&t, &v)| (t, v.abs()))
        .fold((ts[0], 0.0), |acc, c| if c.1 > acc.1 { c } else { acc });
    lines.push(Line {
        label: "max |Lf| at x = 1e-6",
        value: worst,
        at: Some((LF_X_MIN, worst_t)),
        pass: worst <= NEAR_ZERO_TOLERANCE,
    });

    let [dx, dxx, dt] = derivative_cross_check(grid, DERIVATIVE_STEP)?;
    for (label, v) in [
        ("f_x vs difference", dx),
        ("f_xx vs difference", dxx),
        ("f_t vs difference", dt),
    ] {
        lines.push(Line {
            label,
            value: v,
            at: None,
            pass: v <= DERIVATIVE_TOLERANCE,
        });
    }
    Ok(lines)
}
