use thiserror::Error;

/// Errors raised by curve construction and geometry.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("degenerate curve: {0}")]
    Degenerate(String),
    #[error("curve is not convex")]
    NotConvex,
}

/// Errors raised while integrating a flow.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FlowError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("convexity lost at vertex {vertex} (curvature {curvature:e})")]
    ConvexityLoss { vertex: usize, curvature: f64 },
    #[error("step rejected: dt = {dt:e} exceeds the stability bound {bound:e}")]
    StepRejected { dt: f64, bound: f64 },
    #[error("flow mode mismatch: state is {found}, step expects {expected}")]
    ModeMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error("at t = {time}: {source}")]
    AtTime {
        time: f64,
        #[source]
        source: Box<FlowError>,
    },
}

impl FlowError {
    /// Flow time attached by the integration loop, if any.
    pub fn time(&self) -> Option<f64> {
        match self {
            FlowError::AtTime { time, .. } => Some(*time),
            _ => None,
        }
    }

    /// The underlying error with any time annotation stripped.
    pub fn root(&self) -> &FlowError {
        match self {
            FlowError::AtTime { source, .. } => source.root(),
            other => other,
        }
    }
}

/// Errors raised by the comparison-function toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProfileError {
    #[error("argument x = {x} outside the domain [{lo}, {hi}]")]
    Domain { x: f64, lo: f64, hi: f64 },
    #[error("Lf has a removable singularity at x = 0; use the limit value 0")]
    Singularity,
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("curve length {length} is not normalized to 2π")]
    NotNormalized { length: f64 },
    #[error("no admissible offset: the upper end t̄ = {hi} of the search interval is infeasible")]
    NoAdmissibleOffset { hi: f64 },
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// Errors raised by the bound verifiers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("mesh is not uniform (relative edge spread {spread:e})")]
    NonUniformMesh { spread: f64 },
    #[error("{quantity} = {value:e} is below the noise floor {floor:e}")]
    NoiseFloor {
        quantity: &'static str,
        value: f64,
        floor: f64,
    },
    #[error("only {points} usable samples in the window [{lo}, {hi}]; a fit needs at least 2")]
    InsufficientData { lo: f64, hi: f64, points: usize },
    #[error(transparent)]
    Curve(#[from] CurveError),
}
