//! Inverse curvature flow of convex closed polygons, with numerical checks
//! of how the flow rounds them out.
//!
//! Start with [`curve`] for polygons and curvature, then [`flow`] for the
//! integrators. [`comparison`] holds the two-point chord-arc bound and
//! [`bounds`] the per-snapshot decay checks.

// `!(x > 0.0)` is used on purpose: it rejects NaN along with the rest.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod comparison;
pub mod curve;
pub mod error;
pub mod flow;

pub use curve::{compute_metrics, CurveMetrics, DiscreteCurve, Point};
pub use error::{BoundsError, CurveError, FlowError, ProfileError};

// The guide's snippets run as doc-tests of these empty modules.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/curves.md")]
    pub mod curves {}
    #[doc = include_str!("../../../book/src/flows.md")]
    pub mod flows {}
    #[doc = include_str!("../../../book/src/comparison.md")]
    pub mod comparison {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    pub mod bounds {}
    #[doc = include_str!("../../../book/src/runner.md")]
    pub mod runner {}
}
