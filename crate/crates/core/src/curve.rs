//! Closed polygonal curves and their discrete differential geometry.
//!
//! A [`DiscreteCurve`] is a positively oriented closed polygon. Vertex `N - 1`
//! connects back to vertex `0`, and edge `i` runs from vertex `i` to vertex
//! `i + 1`. [`CurveMetrics`] holds everything the flow and the verifiers need:
//! edge lengths, cumulative arc length, unwrapped tangent angles, vertex
//! curvature and outward normals.
//!
//! Curvature at a vertex is the turning angle `φ` between the two adjacent
//! edges, measured as the chord `2 sin(φ/2)` of the unit tangents, divided by
//! the mean of the adjacent edge lengths. On a regular polygon inscribed in a
//! circle of radius `R` this is exactly `1/R`, and on a uniform mesh of a
//! smooth curve it is second-order accurate.

use std::f64::consts::{PI, TAU};

use nalgebra::Vector2;

use crate::error::CurveError;

pub type Point = Vector2<f64>;

/// Fewest vertices for which curvature estimation is meaningful.
pub const MIN_VERTICES: usize = 16;

/// A closed, positively oriented polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteCurve {
    vertices: Vec<Point>,
}

impl DiscreteCurve {
    /// Builds a curve after checking vertex count, finiteness, distinct
    /// consecutive vertices and counterclockwise orientation.
    ///
    /// Simplicity is not checked here (it is quadratic in `N`); see
    /// [`DiscreteCurve::is_simple`].
    pub fn new(vertices: Vec<Point>) -> Result<Self, CurveError> {
        if vertices.len() < MIN_VERTICES {
            return Err(CurveError::Parameter(format!(
                "need at least {MIN_VERTICES} vertices, got {}",
                vertices.len()
            )));
        }
        if vertices.iter().any(|v| !v.x.is_finite() || !v.y.is_finite()) {
            return Err(CurveError::Degenerate("non-finite vertex".into()));
        }
        let curve = DiscreteCurve { vertices };
        if let Some(i) = curve.edges().position(|e| e.norm() == 0.0) {
            return Err(CurveError::Degenerate(format!(
                "vertices {i} and {} coincide",
                (i + 1) % curve.len()
            )));
        }
        if curve.signed_area() <= 0.0 {
            return Err(CurveError::Degenerate(
                "curve is not positively oriented".into(),
            ));
        }
        Ok(curve)
    }

    pub fn from_xy(points: &[(f64, f64)]) -> Result<Self, CurveError> {
        Self::new(points.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point> {
        self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i]
    }

    /// Edge vectors `v[i+1] - v[i]`, wrapping at the end.
    pub fn edges(&self) -> impl Iterator<Item = Point> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| self.vertices[(i + 1) % n] - self.vertices[i])
    }

    /// Shoelace area; positive for counterclockwise curves.
    pub fn signed_area(&self) -> f64 {
        let n = self.vertices.len();
        0.5 * (0..n)
            .map(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % n];
                a.x * b.y - a.y * b.x
            })
            .sum::<f64>()
    }

    pub fn length(&self) -> f64 {
        self.edges().map(|e| e.norm()).sum()
    }

    pub fn translated(&self, offset: Point) -> DiscreteCurve {
        DiscreteCurve {
            vertices: self.vertices.iter().map(|v| v + offset).collect(),
        }
    }

    /// Scales every vertex about the origin. `factor` must be positive.
    pub fn scaled(&self, factor: f64) -> DiscreteCurve {
        assert!(factor > 0.0 && factor.is_finite(), "scale factor {factor}");
        DiscreteCurve {
            vertices: self.vertices.iter().map(|v| v * factor).collect(),
        }
    }

    /// Euclidean distance between vertices `i` and `j`. Panics on an
    /// out-of-range index.
    pub fn chord_distance(&self, i: usize, j: usize) -> f64 {
        (self.vertices[j] - self.vertices[i]).norm()
    }

    /// True iff the cross product of every pair of consecutive edges is
    /// strictly positive and the tangent winds exactly once.
    pub fn convexity_check(&self) -> bool {
        let n = self.vertices.len();
        let edges: Vec<Point> = self.edges().collect();
        let mut turning = 0.0;
        for i in 0..n {
            let prev = edges[(i + n - 1) % n];
            let next = edges[i];
            let cross = prev.perp(&next);
            if cross <= 0.0 {
                return false;
            }
            turning += cross.atan2(prev.dot(&next));
        }
        (turning - TAU).abs() < 1e-6
    }

    /// Whether no two non-adjacent edges intersect. Quadratic in `N`.
    pub fn is_simple(&self) -> bool {
        let n = self.vertices.len();
        for i in 0..n {
            let (a0, a1) = (self.vertices[i], self.vertices[(i + 1) % n]);
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (b0, b1) = (self.vertices[j], self.vertices[(j + 1) % n]);
                if segments_intersect(a0, a1, b0, b1) {
                    return false;
                }
            }
        }
        true
    }

    /// Arc-length weighted vertex average: each vertex carries half of each
    /// adjacent edge.
    pub fn centroid(&self) -> Point {
        let n = self.vertices.len();
        let lengths: Vec<f64> = self.edges().map(|e| e.norm()).collect();
        let total: f64 = lengths.iter().sum();
        let mut acc = Point::zeros();
        for i in 0..n {
            let w = 0.5 * (lengths[(i + n - 1) % n] + lengths[i]);
            acc += self.vertices[i] * w;
        }
        acc / total
    }
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b - a).perp(&(c - a))
}

fn segments_intersect(a0: Point, a1: Point, b0: Point, b1: Point) -> bool {
    let d1 = orient(b0, b1, a0);
    let d2 = orient(b0, b1, a1);
    let d3 = orient(a0, a1, b0);
    let d4 = orient(a0, a1, b1);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    let on = |p: Point, q: Point, r: Point| {
        r.x >= p.x.min(q.x) && r.x <= p.x.max(q.x) && r.y >= p.y.min(q.y) && r.y <= p.y.max(q.y)
    };
    (d1 == 0.0 && on(b0, b1, a0))
        || (d2 == 0.0 && on(b0, b1, a1))
        || (d3 == 0.0 && on(a0, a1, b0))
        || (d4 == 0.0 && on(a0, a1, b1))
}

/// Per-vertex geometry of a [`DiscreteCurve`].
#[derive(Debug, Clone, PartialEq)]
pub struct CurveMetrics {
    /// `edge_lengths[i] = |v[i+1] - v[i]|`.
    pub edge_lengths: Vec<f64>,
    /// Arc length from vertex 0 to vertex `i`; `cumulative_arclength[0] == 0`.
    pub cumulative_arclength: Vec<f64>,
    pub total_length: f64,
    /// Direction of edge `i`, unwrapped so consecutive differences are the
    /// turning angles.
    pub tangent_angles: Vec<f64>,
    /// Signed turning angle at vertex `i` (from edge `i-1` to edge `i`).
    pub turning_angles: Vec<f64>,
    pub curvature: Vec<f64>,
    /// Unit outward normal at vertex `i`: the bisecting tangent rotated by
    /// `-π/2`.
    pub outward_normal: Vec<Point>,
}

impl CurveMetrics {
    pub fn len(&self) -> usize {
        self.curvature.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curvature.is_empty()
    }

    /// Sum of the turning angles; `2π` for a simple positively oriented curve.
    pub fn total_turning(&self) -> f64 {
        self.turning_angles.iter().sum()
    }

    /// Shorter of the two arcs between vertices `i` and `j`, in `[0, L/2]`.
    pub fn arc_distance(&self, i: usize, j: usize) -> f64 {
        let along = (self.cumulative_arclength[j] - self.cumulative_arclength[i]).abs();
        along.min(self.total_length - along)
    }

    /// Length of the curve attributed to vertex `i`: half of each adjacent
    /// edge.
    pub fn dual_length(&self, i: usize) -> f64 {
        let n = self.edge_lengths.len();
        0.5 * (self.edge_lengths[(i + n - 1) % n] + self.edge_lengths[i])
    }

    pub fn kappa_min(&self) -> f64 {
        self.curvature.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn kappa_max(&self) -> f64 {
        self.curvature.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_edge(&self) -> f64 {
        self.edge_lengths.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Largest deviation of an edge length from the mean `L/N`, relative to
    /// the mean.
    pub fn edge_spread(&self) -> f64 {
        let mean = self.total_length / self.edge_lengths.len() as f64;
        self.edge_lengths
            .iter()
            .map(|&l| (l - mean).abs())
            .fold(0.0, f64::max)
            / mean
    }
}

/// Computes edge lengths, arc length, tangent angles, curvature and normals.
pub fn compute_metrics(curve: &DiscreteCurve) -> Result<CurveMetrics, CurveError> {
    let n = curve.len();
    let edges: Vec<Point> = curve.edges().collect();
    let edge_lengths: Vec<f64> = edges.iter().map(|e| e.norm()).collect();
    if let Some(i) = edge_lengths.iter().position(|&l| l == 0.0 || !l.is_finite()) {
        return Err(CurveError::Degenerate(format!("edge {i} has zero length")));
    }

    let mut cumulative_arclength = Vec::with_capacity(n);
    let mut s = 0.0;
    for &l in &edge_lengths {
        cumulative_arclength.push(s);
        s += l;
    }
    let total_length = s;

    let turning_angles: Vec<f64> = (0..n)
        .map(|i| {
            let prev = edges[(i + n - 1) % n];
            let next = edges[i];
            prev.perp(&next).atan2(prev.dot(&next))
        })
        .collect();

    let mut tangent_angles = Vec::with_capacity(n);
    let mut theta = edges[0].y.atan2(edges[0].x);
    tangent_angles.push(theta);
    for &phi in &turning_angles[1..] {
        theta += phi;
        tangent_angles.push(theta);
    }

    let mut curvature = Vec::with_capacity(n);
    let mut outward_normal = Vec::with_capacity(n);
    for i in 0..n {
        let prev = (i + n - 1) % n;
        let phi = turning_angles[i];
        let dual = 0.5 * (edge_lengths[prev] + edge_lengths[i]);
        curvature.push(2.0 * (0.5 * phi).sin() / dual);
        let t_prev = edges[prev] / edge_lengths[prev];
        let t_next = edges[i] / edge_lengths[i];
        let mut tangent = t_prev + t_next;
        let norm = tangent.norm();
        if norm > 1e-8 {
            tangent /= norm;
        } else {
            // Cusp: the edges reverse; take the perpendicular of the incoming edge.
            tangent = Point::new(-t_prev.y, t_prev.x);
        }
        outward_normal.push(Point::new(tangent.y, -tangent.x));
    }

    Ok(CurveMetrics {
        edge_lengths,
        cumulative_arclength,
        total_length,
        tangent_angles,
        turning_angles,
        curvature,
        outward_normal,
    })
}

fn check_count(n: usize) -> Result<(), CurveError> {
    if n < MIN_VERTICES {
        Err(CurveError::Parameter(format!(
            "need at least {MIN_VERTICES} vertices, got {n}"
        )))
    } else {
        Ok(())
    }
}

fn check_length(name: &str, value: f64) -> Result<(), CurveError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(CurveError::Parameter(format!(
            "{name} must be positive, got {value}"
        )))
    }
}

/// Regular `n`-gon inscribed in the circle of the given radius about the
/// origin, starting at `(radius, 0)`.
pub fn make_circle(radius: f64, n: usize) -> Result<DiscreteCurve, CurveError> {
    check_length("radius", radius)?;
    check_count(n)?;
    let vertices = (0..n)
        .map(|k| {
            let u = TAU * k as f64 / n as f64;
            Point::new(radius * u.cos(), radius * u.sin())
        })
        .collect();
    DiscreteCurve::new(vertices)
}

/// Ellipse `(a cos u, b sin u)` sampled at `n` points of equal arc length,
/// starting at `(a, 0)`.
pub fn make_ellipse(a: f64, b: f64, n: usize) -> Result<DiscreteCurve, CurveError> {
    check_length("a", a)?;
    check_length("b", b)?;
    check_count(n)?;
    let table = EllipseArc::new(a, b, 64 * n);
    let total = table.total();
    let mut vertices = Vec::with_capacity(n);
    for k in 0..n {
        let target = total * k as f64 / n as f64;
        let u = table.invert(target);
        vertices.push(Point::new(a * u.cos(), b * u.sin()));
    }
    resample_uniform(&DiscreteCurve::new(vertices)?, n)
}

/// Closed-form curvature of the ellipse `(a cos u, b sin u)` at parameter `u`.
pub fn ellipse_curvature(a: f64, b: f64, u: f64) -> f64 {
    let (s, c) = u.sin_cos();
    a * b / (a * a * s * s + b * b * c * c).powf(1.5)
}

// 5-point Gauss-Legendre on [-1, 1].
const GL_NODES: [f64; 5] = [
    0.0,
    -0.538_469_310_105_683_1,
    0.538_469_310_105_683_1,
    -0.906_179_845_938_664,
    0.906_179_845_938_664,
];
const GL_WEIGHTS: [f64; 5] = [
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_47,
    0.478_628_670_499_366_47,
    0.236_926_885_056_189_08,
    0.236_926_885_056_189_08,
];

/// Cumulative arc length of an ellipse over a uniform parameter grid.
struct EllipseArc {
    a: f64,
    b: f64,
    cells: usize,
    cumulative: Vec<f64>,
}

impl EllipseArc {
    fn new(a: f64, b: f64, cells: usize) -> Self {
        let mut table = EllipseArc {
            a,
            b,
            cells,
            cumulative: Vec::with_capacity(cells + 1),
        };
        let h = TAU / cells as f64;
        let mut s = 0.0;
        table.cumulative.push(0.0);
        for k in 0..cells {
            s += table.integrate(k as f64 * h, (k + 1) as f64 * h);
            table.cumulative.push(s);
        }
        table
    }

    fn speed(&self, u: f64) -> f64 {
        let (s, c) = u.sin_cos();
        (self.a * self.a * s * s + self.b * self.b * c * c).sqrt()
    }

    fn integrate(&self, lo: f64, hi: f64) -> f64 {
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        GL_NODES
            .iter()
            .zip(GL_WEIGHTS)
            .map(|(&x, w)| w * self.speed(mid + half * x))
            .sum::<f64>()
            * half
    }

    fn total(&self) -> f64 {
        self.cumulative[self.cells]
    }

    fn arc(&self, u: f64) -> f64 {
        let h = TAU / self.cells as f64;
        let k = ((u / h).floor() as usize).min(self.cells - 1);
        self.cumulative[k] + self.integrate(k as f64 * h, u)
    }

    /// Parameter `u` with arc length `target` from `u = 0`, by Newton's method.
    fn invert(&self, target: f64) -> f64 {
        let mut u = TAU * target / self.total();
        for _ in 0..50 {
            let step = (self.arc(u) - target) / self.speed(u);
            u = (u - step).clamp(0.0, TAU);
            if step.abs() < 1e-15 {
                break;
            }
        }
        u
    }
}

/// One pass of linear interpolation at equal arc-length spacing along the
/// polygon.
fn resample_once(curve: &DiscreteCurve, n: usize) -> Vec<Point> {
    let m = curve.len();
    let vs = curve.vertices();
    let mut cumulative = Vec::with_capacity(m + 1);
    let mut s = 0.0;
    cumulative.push(0.0);
    for e in curve.edges() {
        s += e.norm();
        cumulative.push(s);
    }
    let total = s;
    let mut out = Vec::with_capacity(n);
    let mut edge = 0;
    for k in 0..n {
        let target = total * k as f64 / n as f64;
        while edge + 1 < m && cumulative[edge + 1] <= target {
            edge += 1;
        }
        let len = cumulative[edge + 1] - cumulative[edge];
        let frac = ((target - cumulative[edge]) / len).clamp(0.0, 1.0);
        let a = vs[edge];
        let b = vs[(edge + 1) % m];
        out.push(a + (b - a) * frac);
    }
    out
}

/// Resamples to `n` vertices equally spaced in arc length, keeping the
/// first vertex.
///
/// A single interpolation pass cuts the corners it steps over, which leaves
/// the new edges unequal at second order. The pass is repeated on its own
/// output until no vertex moves by more than `1e-13 L`, so the result has
/// equal edges to rounding and resampling it again is the identity.
pub fn resample_uniform(curve: &DiscreteCurve, n: usize) -> Result<DiscreteCurve, CurveError> {
    check_count(n)?;
    if let Some(i) = curve.edges().position(|e| e.norm() == 0.0) {
        return Err(CurveError::Degenerate(format!("edge {i} has zero length")));
    }
    let tol = 1e-13 * curve.length();
    let mut current = DiscreteCurve::new(resample_once(curve, n))?;
    for _ in 0..12 {
        let next = resample_once(&current, n);
        let moved = next
            .iter()
            .zip(current.vertices())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        current = DiscreteCurve::new(next)?;
        if moved <= tol {
            break;
        }
    }
    Ok(current)
}

/// Distance from `p` to the segment `[a, b]`.
pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_squared();
    let t = if len2 > 0.0 {
        ((p - a).dot(&ab) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (p - (a + ab * t)).norm()
}

fn directed_hausdorff(from: &DiscreteCurve, to: &DiscreteCurve) -> f64 {
    let n = to.len();
    let tv = to.vertices();
    from.vertices()
        .iter()
        .map(|&p| {
            (0..n)
                .map(|j| point_segment_distance(p, tv[j], tv[(j + 1) % n]))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

/// Symmetric Hausdorff distance between two polygons, measured from each
/// vertex set to the other polygon's edges.
pub fn hausdorff_distance(a: &DiscreteCurve, b: &DiscreteCurve) -> f64 {
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}

/// Polar curve `r(θ) = radius (1 + Σ amplitude_k cos(mode_k θ + phase_k))`
/// resampled to `n` uniform vertices.
pub fn make_perturbed_circle(
    radius: f64,
    modes: &[(u32, f64, f64)],
    n: usize,
) -> Result<DiscreteCurve, CurveError> {
    check_length("radius", radius)?;
    check_count(n)?;
    let dense = 16 * n;
    let vertices = (0..dense)
        .map(|k| {
            let theta = TAU * k as f64 / dense as f64;
            let r = radius
                * (1.0
                    + modes
                        .iter()
                        .map(|&(m, amp, phase)| amp * (m as f64 * theta + phase).cos())
                        .sum::<f64>());
            Point::new(r * theta.cos(), r * theta.sin())
        })
        .collect();
    resample_uniform(&DiscreteCurve::new(vertices)?, n)
}

/// Perimeter of the regular `n`-gon inscribed in a circle of radius `r`.
pub fn regular_polygon_perimeter(radius: f64, n: usize) -> f64 {
    2.0 * n as f64 * radius * (PI / n as f64).sin()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn star() -> DiscreteCurve {
        let n = 64;
        let vs = (0..n)
            .map(|k| {
                let t = TAU * k as f64 / n as f64;
                let r = 1.0 + 0.5 * (4.0 * t).cos();
                Point::new(r * t.cos(), r * t.sin())
            })
            .collect();
        DiscreteCurve::new(vs).unwrap()
    }

    #[test]
    fn circle_perimeter_matches_closed_form() {
        let c = make_circle(1.0, 4096).unwrap();
        let l = compute_metrics(&c).unwrap().total_length;
        assert_abs_diff_eq!(l, 2.0 * 4096.0 * (PI / 4096.0).sin(), epsilon = 1e-12);
        assert!((l - TAU).abs() < 1e-6);
    }

    #[test]
    fn circle_curvature_is_reciprocal_radius() {
        let m = compute_metrics(&make_circle(2.0, 256).unwrap()).unwrap();
        for &k in &m.curvature {
            assert_abs_diff_eq!(k, 0.5, epsilon = 1e-3);
        }
        let m = compute_metrics(&make_circle(1.0, 512).unwrap()).unwrap();
        assert!(m.curvature.iter().all(|k| (k - 1.0).abs() <= 1e-3));
        assert_abs_diff_eq!(m.total_turning(), TAU, epsilon = 1e-9);
    }

    #[test]
    fn too_few_vertices_is_rejected() {
        assert!(matches!(make_circle(1.0, 15), Err(CurveError::Parameter(_))));
        assert!(matches!(make_circle(0.0, 64), Err(CurveError::Parameter(_))));
        assert!(matches!(make_circle(-1.0, 64), Err(CurveError::Parameter(_))));
        assert!(matches!(
            make_ellipse(1.0, f64::NAN, 64),
            Err(CurveError::Parameter(_))
        ));
    }

    #[test]
    fn repeated_vertex_is_degenerate() {
        let mut vs = make_circle(1.0, 32).unwrap().into_vertices();
        vs[5] = vs[4];
        assert!(matches!(DiscreteCurve::new(vs), Err(CurveError::Degenerate(_))));
    }

    #[test]
    fn clockwise_input_is_degenerate() {
        let mut vs = make_circle(1.0, 32).unwrap().into_vertices();
        vs.reverse();
        assert!(matches!(DiscreteCurve::new(vs), Err(CurveError::Degenerate(_))));
    }

    #[test]
    fn round_ellipse_is_the_circle() {
        let e = make_ellipse(1.0, 1.0, 256).unwrap();
        let c = make_circle(1.0, 256).unwrap();
        for (p, q) in e.vertices().iter().zip(c.vertices()) {
            assert!((p - q).norm() < 1e-8);
        }
    }

    #[test]
    fn ellipse_curvature_extremes() {
        let e = make_ellipse(2.0, 1.0, 1024).unwrap();
        let m = compute_metrics(&e).unwrap();
        assert_abs_diff_eq!(m.kappa_max(), 2.0, epsilon = 1e-2);
        assert_abs_diff_eq!(m.kappa_min(), 0.25, epsilon = 1e-2);
        assert!(e.convexity_check());
        assert!(make_ellipse(3.0, 1.0, 256).unwrap().convexity_check());
    }

    #[test]
    fn ellipse_curvature_converges_at_second_order() {
        // Vertices lie within O(h^3) of the ellipse, so the closed form at
        // the nearest parameter is the reference.
        let (a, b) = (2.0, 1.0);
        let mut errors = Vec::new();
        for n in [256usize, 512, 1024, 2048] {
            let e = make_ellipse(a, b, n).unwrap();
            let m = compute_metrics(&e).unwrap();
            let err = e
                .vertices()
                .iter()
                .zip(&m.curvature)
                .map(|(v, k)| (k - ellipse_curvature(a, b, (v.y / b).atan2(v.x / a))).abs())
                .fold(0.0, f64::max);
            errors.push(err);
        }
        for w in errors.windows(2) {
            let order = (w[0] / w[1]).log2();
            assert!(order >= 1.9, "observed order {order} from {errors:?}");
        }
    }

    #[test]
    fn circle_curvature_error_vanishes_for_all_resolutions() {
        for n in [128usize, 256, 512, 1024] {
            let m = compute_metrics(&make_circle(3.0, n).unwrap()).unwrap();
            let err = m
                .curvature
                .iter()
                .map(|k| (3.0 * k - 1.0).abs())
                .fold(0.0, f64::max);
            // Rounding in the turning angle grows like eps / (κh)^2.
            assert!(err < 1e-10, "n = {n}: {err}");
        }
    }

    #[test]
    fn normals_are_unit_outward_and_orthogonal() {
        for curve in [make_circle(1.0, 512).unwrap(), make_ellipse(2.0, 1.0, 512).unwrap()] {
            let m = compute_metrics(&curve).unwrap();
            let c = curve.centroid();
            for (i, nu) in m.outward_normal.iter().enumerate() {
                assert_abs_diff_eq!(nu.norm(), 1.0, epsilon = 1e-12);
                let theta = m.tangent_angles[i] - 0.5 * m.turning_angles[i];
                let tangent = Point::new(theta.cos(), theta.sin());
                assert!(nu.dot(&tangent).abs() < 1e-12);
                assert!(nu.dot(&(curve.vertex(i) - c)) > 0.0);
            }
        }
    }

    #[test]
    fn resampling_a_uniform_circle_is_a_fixed_point() {
        let c = make_circle(1.0, 300).unwrap();
        let r = resample_uniform(&c, 300).unwrap();
        for (p, q) in r.vertices().iter().zip(c.vertices()) {
            assert!((p - q).norm() < 1e-12);
        }
    }

    #[test]
    fn resampled_ellipse_has_equal_edges_and_keeps_length() {
        let e = make_ellipse(2.0, 1.0, 1024).unwrap();
        let before = compute_metrics(&e).unwrap().total_length;
        let r = resample_uniform(&e, 1024).unwrap();
        let m = compute_metrics(&r).unwrap();
        let mean = m.total_length / 1024.0;
        let spread = m
            .edge_lengths
            .iter()
            .map(|l| (l - mean).abs())
            .fold(0.0, f64::max);
        assert!(spread < 1e-10 * m.total_length);
        assert!(((m.total_length - before) / before).abs() < 1e-10);
        assert_eq!(r.vertex(0), e.vertex(0));
    }

    #[test]
    fn resampling_is_idempotent_on_uneven_input() {
        let vs: Vec<Point> = (0..200)
            .map(|k| {
                let u = TAU * (k as f64 / 200.0 + 0.03 * (TAU * k as f64 / 200.0).sin());
                Point::new(3.0 * u.cos(), u.sin())
            })
            .collect();
        let raw = DiscreteCurve::new(vs).unwrap();
        let once = resample_uniform(&raw, 128).unwrap();
        let twice = resample_uniform(&once, 128).unwrap();
        let moved = once
            .vertices()
            .iter()
            .zip(twice.vertices())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(moved < 1e-10, "{moved}");
    }

    #[test]
    fn chord_and_arc_on_the_circle() {
        let c = make_circle(1.0, 1024).unwrap();
        let m = compute_metrics(&c).unwrap();
        assert_abs_diff_eq!(c.chord_distance(0, 512), 2.0, epsilon = 2e-5);
        assert_abs_diff_eq!(c.chord_distance(0, 256), 2f64.sqrt(), epsilon = 2e-5);
        assert_eq!(c.chord_distance(7, 7), 0.0);
        assert_eq!(m.arc_distance(7, 7), 0.0);
        let l = compute_metrics(&c.scaled(TAU / m.total_length)).unwrap();
        assert_abs_diff_eq!(l.arc_distance(0, 512), PI, epsilon = 1e-6);
        assert_abs_diff_eq!(l.arc_distance(100, 900), l.arc_distance(900, 100));
    }

    #[test]
    fn convexity_predicate() {
        assert!(make_circle(1.0, 64).unwrap().convexity_check());
        assert!(!star().convexity_check());
        assert!(star().is_simple());
    }

    #[test]
    fn self_intersection_is_detected() {
        let mut vs = make_circle(1.0, 32).unwrap().into_vertices();
        vs.swap(3, 20);
        let c = DiscreteCurve::new(vs);
        if let Ok(c) = c {
            assert!(!c.is_simple());
        }
    }

    #[test]
    fn centroid_symmetry_and_translation() {
        let offset = Point::new(3.0, -1.0);
        let c = make_circle(0.7, 128).unwrap().translated(offset);
        assert!((c.centroid() - offset).norm() < 1e-10);
        assert!(make_ellipse(2.0, 1.0, 256).unwrap().centroid().norm() < 1e-10);
        let shifted = make_circle(1.0, 128).unwrap().translated(Point::new(0.5, 0.0));
        assert!((shifted.centroid() - Point::new(0.5, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn hausdorff_between_concentric_circles() {
        let a = make_circle(1.0, 256).unwrap();
        let b = make_circle(1.5, 256).unwrap();
        assert_abs_diff_eq!(hausdorff_distance(&a, &b), 0.5, epsilon = 1e-12);
        assert_eq!(hausdorff_distance(&a, &a), 0.0);
    }
}
