//! Circular-arc polygons and their graded boundary parametrization.
//!
//! Side `k` of an [`ArcPolygon`] runs from `v_k` to `v_{k+1}` and occupies the
//! parameter interval `[2π k/m, 2π (k+1)/m]` of the ungraded parametrization
//! `η̂`, linearly in arclength for segments and in angle for arcs.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grading::{Graded, GradingParams};

const TWO_PI: f64 = 2.0 * PI;

/// Relative tolerance for arc endpoints lying on the same circle.
pub const RADIUS_TOL: f64 = 1e-12;

/// Samples per side used for orientation, Jordan and distance queries.
const SAMPLES_PER_SIDE: usize = 64;

/// Which side of the boundary the domain lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Bounded domain, boundary traversed counterclockwise.
    Counterclockwise,
    /// Unbounded domain, boundary traversed clockwise.
    Clockwise,
}

impl Orientation {
    /// `+1` for counterclockwise, `-1` for clockwise.
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Counterclockwise => 1.0,
            Orientation::Clockwise => -1.0,
        }
    }
}

/// Precomputed shape of one side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum SideShape {
    Segment { start: Complex64, end: Complex64 },
    Arc { center: Complex64, radius: f64, start_angle: f64, sweep: f64 },
}

/// Point and `τ`-derivatives of a side at one `τ ∈ [0, 1]`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SideSample {
    pub point: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
}

impl SideShape {
    pub(crate) fn new(a: Complex64, b: Complex64, center: Option<Complex64>, d: i8) -> Result<Self> {
        let scale = a.norm().max(b.norm()).max(1.0);
        if (b - a).norm() <= 1e-14 * scale {
            return Err(Error::InvalidSide(format!("coincident endpoints {a} and {b}")));
        }
        match (center, d) {
            (None, 0) => Ok(SideShape::Segment { start: a, end: b }),
            (Some(c), 1) | (Some(c), -1) => {
                let ra = (a - c).norm();
                let rb = (b - c).norm();
                if ra == 0.0 || (ra - rb).abs() > RADIUS_TOL * ra {
                    return Err(Error::InvalidSide(format!(
                        "arc endpoints {a} and {b} are at radii {ra} and {rb} from center {c}"
                    )));
                }
                let start_angle = (a - c).arg();
                let diff = (b - c).arg() - start_angle;
                // Sweep has the sign of d and magnitude in (0, 2π).
                let sweep = if d > 0 { diff.rem_euclid(TWO_PI) } else { -(-diff).rem_euclid(TWO_PI) };
                Ok(SideShape::Arc { center: c, radius: 0.5 * (ra + rb), start_angle, sweep })
            }
            (None, _) => Err(Error::InvalidSide(format!("segment with nonzero indicator {d}"))),
            (Some(_), 0) => Err(Error::InvalidSide("arc center given with indicator 0".into())),
            (Some(_), _) => Err(Error::InvalidSide(format!("indicator {d} not in {{-1, 0, 1}}"))),
        }
    }

    pub(crate) fn sample(&self, tau: f64) -> SideSample {
        match *self {
            SideShape::Segment { start, end } => {
                let dir = end - start;
                let point = if tau >= 1.0 { end } else { start + dir * tau };
                SideSample { point, d1: dir, d2: Complex64::new(0.0, 0.0) }
            }
            SideShape::Arc { center, radius, start_angle, sweep } => {
                let e = Complex64::from_polar(radius, start_angle + sweep * tau);
                let d1 = Complex64::new(0.0, sweep) * e;
                SideSample { point: center + e, d1, d2: Complex64::new(0.0, sweep) * d1 }
            }
        }
    }

    /// Parameter `τ ∈ [0, 1]` of the point on the side closest to `z`, and the
    /// distance to it.
    pub(crate) fn project(&self, z: Complex64) -> (f64, f64) {
        match *self {
            SideShape::Segment { start, end } => {
                let dir = end - start;
                let tau = (((z - start) * dir.conj()).re / dir.norm_sqr()).clamp(0.0, 1.0);
                let p = if tau >= 1.0 { end } else { start + dir * tau };
                (tau, (z - p).norm())
            }
            SideShape::Arc { center, radius, start_angle, sweep } => {
                let rel = z - center;
                let best_end = |this: &Self| {
                    let da = (z - this.sample(0.0).point).norm();
                    let db = (z - this.sample(1.0).point).norm();
                    if da <= db {
                        (0.0, da)
                    } else {
                        (1.0, db)
                    }
                };
                if rel.norm() == 0.0 {
                    return best_end(self);
                }
                let offset = if sweep > 0.0 {
                    (rel.arg() - start_angle).rem_euclid(TWO_PI)
                } else {
                    -(start_angle - rel.arg()).rem_euclid(TWO_PI)
                };
                let tau = offset / sweep;
                if (0.0..=1.0).contains(&tau) {
                    (tau, (rel.norm() - radius).abs())
                } else {
                    best_end(self)
                }
            }
        }
    }

    pub(crate) fn reversed(&self) -> Self {
        match *self {
            SideShape::Segment { start, end } => SideShape::Segment { start: end, end: start },
            SideShape::Arc { center, radius, start_angle, sweep } => {
                SideShape::Arc { center, radius, start_angle: start_angle + sweep, sweep: -sweep }
            }
        }
    }
}

/// Point and `τ`-derivative of the side from `a` to `b`.
///
/// Segments are traced linearly; arcs about `center` are traced at constant
/// angular speed, counterclockwise when `d = +1` and clockwise when `d = -1`.
pub fn side_point(
    a: Complex64,
    b: Complex64,
    center: Option<Complex64>,
    d: i8,
    tau: f64,
) -> Result<(Complex64, Complex64)> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::Domain(format!("side parameter {tau} outside [0, 1]")));
    }
    let s = SideShape::new(a, b, center, d)?.sample(tau);
    Ok((s.point, s.d1))
}

/// A Jordan curve made of straight segments and circular arcs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolygonJson", into = "PolygonJson")]
pub struct ArcPolygon {
    vertices: Vec<Complex64>,
    centers: Vec<Option<Complex64>>,
    indicators: Vec<i8>,
    #[serde(skip)]
    shapes: Vec<SideShape>,
}

impl ArcPolygon {
    /// Validates and builds a polygon. `centers[k]` and `indicators[k]`
    /// describe the side from `vertices[k]` to `vertices[k + 1]`.
    pub fn new(vertices: Vec<Complex64>, centers: Vec<Option<Complex64>>, indicators: Vec<i8>) -> Result<Self> {
        let m = vertices.len();
        if m < 2 {
            return Err(Error::InvalidPolygon(format!("{m} vertices; at least 2 are required")));
        }
        if centers.len() != m || indicators.len() != m {
            return Err(Error::InvalidPolygon(format!(
                "{m} vertices but {} centers and {} indicators",
                centers.len(),
                indicators.len()
            )));
        }
        if let Some(v) = vertices.iter().find(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::InvalidPolygon(format!("non-finite vertex {v}")));
        }
        let shapes = (0..m)
            .map(|k| {
                SideShape::new(vertices[k], vertices[(k + 1) % m], centers[k], indicators[k])
                    .map_err(|e| Error::InvalidPolygon(format!("side {}: {e}", k + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        let poly = Self { vertices, centers, indicators, shapes };
        poly.check_jordan()?;
        Ok(poly)
    }

    /// A polygon with straight sides only.
    pub fn straight(vertices: Vec<Complex64>) -> Result<Self> {
        let m = vertices.len();
        Self::new(vertices, vec![None; m], vec![0; m])
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn centers(&self) -> &[Option<Complex64>] {
        &self.centers
    }

    pub fn indicators(&self) -> &[i8] {
        &self.indicators
    }

    /// Applies `z ↦ a z + b` to every vertex and center.
    pub fn similarity(&self, a: Complex64, b: Complex64) -> Result<Self> {
        if a.norm() == 0.0 {
            return Err(Error::Domain("similarity with zero scale".into()));
        }
        Self::new(
            self.vertices.iter().map(|&v| a * v + b).collect(),
            self.centers.iter().map(|c| c.map(|c| a * c + b)).collect(),
            self.indicators.clone(),
        )
    }

    /// The same curve traversed backwards, keeping `v_1` as the first vertex.
    ///
    /// Vertex `j` of the result is vertex `(m - j) mod m` of `self`.
    pub fn reversed(&self) -> Self {
        let m = self.len();
        let vertices = (0..m).map(|j| self.vertices[(m - j) % m]).collect();
        let centers = (0..m).map(|j| self.centers[m - 1 - j]).collect();
        let indicators = (0..m).map(|j| -self.indicators[m - 1 - j]).collect();
        let shapes = (0..m).map(|j| self.shapes[m - 1 - j].reversed()).collect();
        Self { vertices, centers, indicators, shapes }
    }

    /// Point of the ungraded parametrization `η̂(s)`, `s ∈ [0, 2π]`.
    pub fn point_at(&self, s: f64) -> Complex64 {
        let (k, tau) = self.side_of(s);
        self.shapes[k].sample(tau).point
    }

    fn side_of(&self, s: f64) -> (usize, f64) {
        let m = self.len();
        let x = s * m as f64 / TWO_PI;
        let k = (x.floor().max(0.0) as usize).min(m - 1);
        (k, (x - k as f64).clamp(0.0, 1.0))
    }

    /// Dense sample of the boundary, closed implicitly.
    pub fn sample_boundary(&self, per_side: usize) -> Vec<Complex64> {
        let mut pts = Vec::with_capacity(per_side * self.len());
        for shape in &self.shapes {
            for i in 0..per_side {
                pts.push(shape.sample(i as f64 / per_side as f64).point);
            }
        }
        pts
    }

    /// Signed enclosed area; positive for counterclockwise traversal.
    pub fn signed_area(&self) -> f64 {
        // Exact for segments; arcs add their circular-segment contribution.
        let mut area = 0.0;
        for shape in &self.shapes {
            match *shape {
                SideShape::Segment { start, end } => area += 0.5 * (start.re * end.im - end.re * start.im),
                SideShape::Arc { center, radius, start_angle, sweep } => {
                    let a = center + Complex64::from_polar(radius, start_angle);
                    let b = center + Complex64::from_polar(radius, start_angle + sweep);
                    area += 0.5 * (a.re * b.im - b.re * a.im);
                    area += 0.5 * radius * radius * (sweep - sweep.sin());
                }
            }
        }
        area
    }

    pub fn orientation(&self) -> Orientation {
        if self.signed_area() >= 0.0 {
            Orientation::Counterclockwise
        } else {
            Orientation::Clockwise
        }
    }

    /// True when the ungraded parametrization has a continuous derivative at
    /// every vertex, as for a circle split into equal arcs.
    pub fn is_smooth(&self) -> bool {
        let m = self.len();
        (0..m).all(|k| {
            let before = self.shapes[(k + m - 1) % m].sample(1.0).d1;
            let after = self.shapes[k].sample(0.0).d1;
            (before - after).norm() <= 1e-12 * after.norm()
        })
    }

    /// Distance from `z` to the curve.
    pub fn distance(&self, z: Complex64) -> f64 {
        self.shapes.iter().map(|s| s.project(z).1).fold(f64::INFINITY, f64::min)
    }

    /// Side index, side parameter `τ` and distance of the point of the curve
    /// closest to `z`.
    pub(crate) fn closest(&self, z: Complex64) -> (usize, f64, f64) {
        let mut best = (0, 0.0, f64::INFINITY);
        for (k, shape) in self.shapes.iter().enumerate() {
            let (tau, d) = shape.project(z);
            if d < best.2 {
                best = (k, tau, d);
            }
        }
        best
    }

    /// Winding number of the curve around `z` (0 outside, ±1 inside).
    pub fn winding_number(&self, z: Complex64) -> i32 {
        let mut total = 0.0;
        for shape in &self.shapes {
            match *shape {
                SideShape::Segment { start, end } => total += ((end - z) / (start - z)).arg(),
                SideShape::Arc { .. } => {
                    // Split arcs so each piece subtends well under π as seen from z.
                    let pieces = 16;
                    let mut prev = shape.sample(0.0).point;
                    for i in 1..=pieces {
                        let next = shape.sample(i as f64 / pieces as f64).point;
                        total += ((next - z) / (prev - z)).arg();
                        prev = next;
                    }
                }
            }
        }
        (total / TWO_PI).round() as i32
    }

    /// Whether `z` lies in the bounded region enclosed by the curve.
    pub fn encloses(&self, z: Complex64) -> bool {
        self.winding_number(z) != 0
    }

    /// Axis-aligned bounding box `(min, max)` of a dense boundary sample.
    pub fn bounding_box(&self) -> (Complex64, Complex64) {
        let pts = self.sample_boundary(SAMPLES_PER_SIDE);
        let mut lo = pts[0];
        let mut hi = pts[0];
        for p in pts {
            lo = Complex64::new(lo.re.min(p.re), lo.im.min(p.im));
            hi = Complex64::new(hi.re.max(p.re), hi.im.max(p.im));
        }
        (lo, hi)
    }

    /// Sampled simple-curve check: non-adjacent sides must stay apart.
    fn check_jordan(&self) -> Result<()> {
        let m = self.len();
        if m == 2 && self.indicators.iter().all(|&d| d == 0) {
            return Err(Error::InvalidPolygon("two straight sides enclose no area".into()));
        }
        let polys: Vec<Vec<Complex64>> = self
            .shapes
            .iter()
            .map(|s| (0..=SAMPLES_PER_SIDE).map(|i| s.sample(i as f64 / SAMPLES_PER_SIDE as f64).point).collect())
            .collect();
        for i in 0..m {
            for j in i + 1..m {
                let adjacent_next = j == i + 1;
                let adjacent_prev = i == 0 && j == m - 1;
                for (a, seg_a) in polys[i].windows(2).enumerate() {
                    for (b, seg_b) in polys[j].windows(2).enumerate() {
                        // Shared vertices are allowed to touch.
                        if adjacent_next && a == SAMPLES_PER_SIDE - 1 && b == 0 {
                            continue;
                        }
                        if adjacent_prev && a == 0 && b == SAMPLES_PER_SIDE - 1 {
                            continue;
                        }
                        if m == 2 && ((a == 0 && b == SAMPLES_PER_SIDE - 1) || (a == SAMPLES_PER_SIDE - 1 && b == 0)) {
                            continue;
                        }
                        if segments_intersect(seg_a[0], seg_a[1], seg_b[0], seg_b[1]) {
                            return Err(Error::InvalidPolygon(format!("sides {} and {} intersect", i + 1, j + 1)));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Closed-segment intersection test; touching counts.
fn segments_intersect(p1: Complex64, p2: Complex64, q1: Complex64, q2: Complex64) -> bool {
    let d1 = cross(q2 - q1, p1 - q1);
    let d2 = cross(q2 - q1, p2 - q1);
    let d3 = cross(p2 - p1, q1 - p1);
    let d4 = cross(p2 - p1, q2 - p1);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    let within = |a: Complex64, b: Complex64, z: Complex64| {
        z.re >= a.re.min(b.re) && z.re <= a.re.max(b.re) && z.im >= a.im.min(b.im) && z.im <= a.im.max(b.im)
    };
    (d1 == 0.0 && within(q1, q2, p1))
        || (d2 == 0.0 && within(q1, q2, p2))
        || (d3 == 0.0 && within(p1, p2, q1))
        || (d4 == 0.0 && within(p1, p2, q2))
}

/// JSON domain format: `{"vertices": [[re, im], ...], "centers": [[re, im] | null, ...], "indicators": [..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolygonJson {
    pub vertices: Vec<[f64; 2]>,
    pub centers: Vec<Option<[f64; 2]>>,
    pub indicators: Vec<i8>,
}

impl TryFrom<PolygonJson> for ArcPolygon {
    type Error = Error;

    fn try_from(j: PolygonJson) -> Result<Self> {
        ArcPolygon::new(
            j.vertices.iter().map(|v| Complex64::new(v[0], v[1])).collect(),
            j.centers.iter().map(|c| c.map(|c| Complex64::new(c[0], c[1]))).collect(),
            j.indicators,
        )
    }
}

impl From<ArcPolygon> for PolygonJson {
    fn from(p: ArcPolygon) -> Self {
        PolygonJson {
            vertices: p.vertices.iter().map(|v| [v.re, v.im]).collect(),
            centers: p.centers.iter().map(|c| c.map(|c| [c.re, c.im])).collect(),
            indicators: p.indicators,
        }
    }
}

fn graded(grading: Option<GradingParams>, t: f64) -> Graded {
    match grading {
        Some(g) => g.eval(t),
        None => Graded { value: t, d1: 1.0, d2: 0.0 },
    }
}

/// Graded nodes of a boundary ready for Nyström quadrature.
#[derive(Debug, Clone)]
pub struct BoundaryDiscretization {
    n: usize,
    /// `None` when every vertex is a smooth joint and no grading is needed.
    grading: Option<GradingParams>,
    orientation: Orientation,
    /// The polygon in traversal order (reversed for clockwise input).
    curve: ArcPolygon,
    /// `vertex_map[j]` is the index in the caller's polygon of corner `j`.
    vertex_map: Vec<usize>,
    graded_params: Vec<f64>,
    points: Vec<Complex64>,
    derivs: Vec<Complex64>,
    second_derivs: Vec<Complex64>,
}

impl BoundaryDiscretization {
    /// Graded discretization of `poly` with `n` nodes traversed in the
    /// requested orientation. The polygon is reversed (keeping `v_1` first)
    /// when its own orientation differs from `orientation`.
    pub fn new(poly: &ArcPolygon, n: usize, p: u32, orientation: Orientation) -> Result<Self> {
        let m = poly.len();
        if n == 0 || !n.is_multiple_of(m) {
            return Err(Error::NodeCount { n, m });
        }
        if !n.is_multiple_of(2) || n < 4 {
            return Err(Error::Domain(format!("node count {n} must be even and at least 4")));
        }
        let grading = GradingParams::new(p, m)?;
        let grading = if poly.is_smooth() { None } else { Some(grading) };
        let (curve, vertex_map) = if poly.orientation() == orientation {
            (poly.clone(), (0..m).collect())
        } else {
            (poly.reversed(), (0..m).map(|j| (m - j) % m).collect())
        };

        let side_rate = m as f64 / TWO_PI;
        let per_side = n / m;
        let mut graded_params = Vec::with_capacity(n);
        let mut points = Vec::with_capacity(n);
        let mut derivs = Vec::with_capacity(n);
        let mut second_derivs = Vec::with_capacity(n);
        for i in 0..n {
            let t = TWO_PI * i as f64 / n as f64;
            let g = graded(grading, t);
            let k = i / per_side;
            let shape = &curve.shapes[k];
            if i % per_side == 0 && grading.is_some() {
                // Corner node: exact vertex, zero weighted derivative.
                let s = shape.sample(0.0);
                graded_params.push(TWO_PI * k as f64 / m as f64);
                points.push(curve.vertices[k]);
                derivs.push(Complex64::new(0.0, 0.0));
                second_derivs.push(s.d1 * side_rate * g.d2);
                continue;
            }
            let tau = (g.value * side_rate - k as f64).clamp(0.0, 1.0);
            let s = shape.sample(tau);
            let d1 = s.d1 * side_rate;
            let d2 = s.d2 * side_rate * side_rate;
            graded_params.push(g.value);
            points.push(s.point);
            derivs.push(d1 * g.d1);
            second_derivs.push(d2 * g.d1 * g.d1 + d1 * g.d2);
        }
        Ok(Self { n, grading, orientation, curve, vertex_map, graded_params, points, derivs, second_derivs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.curve.len()
    }

    pub fn grading(&self) -> Option<GradingParams> {
        self.grading
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// The polygon in traversal order.
    pub fn curve(&self) -> &ArcPolygon {
        &self.curve
    }

    /// Equispaced parameter `t_k` of node `k` (0-based).
    pub fn node_param(&self, k: usize) -> f64 {
        TWO_PI * k as f64 / self.n as f64
    }

    pub fn graded_params(&self) -> &[f64] {
        &self.graded_params
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    /// `η̂'(s_k) δ'(t_k)`.
    pub fn weighted_derivs(&self) -> &[Complex64] {
        &self.derivs
    }

    /// `η''(t_k)` of the graded parametrization.
    pub fn second_derivs(&self) -> &[Complex64] {
        &self.second_derivs
    }

    /// Node indices of the corners, in traversal order.
    pub fn corner_indices(&self) -> Vec<usize> {
        (0..self.m()).map(|k| k * self.n / self.m()).collect()
    }

    /// Map from traversal-order corner to caller vertex index.
    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    /// Parameter `t` at which the caller's vertex `v` (0-based) sits.
    pub fn vertex_param(&self, v: usize) -> Option<f64> {
        let j = self.vertex_map.iter().position(|&x| x == v)?;
        Some(TWO_PI * j as f64 / self.m() as f64)
    }

    /// `η(t)` and `η'(t)` of the graded parametrization at any `t`.
    pub fn eval(&self, t: f64) -> (Complex64, Complex64) {
        let t = t.rem_euclid(TWO_PI);
        let g = graded(self.grading, t);
        let m = self.m();
        let side_rate = m as f64 / TWO_PI;
        let x = g.value * side_rate;
        let k = (x.floor().max(0.0) as usize).min(m - 1);
        let s = self.curve.shapes[k].sample((x - k as f64).clamp(0.0, 1.0));
        (s.point, s.d1 * side_rate * g.d1)
    }

    /// Parameter `t̂` of the boundary point closest to `z`, with the distance.
    /// Vertices map to their exact corner parameters.
    pub fn locate(&self, z: Complex64) -> (f64, f64) {
        let m = self.m();
        let scale = self.points.iter().map(|p| p.norm()).fold(1.0, f64::max);
        for (j, v) in self.curve.vertices.iter().enumerate() {
            if (z - v).norm() <= 1e-12 * scale {
                return (TWO_PI * j as f64 / m as f64, (z - v).norm());
            }
        }
        let (k, tau, dist) = self.curve.closest(z);
        let s = TWO_PI * (k as f64 + tau) / m as f64;
        let t = match self.grading {
            Some(g) => g.invert(s.min(TWO_PI)).unwrap_or(s),
            None => s,
        };
        (t.rem_euclid(TWO_PI), dist)
    }

    /// Winding number of the node polygon around `z`.
    pub fn winding_number(&self, z: Complex64) -> i32 {
        let mut total = 0.0;
        for k in 0..self.n {
            let a = self.points[k] - z;
            let b = self.points[(k + 1) % self.n] - z;
            total += (b / a).arg();
        }
        (total / TWO_PI).round() as i32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit_square() -> ArcPolygon {
        ArcPolygon::straight(vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)]).unwrap()
    }

    fn circle() -> ArcPolygon {
        ArcPolygon::new(vec![c(1.0, 0.0), c(-1.0, 0.0)], vec![Some(c(0.0, 0.0)); 2], vec![1, 1]).unwrap()
    }

    #[test]
    fn side_point_examples() {
        let (p, d) = side_point(c(0.0, 0.0), c(1.0, 0.0), None, 0, 0.5).unwrap();
        assert_eq!(p, c(0.5, 0.0));
        assert_eq!(d, c(1.0, 0.0));

        let (p, d) = side_point(c(1.0, 0.0), c(-1.0, 0.0), Some(c(0.0, 0.0)), 1, 0.5).unwrap();
        assert!((p - c(0.0, 1.0)).norm() < 1e-15);
        assert!((d - c(-PI, 0.0)).norm() < 1e-14);

        let a = Complex64::from_polar(1.0, -PI / 6.0);
        let b = Complex64::from_polar(1.0, PI / 6.0);
        let (p, d) = side_point(a, b, Some(c(0.0, 0.0)), 1, 0.5).unwrap();
        assert!((p - c(1.0, 0.0)).norm() < 1e-15);
        assert!((d - c(0.0, PI / 3.0)).norm() < 1e-14);
    }

    #[test]
    fn side_point_clockwise_takes_long_way() {
        // From e^{-iπ/6} clockwise to e^{iπ/6}: sweep -5π/3 through -1.
        let a = Complex64::from_polar(1.0, -PI / 6.0);
        let b = Complex64::from_polar(1.0, PI / 6.0);
        let (p, d) = side_point(a, b, Some(c(0.0, 0.0)), -1, 0.5).unwrap();
        assert!((p - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((d - c(0.0, 5.0 * PI / 3.0)).norm() < 1e-13);
    }

    #[test]
    fn side_point_errors() {
        assert!(side_point(c(1.0, 0.0), c(1.0, 0.0), None, 0, 0.5).is_err());
        assert!(side_point(c(1.0, 0.0), c(-2.0, 0.0), Some(c(0.0, 0.0)), 1, 0.5).is_err());
        assert!(side_point(c(1.0, 0.0), c(-1.0, 0.0), None, 1, 0.5).is_err());
        assert!(side_point(c(1.0, 0.0), c(-1.0, 0.0), Some(c(0.0, 0.0)), 0, 0.5).is_err());
        assert!(side_point(c(1.0, 0.0), c(-1.0, 0.0), Some(c(0.0, 0.0)), 2, 0.5).is_err());
        assert!(side_point(c(0.0, 0.0), c(1.0, 0.0), None, 0, 1.5).is_err());
    }

    #[test]
    fn polygon_validation() {
        assert!(ArcPolygon::straight(vec![c(0.0, 0.0), c(1.0, 0.0)]).is_err());
        // bow tie
        let bow = ArcPolygon::straight(vec![c(0.0, 0.0), c(1.0, 1.0), c(1.0, 0.0), c(0.0, 1.0)]);
        assert!(matches!(bow, Err(Error::InvalidPolygon(_))));
        let dup = ArcPolygon::straight(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(dup.is_err());
        let mismatch = ArcPolygon::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)], vec![None; 2], vec![0; 3]);
        assert!(mismatch.is_err());
    }

    #[test]
    fn orientation_and_area() {
        let sq = unit_square();
        assert!((sq.signed_area() - 1.0).abs() < 1e-15);
        assert_eq!(sq.orientation(), Orientation::Counterclockwise);
        assert!((sq.reversed().signed_area() + 1.0).abs() < 1e-15);
        assert!((circle().signed_area() - PI).abs() < 1e-14);
        assert_eq!(circle().reversed().orientation(), Orientation::Clockwise);
    }

    #[test]
    fn winding_and_distance() {
        let sq = unit_square();
        assert_eq!(sq.winding_number(c(0.5, 0.5)), 1);
        assert_eq!(sq.winding_number(c(1.5, 0.5)), 0);
        assert_eq!(sq.reversed().winding_number(c(0.5, 0.5)), -1);
        assert!((sq.distance(c(0.5, 0.25)) - 0.25).abs() < 1e-15);
        assert!((circle().distance(c(0.2, 0.0)) - 0.8).abs() < 1e-15);
        assert!((circle().distance(c(0.0, -3.0)) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn square_corners_exact() {
        let d = BoundaryDiscretization::new(&unit_square(), 16, 3, Orientation::Counterclockwise).unwrap();
        let corners: Vec<_> = d.corner_indices().iter().map(|&i| d.points()[i]).collect();
        assert_eq!(corners, unit_square().vertices().to_vec());
        for &i in &d.corner_indices() {
            assert_eq!(d.weighted_derivs()[i], c(0.0, 0.0));
        }
    }

    #[test]
    fn node_count_errors() {
        assert!(matches!(
            BoundaryDiscretization::new(&unit_square(), 18, 3, Orientation::Counterclockwise),
            Err(Error::NodeCount { .. })
        ));
        assert!(BoundaryDiscretization::new(&unit_square(), 16, 1, Orientation::Counterclockwise).is_err());
    }

    #[test]
    fn circle_points_on_circle() {
        let d = BoundaryDiscretization::new(&circle(), 256, 3, Orientation::Counterclockwise).unwrap();
        for p in d.points() {
            assert!((p.norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn one_tooth_gear_corners() {
        let th = PI / 6.0;
        let v = vec![
            Complex64::from_polar(1.0, -th),
            Complex64::from_polar(1.5, -th),
            Complex64::from_polar(1.5, th),
            Complex64::from_polar(1.0, th),
        ];
        let o = c(0.0, 0.0);
        let poly = ArcPolygon::new(v.clone(), vec![None, Some(o), None, Some(o)], vec![0, 1, 0, 1]).unwrap();
        let d = BoundaryDiscretization::new(&poly, 64, 3, Orientation::Counterclockwise).unwrap();
        for (j, &i) in d.corner_indices().iter().enumerate() {
            assert_eq!(d.points()[i], v[j]);
        }
    }

    #[test]
    fn reversal_gives_same_point_set() {
        let sq = unit_square();
        let n = 32;
        let ccw = BoundaryDiscretization::new(&sq, n, 3, Orientation::Counterclockwise).unwrap();
        let cw = BoundaryDiscretization::new(&sq, n, 3, Orientation::Clockwise).unwrap();
        // node k of the clockwise traversal is node (n - k) mod n of the counterclockwise one
        for k in 0..n {
            let a = cw.points()[k];
            let b = ccw.points()[(n - k) % n];
            assert!((a - b).norm() < 1e-14, "k={k}");
        }
        assert_eq!(cw.vertex_map(), &[0, 3, 2, 1]);
        assert_eq!(cw.vertex_param(1), Some(3.0 * PI / 2.0));
    }

    #[test]
    fn weighted_derivatives_match_finite_differences() {
        let poly = crate::domains::l_shape_polygon();
        let n = 512;
        let disc = BoundaryDiscretization::new(&poly, n, 3, Orientation::Counterclockwise).unwrap();
        let h = 1e-6;
        for k in 0..n {
            if k % (n / poly.len()) == 0 {
                continue;
            }
            let t = disc.node_param(k);
            let fd = (disc.eval(t + h).0 - disc.eval(t - h).0) / (2.0 * h);
            let d = disc.weighted_derivs()[k];
            assert!((fd - d).norm() < 1e-6 * (1.0 + d.norm()), "k={k}");
            let fd2 = (disc.eval(t + h).1 - disc.eval(t - h).1) / (2.0 * h);
            let d2 = disc.second_derivs()[k];
            assert!((fd2 - d2).norm() < 1e-5 * (1.0 + d2.norm()), "k={k}");
        }
    }

    #[test]
    fn locate_round_trips() {
        let sq = unit_square();
        let d = BoundaryDiscretization::new(&sq, 64, 3, Orientation::Counterclockwise).unwrap();
        let (t, dist) = d.locate(c(1.0, 1.0));
        assert_eq!(t, PI);
        assert_eq!(dist, 0.0);
        let (t, _) = d.locate(c(0.5, 0.0));
        assert!((d.eval(t).0 - c(0.5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"vertices": [[1,0],[-1,0]], "centers": [[0,0],[0,0]], "indicators": [1,1]}"#;
        let p: ArcPolygon = serde_json::from_str(text).unwrap();
        assert_eq!(p, circle());
        let bad = r#"{"vertices": [[1,0],[-1,0]], "centers": [[0,0],null], "indicators": [1,1]}"#;
        assert!(serde_json::from_str::<ArcPolygon>(bad).is_err());
    }
}
