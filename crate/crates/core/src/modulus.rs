//! Interior and exterior moduli of quadrilaterals: map the domain onto the
//! disk, read off the images of the four marked points and apply the exact
//! disk formula.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::diskmap::{map_to_disk, DiskMap};
use crate::error::{Error, Result};
use crate::geometry::{ArcPolygon, BoundaryDiscretization};
use crate::grading::{GradingParams, DEFAULT_P};
use crate::kernel::{DomainKind, SolverOptions};
use crate::specfun::disk_modulus;

/// Relative distance within which a point counts as lying on the boundary.
pub const LOCATE_TOL: f64 = 1e-8;

/// Grid resolution of the default base-point search.
const DEPTH_GRID: usize = 64;

/// A boundary point given by vertex index, parameter or coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MarkedPoint {
    /// 0-based vertex index of the polygon as given.
    Vertex(usize),
    /// Parameter `t̂ ∈ [0, 2π)` of the traversal parametrization.
    Param(f64),
    /// A point on the boundary.
    Point(Complex64),
}

/// A domain with four marked boundary points and discretization settings.
///
/// Marked parameters refer to the parametrization in traversal order:
/// counterclockwise for interior moduli, clockwise for exterior ones.
#[derive(Debug, Clone)]
pub struct QuadrilateralSpec {
    pub poly: ArcPolygon,
    pub marked: [f64; 4],
    pub n: usize,
    pub grading_p: u32,
    pub base_point: Option<Complex64>,
    pub solver: SolverOptions,
}

/// Everything computed along the way to one modulus.
#[derive(Debug, Clone, Serialize)]
pub struct ModulusReport {
    pub modulus: f64,
    /// Modulus of the conjugate quadrilateral `(z2, z3, z4, z1)` on the same map.
    pub conjugate: f64,
    pub reciprocal_error: f64,
    pub images: [Complex64; 4],
    pub base_point: Complex64,
    pub n: usize,
    pub iterations: usize,
    pub residual: f64,
}

impl QuadrilateralSpec {
    pub fn new(poly: ArcPolygon, marked: [f64; 4], n: usize) -> Self {
        Self { poly, marked, n, grading_p: DEFAULT_P, base_point: None, solver: SolverOptions::default() }
    }

    /// Resolves marked points given in any form against `kind`'s traversal
    /// parametrization.
    pub fn from_marked(poly: ArcPolygon, points: [MarkedPoint; 4], n: usize, kind: DomainKind) -> Result<Self> {
        let disc = BoundaryDiscretization::new(&poly, n, DEFAULT_P, kind.orientation())?;
        let mut marked = [0.0; 4];
        for (slot, p) in marked.iter_mut().zip(points) {
            *slot = resolve_marked(&disc, p)?;
        }
        Ok(Self::new(poly, marked, n))
    }

    /// Marked points at four vertices (0-based indices).
    pub fn from_vertices(poly: ArcPolygon, vertices: [usize; 4], n: usize, kind: DomainKind) -> Result<Self> {
        Self::from_marked(poly, vertices.map(MarkedPoint::Vertex), n, kind)
    }

    pub fn with_base_point(mut self, base: Complex64) -> Self {
        self.base_point = Some(base);
        self
    }

    pub fn with_solver(mut self, solver: SolverOptions) -> Self {
        self.solver = solver;
        self
    }

    /// Switches the grading exponent, moving the marked parameters so that
    /// they still name the same boundary points.
    pub fn with_grading(mut self, p: u32) -> Result<Self> {
        let m = self.poly.vertices().len();
        let new = GradingParams::new(p, m)?;
        if !self.poly.is_smooth() && p != self.grading_p {
            let old = GradingParams::new(self.grading_p, m)?;
            for t in self.marked.iter_mut() {
                *t = new.invert(old.eval(*t).value)?;
            }
        }
        self.grading_p = new.p();
        Ok(self)
    }

    /// The spec with marked points `(z2, z3, z4, z1)`.
    pub fn rotated(&self) -> Self {
        let mut out = self.clone();
        out.marked = [self.marked[1], self.marked[2], self.marked[3], self.marked[0]];
        out
    }
}

/// Parameter of a marked point on `disc`.
pub fn resolve_marked(disc: &BoundaryDiscretization, p: MarkedPoint) -> Result<f64> {
    match p {
        MarkedPoint::Vertex(v) => disc
            .vertex_param(v)
            .ok_or_else(|| Error::NotOnBoundary(format!("vertex v{} does not exist (m = {})", v + 1, disc.m()))),
        MarkedPoint::Param(t) => {
            if !t.is_finite() {
                return Err(Error::NonFinite("marked parameter".into()));
            }
            Ok(t.rem_euclid(2.0 * PI))
        }
        MarkedPoint::Point(z) => locate_parameter(disc, z),
    }
}

/// Parameter `t̂` with `η(t̂)` closest to `z`; exact corner parameters for
/// vertices.
pub fn locate_parameter(disc: &BoundaryDiscretization, z: Complex64) -> Result<f64> {
    let (t, dist) = disc.locate(z);
    let (lo, hi) = disc.curve().bounding_box();
    let scale = (hi - lo).norm().max(1.0);
    if !(dist <= LOCATE_TOL * scale) {
        return Err(Error::NotOnBoundary(format!("{z} is {dist:e} away from the boundary")));
    }
    Ok(t)
}

/// Checks that four parameters are distinct and increase cyclically.
pub fn check_cyclic_order(t: &[f64; 4]) -> Result<()> {
    let two_pi = 2.0 * PI;
    let rel: Vec<f64> = t.iter().map(|x| (x - t[0]).rem_euclid(two_pi)).collect();
    if !(rel[1] > 0.0 && rel[1] < rel[2] && rel[2] < rel[3] && rel[3] < two_pi) {
        return Err(Error::MarkedOrder(format!("parameters {:?} are not distinct and in increasing cyclic order", t)));
    }
    Ok(())
}

/// Default auxiliary point: `target` if it is inside the curve and at least
/// half as deep as the deepest point of a grid over the bounding box,
/// otherwise the qualifying grid point nearest to `target`.
pub fn default_base_point(poly: &ArcPolygon, target: Complex64) -> Result<Complex64> {
    let (lo, hi) = poly.bounding_box();
    let mut samples = Vec::with_capacity(DEPTH_GRID * DEPTH_GRID);
    for i in 0..DEPTH_GRID {
        for j in 0..DEPTH_GRID {
            let z = Complex64::new(
                lo.re + (hi.re - lo.re) * (i as f64 + 0.5) / DEPTH_GRID as f64,
                lo.im + (hi.im - lo.im) * (j as f64 + 0.5) / DEPTH_GRID as f64,
            );
            if poly.encloses(z) {
                samples.push((z, poly.distance(z)));
            }
        }
    }
    let max_depth = samples.iter().map(|s| s.1).fold(0.0, f64::max);
    if samples.is_empty() || max_depth == 0.0 {
        return Err(Error::BasePoint("no interior grid point found".into()));
    }
    if poly.encloses(target) && poly.distance(target) >= 0.5 * max_depth {
        return Ok(target);
    }
    let best = samples
        .iter()
        .filter(|s| s.1 >= 0.5 * max_depth)
        .min_by(|a, b| (a.0 - target).norm().total_cmp(&(b.0 - target).norm()))
        .expect("deepest sample qualifies");
    Ok(best.0)
}

fn mean(points: &[Complex64]) -> Complex64 {
    points.iter().sum::<Complex64>() / points.len() as f64
}

/// Builds the disk map for `spec`, choosing a default base point if none
/// is given.
pub fn build_map(spec: &QuadrilateralSpec, kind: DomainKind) -> Result<DiskMap> {
    let disc = BoundaryDiscretization::new(&spec.poly, spec.n, spec.grading_p, kind.orientation())?;
    let base = match spec.base_point {
        Some(b) => b,
        None => match kind {
            DomainKind::Bounded => {
                let pts: Vec<Complex64> = spec.marked.iter().map(|&t| disc.eval(t).0).collect();
                default_base_point(&spec.poly, mean(&pts))?
            }
            DomainKind::Unbounded => default_base_point(&spec.poly, mean(spec.poly.vertices()))?,
        },
    };
    map_to_disk(disc, base, kind, &spec.solver)
}

/// Modulus, conjugate modulus and diagnostics from one map.
pub fn modulus_report(spec: &QuadrilateralSpec, kind: DomainKind) -> Result<ModulusReport> {
    check_cyclic_order(&spec.marked)?;
    let map = build_map(spec, kind)?;
    report_from_map(&map, &spec.marked)
}

/// [`modulus_report`] on an existing map.
pub fn report_from_map(map: &DiskMap, marked: &[f64; 4]) -> Result<ModulusReport> {
    check_cyclic_order(marked)?;
    let mut w = [Complex64::new(0.0, 0.0); 4];
    for (slot, &t) in w.iter_mut().zip(marked) {
        *slot = map.boundary_image_at(t)?;
    }
    let straight = disk_modulus(w[0], w[1], w[2], w[3])?;
    let shifted = disk_modulus(w[1], w[2], w[3], w[0])?;
    // Exterior moduli count curves joining the sides (z1, z2) and (z3, z4),
    // the convention of the classical exterior-rectangle formula.
    let (modulus, conjugate) = match map.kind() {
        DomainKind::Bounded => (straight, shifted),
        DomainKind::Unbounded => (shifted, straight),
    };
    Ok(ModulusReport {
        modulus,
        conjugate,
        reciprocal_error: (1.0 - modulus * conjugate).abs(),
        images: w,
        base_point: map.base_point(),
        n: map.disc().n(),
        iterations: map.iterations(),
        residual: map.residual(),
    })
}

/// `mod(D; z1, z2, z3, z4)` for a bounded domain.
pub fn interior_modulus(spec: &QuadrilateralSpec) -> Result<f64> {
    Ok(modulus_report(spec, DomainKind::Bounded)?.modulus)
}

/// Modulus of the quadrilateral on the exterior of the curve, with the
/// marked points in clockwise order along it.
///
/// This is the modulus of the curves in the exterior joining the sides
/// `(z1, z2)` and `(z3, z4)`. For a rectangle `0, ib, a + ib, a` it is
/// `μ(κ)/π` with `ψ(κ) = a/b`.
pub fn exterior_modulus(spec: &QuadrilateralSpec) -> Result<f64> {
    Ok(modulus_report(spec, DomainKind::Unbounded)?.modulus)
}

/// `|1 - mod(z1, z2, z3, z4) mod(z2, z3, z4, z1)|`.
///
/// The default base point depends only on the set of marked points, so
/// both moduli come from the same map, which is built once.
pub fn reciprocal_error(spec: &QuadrilateralSpec, kind: DomainKind) -> Result<f64> {
    Ok(modulus_report(spec, kind)?.reciprocal_error)
}
