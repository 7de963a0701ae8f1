//! Builders for the standard test geometries and their exact moduli.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::ArcPolygon;
use crate::kernel::DomainKind;
use crate::modulus::{default_base_point, interior_modulus, MarkedPoint, QuadrilateralSpec};
use crate::specfun::{cross_ratio, digamma, mu, mu_inv_pair, psi_ratio_inv};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A polygon together with the problem it is usually posed for.
#[derive(Debug, Clone, Serialize)]
pub struct NamedDomain {
    pub name: String,
    #[serde(skip)]
    pub poly: ArcPolygon,
    /// Interior (bounded) or exterior (unbounded) problem.
    pub kind: DomainKind,
    /// Auxiliary point `α` (bounded) or enclosed point `z_1` (unbounded).
    pub default_base_point: Complex64,
    /// Marked points fixed by the example, if any.
    pub default_marked: Option<[MarkedPoint; 4]>,
}

impl NamedDomain {
    fn new(
        name: impl Into<String>,
        poly: ArcPolygon,
        kind: DomainKind,
        marked: Option<[MarkedPoint; 4]>,
    ) -> Result<Self> {
        let target = poly.vertices().iter().sum::<Complex64>() / poly.len() as f64;
        let default_base_point = default_base_point(&poly, target)?;
        Ok(Self { name: name.into(), poly, kind, default_base_point, default_marked: marked })
    }

    /// Quadrilateral spec with the default marked points.
    pub fn spec(&self, n: usize) -> Result<QuadrilateralSpec> {
        let marked = self
            .default_marked
            .ok_or_else(|| Error::Domain(format!("domain {} has no default marked points", self.name)))?;
        QuadrilateralSpec::from_marked(self.poly.clone(), marked, n, self.kind)
    }
}

fn vertices4() -> Option<[MarkedPoint; 4]> {
    Some([0, 1, 2, 3].map(MarkedPoint::Vertex))
}

/// Which way a side replaced by an arc bows, relative to the domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bulge {
    /// Away from the domain (enlarges it).
    Outward,
    /// Into the domain.
    Inward,
}

/// Center and indicator of the arc from `a` to `b` on a counterclockwise
/// boundary whose tangent makes angle `phi ∈ (0, π/2]` with the chord.
pub fn tangent_arc(a: Complex64, b: Complex64, phi: f64, bulge: Bulge) -> (Option<Complex64>, i8) {
    if phi == 0.0 {
        return (None, 0);
    }
    let chord = b - a;
    let u = chord / chord.norm();
    let radius = chord.norm() / (2.0 * phi.sin());
    let mid = 0.5 * (a + b);
    let offset = Complex64::i() * u * radius * phi.cos();
    match bulge {
        Bulge::Outward => (Some(mid + offset), 1),
        Bulge::Inward => (Some(mid - offset), -1),
    }
}

/// Square `[0, 1]²`.
pub fn square() -> ArcPolygon {
    ArcPolygon::straight(vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)]).expect("valid square")
}

/// Unit circle as two half-circle arcs.
pub fn circle() -> ArcPolygon {
    ArcPolygon::new(vec![c(1.0, 0.0), c(-1.0, 0.0)], vec![Some(c(0.0, 0.0)); 2], vec![1, 1]).expect("valid circle")
}

/// Upper half-disk: diameter from -1 to 1, then the half circle back.
pub fn half_disk_polygon() -> ArcPolygon {
    ArcPolygon::new(vec![c(-1.0, 0.0), c(1.0, 0.0)], vec![None, Some(c(0.0, 0.0))], vec![0, 1])
        .expect("valid half-disk")
}

fn check_half_disk(r: f64, s: f64, sigma: f64, beta: f64) -> Result<()> {
    if !(-1.0 < r && r < s && s < 1.0) {
        return Err(Error::Domain(format!("need -1 < r < s < 1, got r = {r}, s = {s}")));
    }
    if !(0.0 < sigma && sigma < beta && beta < PI) {
        return Err(Error::Domain(format!("need 0 < σ < β < π, got σ = {sigma}, β = {beta}")));
    }
    Ok(())
}

/// Half-disk quadrilateral with `z1 = r`, `z2 = s`, `z3 = e^{iσ}`, `z4 = e^{iβ}`.
pub fn half_disk(r: f64, s: f64, sigma: f64, beta: f64) -> Result<NamedDomain> {
    check_half_disk(r, s, sigma, beta)?;
    let marked = [
        MarkedPoint::Point(c(r, 0.0)),
        MarkedPoint::Point(c(s, 0.0)),
        MarkedPoint::Point(Complex64::from_polar(1.0, sigma)),
        MarkedPoint::Point(Complex64::from_polar(1.0, beta)),
    ];
    NamedDomain::new("half", half_disk_polygon(), DomainKind::Bounded, Some(marked))
}

/// Exact modulus of the half-disk quadrilateral: the map
/// `z ↦ ((1+z)/(1-z))²` takes it onto the upper half-plane.
pub fn exact_half_disk_modulus(r: f64, s: f64, sigma: f64, beta: f64) -> Result<f64> {
    check_half_disk(r, s, sigma, beta)?;
    let f = |z: Complex64| {
        let w = (1.0 + z) / (1.0 - z);
        w * w
    };
    let u = cross_ratio(
        f(Complex64::from_polar(1.0, beta)),
        f(c(r, 0.0)),
        f(c(s, 0.0)),
        f(Complex64::from_polar(1.0, sigma)),
    )?;
    Ok(PI / 2.0 / mu(1.0 / u.sqrt())?)
}

/// Trapezoid with vertices `0, 1, 1 + iL, i(L - 1)`.
pub fn trapezoid(l: f64) -> Result<NamedDomain> {
    if !(l > 1.0) {
        return Err(Error::Domain(format!("trapezoid needs L > 1, got {l}")));
    }
    let poly = ArcPolygon::straight(vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, l), c(0.0, l - 1.0)])?;
    NamedDomain::new("trapezoid", poly, DomainKind::Bounded, vertices4())
}

/// `κ = (1 - 2λλ')/(1 + 2λλ')` with `λ = μ⁻¹(y)`.
fn trapezoid_kappa(y: f64) -> Result<f64> {
    let (lam, lamp) = mu_inv_pair(y)?;
    let prod = 2.0 * lam * lamp;
    Ok((1.0 - prod) / (1.0 + prod))
}

/// Exact modulus of [`trapezoid`].
pub fn exact_trapezoid_modulus(l: f64) -> Result<f64> {
    if !(l > 1.0) {
        return Err(Error::Domain(format!("trapezoid needs L > 1, got {l}")));
    }
    let kappa = trapezoid_kappa(PI / (2.0 * (2.0 * l - 1.0)))?;
    Ok(PI / (2.0 * mu(kappa)?))
}

/// Right half `P₊` of the symmetric trapezoid: vertices `i, 0, b, a + i`.
pub fn symmetric_trapezoid(a: f64, b: f64) -> Result<NamedDomain> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::Domain(format!("need a, b > 0, got a = {a}, b = {b}")));
    }
    let poly = ArcPolygon::straight(vec![c(0.0, 1.0), c(0.0, 0.0), c(b, 0.0), c(a, 1.0)])?;
    NamedDomain::new("symtrap", poly, DomainKind::Bounded, vertices4())
}

/// `u(a, b) = 2 mod(P₊; i, 0, b, a + i)` computed with `n` nodes.
pub fn u_ab(a: f64, b: f64, n: usize) -> Result<f64> {
    let dom = symmetric_trapezoid(a, b)?;
    Ok(2.0 * interior_modulus(&dom.spec(n)?)?)
}

/// Exact `u(a, a + 1)`.
pub fn u_ab_exact(a: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::Domain(format!("need a > 0, got {a}")));
    }
    let kappa = trapezoid_kappa(PI / (2.0 * (2.0 * a + 1.0)))?;
    Ok(PI / mu(kappa)?)
}

/// Trapezoid with vertices `0, 1 + i tan πσ, 1 + i(L + tan πβ), iL` whose
/// left side is a circular arc with tangent-chord angle `πε`.
pub fn curved_trapezoid(l: f64, sigma: f64, beta: f64, eps: f64, bulge: Bulge) -> Result<NamedDomain> {
    if !(l > 1.0) {
        return Err(Error::Domain(format!("need L > 1, got {l}")));
    }
    for (name, v) in [("σ", sigma), ("β", beta), ("ε", eps)] {
        if !(0.0..=0.25).contains(&v) {
            return Err(Error::Domain(format!("{name} = {v} not in [0, 1/4]")));
        }
    }
    let v = vec![c(0.0, 0.0), c(1.0, (PI * sigma).tan()), c(1.0, l + (PI * beta).tan()), c(0.0, l)];
    let (center, d) = tangent_arc(v[3], v[0], PI * eps, bulge);
    let poly = ArcPolygon::new(v, vec![None, None, None, center], vec![0, 0, 0, d])?;
    NamedDomain::new("curvedtrap", poly, DomainKind::Bounded, vertices4())
}

/// Asymptotic modulus of the straight (`ε = 0`) curved trapezoid, with
/// the `t₀` series truncated after the `e^{-2πL̂}` term.
pub fn crowdy_modulus(l: f64, sigma: f64, beta: f64) -> Result<f64> {
    let lhat = l + (digamma(0.5 + beta)? + digamma(0.5 - sigma)? - 2.0 * digamma(0.5)?) / PI;
    let q = (-PI * lhat).exp();
    let t0 = 16.0
        * q
        * (1.0 - 8.0 * (1.0 + 4.0 * sigma * beta) * q
            + 4.0
                * (11.0
                    + 4.0 * sigma * sigma
                    + 4.0 * beta * beta
                    + 128.0 * sigma * beta
                    + 304.0 * sigma * sigma * beta * beta)
                * q
                * q);
    if !(t0 > 0.0 && t0 < 1.0) {
        return Err(Error::Domain(format!("series value t0 = {t0} outside (0, 1)")));
    }
    Ok(2.0 * mu(t0.sqrt())? / PI)
}

const L_VERTICES: [(f64, f64); 8] =
    [(-1.0, 3.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0), (3.0, -1.0), (3.0, 1.0), (1.0, 1.0), (1.0, 3.0)];

/// L-shaped octagon, `v2` and `v4` being straight-angle vertices.
pub fn l_shape_polygon() -> ArcPolygon {
    ArcPolygon::straight(L_VERTICES.iter().map(|&(x, y)| c(x, y)).collect()).expect("valid L-shape")
}

/// L-shape with every side replaced by an arc of tangent-chord angle `eps`
/// radians; `bulges[k]` is the direction of side `k`.
pub fn l_shape_arc_polygon(eps: f64, bulges: &[Bulge; 8]) -> Result<ArcPolygon> {
    if !(eps > 0.0 && eps < 0.5 * PI) {
        return Err(Error::Domain(format!("arc angle {eps} not in (0, π/2)")));
    }
    let v: Vec<Complex64> = L_VERTICES.iter().map(|&(x, y)| c(x, y)).collect();
    let mut centers = Vec::with_capacity(8);
    let mut ind = Vec::with_capacity(8);
    for k in 0..8 {
        let (ck, dk) = tangent_arc(v[k], v[(k + 1) % 8], eps, bulges[k]);
        centers.push(ck);
        ind.push(dk);
    }
    ArcPolygon::new(v, centers, ind)
}

/// How the sides of the arc L-shape bow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LArcBows {
    /// Vertical sides bow to the left and horizontal sides upwards, which
    /// is the shape of the published modulus table.
    UpperLeft,
    /// Every side bows the same way relative to the domain.
    All(Bulge),
}

impl LArcBows {
    fn sides(self) -> [Bulge; 8] {
        match self {
            LArcBows::All(b) => [b; 8],
            LArcBows::UpperLeft => std::array::from_fn(|k| {
                let (a, b) = (L_VERTICES[k], L_VERTICES[(k + 1) % 8]);
                // outward normal of a counterclockwise side is the chord turned clockwise
                let normal = (b.1 - a.1, a.0 - b.0);
                if normal.1 - normal.0 > 0.0 {
                    Bulge::Outward
                } else {
                    Bulge::Inward
                }
            }),
        }
    }
}

/// Variants of the L-shaped domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LShape {
    Straight,
    Arc { eps: f64, bows: LArcBows },
}

/// The L-shaped domain; marked points default to `v1, v3, v5, v6`.
pub fn l_shaped(variant: LShape) -> Result<NamedDomain> {
    let (name, poly) = match variant {
        LShape::Straight => ("lshape", l_shape_polygon()),
        LShape::Arc { eps, bows } => ("lshape-arc", l_shape_arc_polygon(eps, &bows.sides())?),
    };
    let marked = Some([0, 2, 4, 5].map(MarkedPoint::Vertex));
    NamedDomain::new(name, poly, DomainKind::Bounded, marked)
}

/// Seven-vertex polygon with a half-circle notch on the bottom side and a
/// quarter-circle corner cut.
pub fn tre_polygon() -> Result<NamedDomain> {
    let v = vec![c(-2.0, -2.0), c(0.4, -2.0), c(1.4, -2.0), c(2.0, -2.0), c(2.0, 0.8), c(-0.6, 0.8), c(-2.0, -0.6)];
    let mut centers = vec![None; 7];
    let mut ind = vec![0; 7];
    centers[1] = Some(c(0.9, -2.0));
    ind[1] = -1;
    centers[5] = Some(c(-2.0, 0.8));
    ind[5] = -1;
    let poly = ArcPolygon::new(v, centers, ind)?;
    NamedDomain::new("tre", poly, DomainKind::Bounded, vertices4())
}

/// Rectangle `0, ib, a + ib, a`, listed clockwise for the exterior problem.
pub fn rectangle(a: f64, b: f64) -> Result<NamedDomain> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::Domain(format!("need a, b > 0, got a = {a}, b = {b}")));
    }
    let poly = ArcPolygon::straight(vec![c(0.0, 0.0), c(0.0, b), c(a, b), c(a, 0.0)])?;
    NamedDomain::new("rect", poly, DomainKind::Unbounded, vertices4())
}

/// Exact exterior modulus of [`rectangle`]: `μ(κ)/π` with `ψ(κ) = a/b`.
pub fn exact_exterior_rectangle_modulus(a: f64, b: f64) -> Result<f64> {
    let kappa = psi_ratio_inv(a / b)?;
    Ok(mu(kappa)? / PI)
}

/// Exterior-problem quadrilateral `0, -19/25 + 21i/25, 28/25 + 69i/50, 1`.
pub fn polygon_p1() -> Result<NamedDomain> {
    let poly = ArcPolygon::straight(vec![
        c(0.0, 0.0),
        c(-19.0 / 25.0, 21.0 / 25.0),
        c(28.0 / 25.0, 69.0 / 50.0),
        c(1.0, 0.0),
    ])?;
    NamedDomain::new("p1", poly, DomainKind::Unbounded, vertices4())
}

/// Exterior-problem quadrilateral `0, -3/25 + 21i/25, 42/25 + 4i, 1`.
pub fn polygon_p2() -> Result<NamedDomain> {
    let poly = ArcPolygon::straight(vec![c(0.0, 0.0), c(-3.0 / 25.0, 21.0 / 25.0), c(42.0 / 25.0, 4.0), c(1.0, 0.0)])?;
    NamedDomain::new("p2", poly, DomainKind::Unbounded, vertices4())
}

/// Gear polygon from polar vertices `radii[k] e^{i angles[k]}`.
///
/// Consecutive vertices on one circle about the origin are joined by a
/// counterclockwise arc, vertices on one ray by a segment. Angles must be
/// nondecreasing and span less than one turn.
pub fn gear_polygon(radii: &[f64], angles: &[f64]) -> Result<ArcPolygon> {
    let m = radii.len();
    if m < 2 || angles.len() != m {
        return Err(Error::InvalidPolygon(format!("{m} radii and {} angles", angles.len())));
    }
    if radii.iter().any(|&r| !(r > 0.0 && r.is_finite())) {
        return Err(Error::InvalidPolygon("gear radii must be positive".into()));
    }
    let tol = 1e-12;
    let mut centers = Vec::with_capacity(m);
    let mut ind = Vec::with_capacity(m);
    for k in 0..m {
        let (r0, r1) = (radii[k], radii[(k + 1) % m]);
        let a0 = angles[k];
        let a1 = if k + 1 < m { angles[k + 1] } else { angles[0] + 2.0 * PI };
        if a1 < a0 - tol {
            return Err(Error::InvalidPolygon(format!("gear angles decrease at vertex {} (not starlike)", k + 1)));
        }
        if (r0 - r1).abs() <= tol * r0 {
            if a1 - a0 <= tol {
                return Err(Error::InvalidPolygon(format!("gear side {} is degenerate", k + 1)));
            }
            centers.push(Some(c(0.0, 0.0)));
            ind.push(1);
        } else if a1 - a0 <= tol {
            centers.push(None);
            ind.push(0);
        } else {
            return Err(Error::InvalidPolygon(format!(
                "gear side {} is neither a circular arc about 0 nor a radial segment",
                k + 1
            )));
        }
    }
    let vertices = radii.iter().zip(angles).map(|(&r, &a)| Complex64::from_polar(r, a)).collect();
    ArcPolygon::new(vertices, centers, ind)
}

/// Gear domain from polar vertices.
pub fn gear(radii: &[f64], angles: &[f64]) -> Result<NamedDomain> {
    NamedDomain::new("gear", gear_polygon(radii, angles)?, DomainKind::Bounded, None).map(centred)
}

/// Gear maps are normalized at the origin, which every gear domain contains.
fn centred(mut d: NamedDomain) -> NamedDomain {
    d.default_base_point = Complex64::new(0.0, 0.0);
    d
}

/// Unit disk with one tooth of ratio `beta` over `|arg z| < theta`.
pub fn one_tooth(beta: f64, theta: f64) -> Result<NamedDomain> {
    if !(beta > 1.0 && theta > 0.0 && theta < PI) {
        return Err(Error::Domain(format!("need β > 1 and 0 < θ < π, got β = {beta}, θ = {theta}")));
    }
    let poly = gear_polygon(&[1.0, beta, beta, 1.0], &[-theta, -theta, theta, theta])?;
    NamedDomain::new("onetooth", poly, DomainKind::Bounded, vertices4()).map(centred)
}

/// Six-vertex gear.
pub fn gear6() -> Result<NamedDomain> {
    let poly = gear_polygon(
        &[0.75, 0.75, 1.25, 1.25, 1.0, 1.0],
        &[PI / 5.0, 3.0 * PI / 5.0, 3.0 * PI / 5.0, 1.5 * PI, 1.5 * PI, PI / 5.0 + 2.0 * PI],
    )?;
    NamedDomain::new("gear6", poly, DomainKind::Bounded, None).map(centred)
}

/// Twelve-vertex multitooth gear.
pub fn multitooth12() -> Result<NamedDomain> {
    let poly = gear_polygon(
        &[1.0, 1.0, 2.0, 2.0, 1.5, 1.5, 1.25, 1.25, 0.75, 0.75, 1.75, 1.75],
        &[
            PI / 6.0,
            PI / 2.0,
            PI / 2.0,
            0.75 * PI,
            0.75 * PI,
            PI,
            PI,
            1.5 * PI,
            1.5 * PI,
            11.0 * PI / 6.0,
            11.0 * PI / 6.0,
            PI / 6.0 + 2.0 * PI,
        ],
    )?;
    NamedDomain::new("multitooth", poly, DomainKind::Bounded, None).map(centred)
}

/// Annular rectangle `{1 < |z| < β², |arg z| > θ}` traversed clockwise:
/// out along the ray at `-θ`, the long way round the outer circle, back in
/// along the ray at `θ` and round the inner circle. The exterior problem
/// with marked points `v2, v3, v4, v1` has half the modulus of the one-tooth
/// gear: its curves join the two arcs.
pub fn annular_rectangle(beta: f64, theta: f64) -> Result<NamedDomain> {
    if !(beta > 1.0 && theta > 0.0 && theta < PI) {
        return Err(Error::Domain(format!("need β > 1 and 0 < θ < π, got β = {beta}, θ = {theta}")));
    }
    let b2 = beta * beta;
    let v = vec![
        Complex64::from_polar(1.0, -theta),
        Complex64::from_polar(b2, -theta),
        Complex64::from_polar(b2, theta),
        Complex64::from_polar(1.0, theta),
    ];
    let origin = Some(c(0.0, 0.0));
    let poly = ArcPolygon::new(v, vec![None, origin, None, origin], vec![0, -1, 0, 1])?;
    NamedDomain::new("annular", poly, DomainKind::Unbounded, Some([1, 2, 3, 0].map(MarkedPoint::Vertex)))
}

fn parse_args(args: &str, expected: usize, name: &str) -> Result<Vec<f64>> {
    let vals: Vec<f64> = args
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| Error::Domain(format!("bad number {s:?} in {name}"))))
        .collect::<Result<_>>()?;
    if vals.len() != expected {
        return Err(Error::Domain(format!("{name} takes {expected} parameters, got {}", vals.len())));
    }
    Ok(vals)
}

/// Builtin domain names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &[
    "square",
    "circle",
    "half:r,s,sigma,beta",
    "trapezoid:L",
    "symtrap:a,b",
    "curvedtrap:L,sigma,beta,eps",
    "lshape",
    "lshape-arc[:eps]",
    "tre",
    "rect:a,b",
    "p1",
    "p2",
    "onetooth:beta,theta",
    "gear6",
    "multitooth",
    "annular:beta,theta",
];

/// Default tangent-chord angle of the arc L-shape.
pub const L_ARC_EPS: f64 = 1.0 / 3.0;

/// Builds a domain from a name such as `gear6` or `onetooth:1.5,0.5236`.
pub fn builtin(spec: &str) -> Result<NamedDomain> {
    let (name, args) = match spec.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (spec, None),
    };
    let args_for = |k: usize| -> Result<Vec<f64>> {
        match args {
            Some(a) => parse_args(a, k, name),
            None => Err(Error::Domain(format!("{name} needs {k} parameters, e.g. {name}:{}", vec!["x"; k].join(",")))),
        }
    };
    let no_args = |d: Result<NamedDomain>| -> Result<NamedDomain> {
        if args.is_some() {
            return Err(Error::Domain(format!("{name} takes no parameters")));
        }
        d
    };
    match name {
        "square" => no_args(NamedDomain::new("square", square(), DomainKind::Bounded, vertices4())),
        "circle" => no_args(NamedDomain::new("circle", circle(), DomainKind::Bounded, None)),
        "half" => {
            let a = args_for(4)?;
            half_disk(a[0], a[1], a[2], a[3])
        }
        "trapezoid" => trapezoid(args_for(1)?[0]),
        "symtrap" => {
            let a = args_for(2)?;
            symmetric_trapezoid(a[0], a[1])
        }
        "curvedtrap" => {
            let a = args_for(4)?;
            curved_trapezoid(a[0], a[1], a[2], a[3], Bulge::Outward)
        }
        "lshape" => no_args(l_shaped(LShape::Straight)),
        "lshape-arc" => {
            let eps = match args {
                Some(a) => parse_args(a, 1, name)?[0],
                None => L_ARC_EPS,
            };
            l_shaped(LShape::Arc { eps, bows: LArcBows::UpperLeft })
        }
        "tre" => no_args(tre_polygon()),
        "rect" => {
            let a = args_for(2)?;
            rectangle(a[0], a[1])
        }
        "p1" => no_args(polygon_p1()),
        "p2" => no_args(polygon_p2()),
        "onetooth" => {
            let a = args_for(2)?;
            one_tooth(a[0], a[1])
        }
        "gear6" => no_args(gear6()),
        "multitooth" => no_args(multitooth12()),
        "annular" => {
            let a = args_for(2)?;
            annular_rectangle(a[0], a[1])
        }
        _ => Err(Error::Domain(format!("unknown domain {name:?}; known: {}", BUILTIN_NAMES.join(", ")))),
    }
}
