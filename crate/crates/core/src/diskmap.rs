//! Conformal map of a bounded or unbounded arc-polygon domain onto the
//! unit disk.
//!
//! Bounded maps are normalized by `Φ(α) = 0, Φ'(α) > 0`; unbounded ones by
//! `Φ(∞) = 0` and `lim z Φ(z) > 0`. In both cases the boundary values are
//! `Φ(η(t)) = e^{iS(t)}` with `S = ±arg(η - base) + ρ`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::BoundaryDiscretization;
use crate::kernel::{solve_bie, DomainKind, KernelSystem, SolverOptions};
use crate::numerics::{cauchy_eval, nearest_branch, trig_diff, trig_eval, unwrap_arg};

/// A computed disk map with its boundary correspondence.
#[derive(Debug, Clone)]
pub struct DiskMap {
    kind: DomainKind,
    base_point: Complex64,
    c: f64,
    s: Vec<f64>,
    s_prime: Vec<f64>,
    zeta: Vec<Complex64>,
    zeta_prime: Vec<Complex64>,
    disc: BoundaryDiscretization,
    rho: Vec<f64>,
    iterations: usize,
    residual: f64,
}

fn sign(kind: DomainKind) -> f64 {
    match kind {
        DomainKind::Bounded => 1.0,
        DomainKind::Unbounded => -1.0,
    }
}

/// Builds the disk map of the domain bounded (`kind = Bounded`) or
/// exterior to (`kind = Unbounded`) the discretized curve.
///
/// `base_point` is the auxiliary point `α` inside a bounded domain, or the
/// point `z_1` enclosed by the curve for an unbounded one.
pub fn map_to_disk(
    disc: BoundaryDiscretization,
    base_point: Complex64,
    kind: DomainKind,
    opts: &SolverOptions,
) -> Result<DiskMap> {
    if !(base_point.re.is_finite() && base_point.im.is_finite()) {
        return Err(Error::NonFinite("base point".into()));
    }
    // The node polygon winds once around base_point in the traversal
    // direction: +1 counterclockwise for bounded, -1 clockwise for unbounded.
    let expected = match kind {
        DomainKind::Bounded => 1,
        DomainKind::Unbounded => -1,
    };
    if disc.orientation() != kind.orientation() {
        return Err(Error::Domain(format!("{kind:?} map needs a {:?} discretization", kind.orientation())));
    }
    if disc.winding_number(base_point) != expected || disc.curve().distance(base_point) == 0.0 {
        return Err(Error::BasePoint(format!("{base_point} is not enclosed by the boundary")));
    }

    let gamma: Vec<f64> = disc.points().iter().map(|p| -sign(kind) * (p - base_point).norm().ln()).collect();
    let alpha = match kind {
        DomainKind::Bounded => Some(base_point),
        DomainKind::Unbounded => None,
    };
    let sys = KernelSystem::new(disc, kind, alpha)?;
    let sol = solve_bie(&sys, &gamma, opts)?;
    let disc = sys.disc().clone();

    let sg = sign(kind);
    let rel: Vec<Complex64> = disc.points().iter().map(|p| p - base_point).collect();
    let args = unwrap_arg(&rel);
    let s: Vec<f64> = args.iter().zip(&sol.rho).map(|(a, r)| sg * a + r).collect();
    let drho = trig_diff(&sol.rho)?;
    let s_prime: Vec<f64> =
        disc.weighted_derivs().iter().zip(&rel).zip(&drho).map(|((d, r), dr)| sg * (d / r).im + dr).collect();
    let zeta: Vec<Complex64> = s.iter().map(|&v| Complex64::from_polar(1.0, v)).collect();
    let zeta_prime = zeta.iter().zip(&s_prime).map(|(z, sp)| Complex64::new(0.0, *sp) * z).collect();
    let c = (-sol.h).exp();
    Ok(DiskMap {
        kind,
        base_point,
        c,
        s,
        s_prime,
        zeta,
        zeta_prime,
        disc,
        rho: sol.rho,
        iterations: sol.iterations,
        residual: sol.residual,
    })
}

impl DiskMap {
    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn base_point(&self) -> Complex64 {
        self.base_point
    }

    /// `Φ'(α)` for bounded maps, `lim z Φ(z)` for unbounded ones.
    pub fn c(&self) -> f64 {
        self.c
    }

    /// Boundary correspondence `S(t_k)`, continuous along the nodes.
    pub fn s(&self) -> &[f64] {
        &self.s
    }

    pub fn s_prime(&self) -> &[f64] {
        &self.s_prime
    }

    /// Boundary values `ζ_k = e^{iS(t_k)}`.
    pub fn zeta(&self) -> &[Complex64] {
        &self.zeta
    }

    pub fn disc(&self) -> &BoundaryDiscretization {
        &self.disc
    }

    pub fn rho(&self) -> &[f64] {
        &self.rho
    }

    /// GMRES iterations used by the integral equation.
    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Images `w_k = Φ(v_k)` of the vertices, in the order of the polygon
    /// the discretization was built from.
    pub fn preimages(&self) -> Vec<Complex64> {
        let n = self.disc.n();
        let m = self.disc.m();
        let mut out = vec![Complex64::new(0.0, 0.0); m];
        for (j, &v) in self.disc.vertex_map().iter().enumerate() {
            out[v] = self.zeta[j * n / m];
        }
        out
    }

    /// `S(t̂)` at any parameter, on the branch continuous with the nodes.
    pub fn boundary_correspondence_at(&self, t: f64) -> Result<f64> {
        let two_pi = 2.0 * std::f64::consts::PI;
        let n = self.disc.n();
        let turns = t.div_euclid(two_pi);
        let tr = t.rem_euclid(two_pi);
        let h = two_pi / n as f64;
        let k = ((tr / h).floor() as usize).min(n - 1);
        let frac = tr / h - k as f64;
        let (eta, _) = self.disc.eval(tr);
        let rho = trig_eval(&self.rho, tr)?;
        let raw = sign(self.kind) * (eta - self.base_point).arg() + rho;
        let next = if k + 1 < n { self.s[k + 1] } else { self.s[0] + two_pi };
        let reference = self.s[k] + frac * (next - self.s[k]);
        Ok(nearest_branch(raw, reference) + turns * two_pi)
    }

    /// `Φ(η(t̂)) = e^{iS(t̂)}`.
    pub fn boundary_image_at(&self, t: f64) -> Result<Complex64> {
        Ok(Complex64::from_polar(1.0, self.boundary_correspondence_at(t)?))
    }

    fn check_domain_point(&self, z: Complex64) -> Result<()> {
        let inside = self.disc.curve().encloses(z);
        let ok = match self.kind {
            DomainKind::Bounded => inside,
            DomainKind::Unbounded => !inside,
        };
        if !ok || self.disc.curve().distance(z) == 0.0 {
            return Err(Error::OutsideDomain(format!("{z}")));
        }
        Ok(())
    }

    /// `Φ(z)` for `z` in the domain, by the trapezoidal Cauchy integral.
    pub fn eval_forward(&self, z: Complex64) -> Result<Complex64> {
        self.check_domain_point(z)?;
        cauchy_eval(&self.zeta, self.disc.points(), self.disc.weighted_derivs(), z)
    }

    /// `Φ'(z)` by the differentiated Cauchy integral.
    pub fn eval_forward_derivative(&self, z: Complex64) -> Result<Complex64> {
        self.check_domain_point(z)?;
        let weighted: Vec<Complex64> = self.zeta.iter().zip(self.disc.points()).map(|(f, p)| f / (p - z)).collect();
        cauchy_eval(&weighted, self.disc.points(), self.disc.weighted_derivs(), z)
    }

    /// `Φ⁻¹(w)` for `|w| < 1`, by the Cauchy integral over the unit circle.
    ///
    /// For unbounded maps the pole `c/w` at the origin is split off first.
    pub fn eval_inverse(&self, w: Complex64) -> Result<Complex64> {
        if !(w.norm() < 1.0) {
            return Err(Error::OutsideDomain(format!("|{w}| >= 1")));
        }
        match self.kind {
            DomainKind::Bounded => cauchy_eval(self.disc.points(), &self.zeta, &self.zeta_prime, w),
            DomainKind::Unbounded => {
                if w.norm() == 0.0 {
                    return Err(Error::OutsideDomain("w = 0 is the image of infinity".into()));
                }
                let reg: Vec<Complex64> =
                    self.disc.points().iter().zip(&self.zeta).map(|(p, z)| p - self.c / z).collect();
                Ok(self.c / w + cauchy_eval(&reg, &self.zeta, &self.zeta_prime, w)?)
            }
        }
    }

    /// [`Self::eval_forward`] over many targets in parallel.
    pub fn eval_forward_many(&self, zs: &[Complex64]) -> Vec<Result<Complex64>> {
        zs.par_iter().map(|&z| self.eval_forward(z)).collect()
    }

    /// [`Self::eval_inverse`] over many targets in parallel.
    pub fn eval_inverse_many(&self, ws: &[Complex64]) -> Vec<Result<Complex64>> {
        ws.par_iter().map(|&w| self.eval_inverse(w)).collect()
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::geometry::{ArcPolygon, Orientation};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn circle() -> ArcPolygon {
        ArcPolygon::new(vec![c(1.0, 0.0), c(-1.0, 0.0)], vec![Some(c(0.0, 0.0)); 2], vec![1, 1]).unwrap()
    }

    fn identity_map(n: usize) -> DiskMap {
        let disc = BoundaryDiscretization::new(&circle(), n, 3, Orientation::Counterclockwise).unwrap();
        map_to_disk(disc, c(0.0, 0.0), DomainKind::Bounded, &SolverOptions::default()).unwrap()
    }

    #[test]
    fn identity_on_the_disk() {
        let map = identity_map(128);
        assert!((map.c() - 1.0).abs() < 1e-12);
        for (z, p) in map.zeta().iter().zip(map.disc().points()) {
            assert!((z - p).norm() < 1e-12);
        }
        assert!((map.eval_forward(c(0.4, -0.2)).unwrap() - c(0.4, -0.2)).norm() < 1e-12);
        assert!((map.eval_inverse(c(0.0, 0.3)).unwrap() - c(0.0, 0.3)).norm() < 1e-12);
        let pre = map.preimages();
        assert!((pre[0] - 1.0).norm() < 1e-12 && (pre[1] + 1.0).norm() < 1e-12);
        let t = 1.234;
        let (eta, _) = map.disc().eval(t);
        assert!((map.boundary_image_at(t).unwrap() - Complex64::from_polar(1.0, eta.arg())).norm() < 1e-12);
    }

    #[test]
    fn exterior_of_circle_is_reciprocal() {
        let disc = BoundaryDiscretization::new(&circle(), 128, 3, Orientation::Clockwise).unwrap();
        let map = map_to_disk(disc, c(0.0, 0.0), DomainKind::Unbounded, &SolverOptions::default()).unwrap();
        assert!((map.c() - 1.0).abs() < 1e-12);
        for (z, p) in map.zeta().iter().zip(map.disc().points()) {
            assert!((z - p.conj()).norm() < 1e-12);
        }
        let z = c(1.7, -0.9);
        assert!((map.eval_forward(z).unwrap() - 1.0 / z).norm() < 1e-12);
        assert!((map.eval_inverse(c(0.2, 0.3)).unwrap() - 1.0 / c(0.2, 0.3)).norm() < 1e-11);
        assert!(map.eval_forward(c(0.1, 0.0)).is_err());
    }

    #[test]
    fn base_point_outside_rejected() {
        let disc = BoundaryDiscretization::new(&circle(), 64, 3, Orientation::Counterclockwise).unwrap();
        let err = map_to_disk(disc, c(2.0, 0.0), DomainKind::Bounded, &SolverOptions::default()).unwrap_err();
        assert!(matches!(err, Error::BasePoint(_)));
        let disc = BoundaryDiscretization::new(&circle(), 64, 3, Orientation::Clockwise).unwrap();
        let err = map_to_disk(disc, c(2.0, 0.0), DomainKind::Unbounded, &SolverOptions::default()).unwrap_err();
        assert!(matches!(err, Error::BasePoint(_)));
    }

    #[test]
    fn square_map_properties() {
        let sq = ArcPolygon::straight(vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)]).unwrap();
        let disc = BoundaryDiscretization::new(&sq, 1024, 3, Orientation::Counterclockwise).unwrap();
        let alpha = c(0.4, 0.45);
        let map = map_to_disk(disc, alpha, DomainKind::Bounded, &SolverOptions::default()).unwrap();
        assert!(map.zeta().iter().all(|z| (z.norm() - 1.0).abs() < 1e-13));
        let s = map.s();
        // Near a convex corner S is flatter than the discretization error, so
        // strict growth is only asserted away from the corners.
        let n = s.len();
        let corner_gap = |k: usize| (0..=4).map(|c| (k as isize - (c * n / 4) as isize).unsigned_abs()).min().unwrap();
        for k in 0..n - 1 {
            let step = s[k + 1] - s[k];
            if corner_gap(k).min(corner_gap(k + 1)) > n / 64 {
                assert!(step > 0.0, "k={k}");
            } else {
                assert!(step > -1e-7, "k={k} step={step}");
            }
        }
        // closing step is the short way round, so one period adds exactly 2π
        let closing = (map.zeta()[0] / map.zeta()[n - 1]).arg();
        assert!(closing > 0.0);
        assert!((s[n - 1] + closing - s[0] - 2.0 * PI).abs() < 1e-10);
        assert!(map.eval_forward(alpha).unwrap().norm() < 1e-10);
        assert!(map.eval_forward_derivative(alpha).unwrap().arg().abs() < 1e-8);
        assert!((map.eval_forward_derivative(alpha).unwrap().re - map.c()).abs() < 1e-8);
        // round trip through the interior
        for w in [c(0.3, 0.2), c(-0.5, 0.1), c(0.0, -0.7)] {
            let z = map.eval_inverse(w).unwrap();
            assert!((map.eval_forward(z).unwrap() - w).norm() < 1e-9);
        }
        // corner parameter matches the corner node
        let pre = map.preimages();
        assert!((map.boundary_image_at(PI).unwrap() - pre[2]).norm() < 1e-14);
    }
}
