use std::f64::consts::PI;

use arcmap::domains::{self, LShape};
use arcmap::{map_to_disk, BoundaryDiscretization, DiskMap, DomainKind, Orientation, SolverOptions};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn interior_map(poly: &arcmap::ArcPolygon, n: usize, base: Complex64) -> DiskMap {
    let disc = BoundaryDiscretization::new(poly, n, 3, Orientation::Counterclockwise).unwrap();
    map_to_disk(disc, base, DomainKind::Bounded, &SolverOptions::default()).unwrap()
}

fn exterior_map(poly: &arcmap::ArcPolygon, n: usize, p: u32, enclosed: Complex64) -> DiskMap {
    let disc = BoundaryDiscretization::new(poly, n, p, Orientation::Clockwise).unwrap();
    map_to_disk(disc, enclosed, DomainKind::Unbounded, &SolverOptions::default()).unwrap()
}

/// Grid points of the bounding box that keep at least `margin` from the boundary.
fn probe_points(poly: &arcmap::ArcPolygon, inside: bool, margin: f64) -> Vec<Complex64> {
    let (lo, hi) = poly.bounding_box();
    let (lo, hi) = (lo - c(1.0, 1.0), hi + c(1.0, 1.0));
    let k = 24;
    let mut out = Vec::new();
    for i in 0..=k {
        for j in 0..=k {
            let z = c(lo.re + (hi.re - lo.re) * i as f64 / k as f64, lo.im + (hi.im - lo.im) * j as f64 / k as f64);
            if poly.encloses(z) == inside && poly.distance(z) > margin {
                out.push(z);
            }
        }
    }
    out
}

#[test]
fn multitooth_preimages_match_table() {
    let table = [
        c(0.86701428817497, 0.49828327696246),
        c(-0.28316473230969, 0.95907128743174),
        c(-0.56900711726358, 0.82233259725210),
        c(-0.65069062054555, 0.75934295040781),
        c(-0.71186505065025, 0.70231627466742),
        c(-0.95549393111898, 0.29501075843909),
        c(-0.97908358634907, 0.20345842558580),
        c(-0.62508676492722, -0.78055527434822),
        c(-0.32775376595675, -0.94476318138524),
        c(0.97086850902193, -0.23961289236922),
        c(0.98506920087238, 0.17215884959145),
        c(0.95294901093885, 0.30313063611365),
    ];
    let gear = domains::multitooth12().unwrap();
    let map = interior_map(&gear.poly, 3 << 11, c(0.0, 0.0));
    for (k, (w, want)) in map.preimages().iter().zip(table).enumerate() {
        assert!((w - want).norm() < 1e-8, "w_{} = {w}, table {want}", k + 1);
    }
}

#[test]
fn interior_round_trip_and_normalization() {
    let l = domains::l_shaped(LShape::Straight).unwrap();
    let alpha = l.default_base_point;
    let map = interior_map(&l.poly, 1 << 11, alpha);
    assert!(map.eval_forward(alpha).unwrap().norm() < 1e-10);
    let d = map.eval_forward_derivative(alpha).unwrap();
    assert!(d.re > 0.0 && d.im.abs() < 1e-10 * d.re, "Φ'(α) = {d}");

    let pts = probe_points(&l.poly, true, 0.1);
    assert!(pts.len() > 20);
    for z in pts {
        let w = map.eval_forward(z).unwrap();
        assert!(w.norm() < 1.0);
        let back = map.eval_inverse(w).unwrap();
        assert!((back - z).norm() < 1e-8, "{z} -> {w} -> {back}");
    }
}

#[test]
fn exterior_round_trip_and_behaviour_at_infinity() {
    let p1 = domains::polygon_p1().unwrap();
    // The inverse needs S' at the corners, where the exterior angles of P1
    // approach 2π; p = 3 leaves S only about C^1.7 in the graded variable.
    let map = exterior_map(&p1.poly, 1 << 11, 5, p1.default_base_point);
    for z in probe_points(&p1.poly, false, 0.1) {
        let w = map.eval_forward(z).unwrap();
        assert!(w.norm() < 1.0);
        let back = map.eval_inverse(w).unwrap();
        assert!((back - z).norm() < 1e-8 * z.norm().max(1.0), "{z} -> {w} -> {back}");
    }
    // Φ(z) ≈ c / z far away, with c > 0.
    let far = c(3e3, -4e3);
    let zw = far * map.eval_forward(far).unwrap();
    assert!(map.c() > 0.0);
    assert!((zw - map.c()).norm() < 1e-3 * map.c(), "z Φ(z) = {zw}, c = {}", map.c());
}

#[test]
fn derivative_matches_finite_differences() {
    let g = domains::gear6().unwrap();
    let map = interior_map(&g.poly, 3 << 9, c(0.0, 0.0));
    let h = 1e-5;
    for z in [c(0.2, 0.1), c(-0.3, 0.4), c(0.1, -0.6)] {
        let fd = (map.eval_forward(z + h).unwrap() - map.eval_forward(z - h).unwrap()) / (2.0 * h);
        let d = map.eval_forward_derivative(z).unwrap();
        assert!((fd - d).norm() < 1e-7 * d.norm(), "{fd} vs {d}");
    }
}

#[test]
fn boundary_correspondence_is_continuous_and_winds_once() {
    let g = domains::gear6().unwrap();
    let map = interior_map(&g.poly, 3 << 10, c(0.0, 0.0));
    let k = 5000;
    let s: Vec<f64> =
        (0..=k).map(|i| map.boundary_correspondence_at(2.0 * PI * i as f64 / k as f64).unwrap()).collect();
    assert!((s[k] - s[0] - 2.0 * PI).abs() < 1e-9);
    let worst = s.windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0, f64::max);
    assert!(worst < 0.05, "largest step {worst}");
    for w in map.zeta() {
        assert!((w.norm() - 1.0).abs() < 1e-14);
    }
}

#[test]
fn points_outside_the_domain_are_rejected() {
    let l = domains::l_shaped(LShape::Straight).unwrap();
    let map = interior_map(&l.poly, 512, l.default_base_point);
    assert!(map.eval_forward(c(10.0, 10.0)).is_err());
    assert!(map.eval_inverse(c(1.0, 0.0)).is_err());
    let disc = BoundaryDiscretization::new(&l.poly, 512, 3, Orientation::Counterclockwise).unwrap();
    assert!(map_to_disk(disc, c(10.0, 10.0), DomainKind::Bounded, &SolverOptions::default()).is_err());
}
