//! Spectral and linear-algebra helpers shared by the solver and the map.

mod fourier;
mod gmres;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use fourier::{trig_diff, trig_diff_complex, trig_eval, trig_eval_complex};
pub use gmres::{gmres, GmresOutcome};

/// Trapezoidal Cauchy integral `(1/2πi) ∮ f(η)/(η - z) dη` over a closed
/// contour sampled at equispaced parameters, with `derivs` holding `η'(t_k)`.
pub fn cauchy_eval(
    values: &[Complex64],
    points: &[Complex64],
    derivs: &[Complex64],
    z: Complex64,
) -> Result<Complex64> {
    let n = values.len();
    if points.len() != n || derivs.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: points.len().min(derivs.len()) });
    }
    let scale = points.iter().map(|p| p.norm()).fold(1.0, f64::max);
    let mut acc = Complex64::new(0.0, 0.0);
    for ((f, p), d) in values.iter().zip(points).zip(derivs) {
        let diff = p - z;
        if diff.norm() <= 1e-14 * scale {
            return Err(Error::OnContour(format!("{z}")));
        }
        acc += f * d / diff;
    }
    // (1/2πi)(2π/n) = -i/n
    Ok(acc * Complex64::new(0.0, -1.0 / n as f64))
}

/// Continuous argument along a closed sequence: principal value at the
/// first entry, then successive jumps folded into `(-π, π]`.
pub fn unwrap_arg(values: &[Complex64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len());
    let mut prev: Option<(f64, Complex64)> = None;
    for &v in values {
        let next = match prev {
            None => v.arg(),
            Some((a, pv)) => a + (v / pv).arg(),
        };
        out.push(next);
        prev = Some((next, v));
    }
    out
}

/// Rounds `angle` by a multiple of 2π to lie within π of `reference`.
pub fn nearest_branch(angle: f64, reference: f64) -> f64 {
    angle + 2.0 * PI * ((reference - angle) / (2.0 * PI)).round()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(n: usize) -> (Vec<Complex64>, Vec<Complex64>) {
        let pts: Vec<Complex64> = (0..n).map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)).collect();
        let der = pts.iter().map(|p| Complex64::new(0.0, 1.0) * p).collect();
        (pts, der)
    }

    #[test]
    fn cauchy_of_one_and_square() {
        let (pts, der) = circle(64);
        let z = Complex64::new(0.3, 0.1);
        let ones = vec![Complex64::new(1.0, 0.0); 64];
        assert!((cauchy_eval(&ones, &pts, &der, z).unwrap() - 1.0).norm() < 1e-13);
        let sq: Vec<Complex64> = pts.iter().map(|p| p * p).collect();
        assert!((cauchy_eval(&sq, &pts, &der, z).unwrap() - z * z).norm() < 1e-12);
        // outside the contour the integral vanishes
        assert!(cauchy_eval(&ones, &pts, &der, Complex64::new(2.0, 0.0)).unwrap().norm() < 1e-13);
    }

    #[test]
    fn cauchy_on_node_rejected() {
        let (pts, der) = circle(16);
        let ones = vec![Complex64::new(1.0, 0.0); 16];
        assert!(matches!(cauchy_eval(&ones, &pts, &der, pts[3]), Err(Error::OnContour(_))));
    }

    #[test]
    fn cauchy_error_decays_geometrically() {
        // f(z) = 1/(z - 1.5) analytic inside the unit circle
        let z = Complex64::new(0.5, 0.2);
        let exact = 1.0 / (z - 1.5);
        let mut prev = f64::INFINITY;
        for n in [8, 16, 32] {
            let (pts, der) = circle(n);
            let f: Vec<Complex64> = pts.iter().map(|p| 1.0 / (p - 1.5)).collect();
            let err = (cauchy_eval(&f, &pts, &der, z).unwrap() - exact).norm();
            assert!(err < 0.5 * prev, "n={n}: {err} vs {prev}");
            prev = err;
        }
    }

    #[test]
    fn unwrap_is_continuous() {
        let (pts, _) = circle(50);
        let twice: Vec<Complex64> = pts.iter().chain(pts.iter()).copied().collect();
        let a = unwrap_arg(&twice);
        for w in a.windows(2) {
            let step = w[1] - w[0];
            assert!((step - 2.0 * PI / 50.0).abs() < 1e-13);
        }
        assert!((a[99] - a[0] - 2.0 * PI * 99.0 / 50.0).abs() < 1e-12);
    }

    #[test]
    fn branch_selection() {
        assert!((nearest_branch(0.1, 4.0 * PI) - (0.1 + 4.0 * PI)).abs() < 1e-15);
        assert!((nearest_branch(3.0, -3.0) - (3.0 - 2.0 * PI)).abs() < 1e-15);
    }
}
