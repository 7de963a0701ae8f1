//! Trigonometric interpolation on equispaced periodic grids.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

fn check_len(n: usize) -> Result<()> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::Domain(format!("periodic sample count {n} must be even and at least 4")));
    }
    Ok(())
}

/// Samples of the derivative of the trigonometric interpolant of `values`
/// on `t_k = 2πk/n`. The Nyquist mode is dropped.
pub fn trig_diff_complex(values: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = values.len();
    check_len(n)?;
    let mut planner = FftPlanner::new();
    let mut buf = values.to_vec();
    planner.plan_fft_forward(n).process(&mut buf);
    let half = n / 2;
    for (k, c) in buf.iter_mut().enumerate() {
        let freq = if k < half {
            k as f64
        } else if k == half {
            0.0
        } else {
            k as f64 - n as f64
        };
        *c *= Complex64::new(0.0, freq / n as f64);
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    Ok(buf)
}

/// Real-valued [`trig_diff_complex`].
pub fn trig_diff(values: &[f64]) -> Result<Vec<f64>> {
    let z: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    Ok(trig_diff_complex(&z)?.into_iter().map(|c| c.re).collect())
}

/// Value at `t` of the trigonometric interpolant of `values`, by Henrici's
/// barycentric formula for an even number of nodes.
pub fn trig_eval_complex(values: &[Complex64], t: f64) -> Result<Complex64> {
    let n = values.len();
    check_len(n)?;
    let h = 2.0 * PI / n as f64;
    let t = t.rem_euclid(2.0 * PI);
    let nearest = (t / h).round() as usize % n;
    let gap = t - nearest as f64 * h;
    if gap.abs() < 1e-15 {
        return Ok(values[nearest]);
    }
    let mut num = Complex64::new(0.0, 0.0);
    let mut den = 0.0;
    for (j, &f) in values.iter().enumerate() {
        let w = 1.0 / (0.5 * (t - j as f64 * h)).tan();
        let w = if j % 2 == 0 { w } else { -w };
        num += f * w;
        den += w;
    }
    Ok(num / den)
}

/// Real-valued [`trig_eval_complex`].
pub fn trig_eval(values: &[f64], t: f64) -> Result<f64> {
    let z: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    Ok(trig_eval_complex(&z, t)?.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn grid(n: usize) -> Vec<f64> {
        (0..n).map(|k| 2.0 * PI * k as f64 / n as f64).collect()
    }

    #[test]
    fn derivative_of_sine_and_constant() {
        let t = grid(64);
        let s: Vec<f64> = t.iter().map(|t| t.sin()).collect();
        let ds = trig_diff(&s).unwrap();
        for (d, t) in ds.iter().zip(&t) {
            assert!((d - t.cos()).abs() < 1e-13);
        }
        let ones = vec![2.5; 64];
        assert!(trig_diff(&ones).unwrap().iter().all(|d| d.abs() < 1e-13));
    }

    #[test]
    fn derivative_of_complex_exponential() {
        let t = grid(32);
        let f: Vec<Complex64> = t.iter().map(|&t| Complex64::from_polar(1.0, 3.0 * t)).collect();
        let df = trig_diff_complex(&f).unwrap();
        for (d, &t) in df.iter().zip(&t) {
            let exact = Complex64::new(0.0, 3.0) * Complex64::from_polar(1.0, 3.0 * t);
            assert!((d - exact).norm() < 1e-13);
        }
    }

    #[test]
    fn odd_or_short_lengths_rejected() {
        assert!(trig_diff(&[1.0; 7]).is_err());
        assert!(trig_diff(&[1.0; 2]).is_err());
        assert!(trig_eval(&[1.0; 5], 0.3).is_err());
    }

    #[test]
    fn eval_cosine_and_nodes() {
        let t = grid(16);
        let f: Vec<f64> = t.iter().map(|t| t.cos()).collect();
        assert!((trig_eval(&f, PI / 7.0).unwrap() - (PI / 7.0).cos()).abs() < 1e-13);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g: Vec<f64> = (0..16).map(|_| rng.gen::<f64>()).collect();
        for (k, &tk) in t.iter().enumerate() {
            assert!((trig_eval(&g, tk).unwrap() - g[k]).abs() <= 1e-15);
        }
    }

    /// Direct summation of the interpolant from its discrete Fourier
    /// coefficients, with the Nyquist term split as a cosine.
    fn coefficient_oracle(values: &[f64], t: f64) -> f64 {
        let n = values.len();
        let half = n / 2;
        let mut total = 0.0;
        for k in 0..=half {
            let (mut a, mut b) = (0.0, 0.0);
            for (j, v) in values.iter().enumerate() {
                let ang = 2.0 * PI * (k * j) as f64 / n as f64;
                a += v * ang.cos();
                b += v * ang.sin();
            }
            a /= n as f64;
            b /= n as f64;
            let weight = if k == 0 || k == half { 1.0 } else { 2.0 };
            total += weight * (a * (k as f64 * t).cos() + b * (k as f64 * t).sin());
        }
        total
    }

    #[test]
    fn eval_matches_coefficient_summation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &n in &[8usize, 20, 64] {
            let f: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            for _ in 0..10 {
                let t = rng.gen_range(0.0..2.0 * PI);
                let a = trig_eval(&f, t).unwrap();
                let b = coefficient_oracle(&f, t);
                assert!((a - b).abs() < 1e-12, "n={n} t={t}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn diff_consistent_with_eval() {
        // derivative of the interpolant, by finite differences of trig_eval,
        // matches trig_diff at the nodes where the Nyquist term is flat
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 24;
        let f: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let df = trig_diff(&f).unwrap();
        let h = 1e-5;
        for (k, dk) in df.iter().enumerate() {
            let t = 2.0 * PI * k as f64 / n as f64;
            let fd = (trig_eval(&f, t + h).unwrap() - trig_eval(&f, t - h).unwrap()) / (2.0 * h);
            assert!((fd - dk).abs() < 1e-7, "k={k}");
        }
    }
}
