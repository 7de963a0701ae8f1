//! Kress corner grading.
//!
//! The substitution `delta` maps `[0, 2π]` onto itself, fixes the `m`
//! corner parameters `2πk/m` and has a zero of order `p` in its derivative at
//! each of them. Composing a piecewise-smooth boundary parametrization with it
//! clusters the nodes at the corners and restores fast convergence of the
//! trapezoidal rule.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const TWO_PI: f64 = 2.0 * PI;

/// Default grading exponent.
pub const DEFAULT_P: u32 = 3;

/// Largest accepted grading exponent.
pub const MAX_P: u32 = 8;

/// Grading exponent `p` together with the corner count `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GradingParams {
    p: u32,
    m: usize,
}

/// Value and first two derivatives of the graded parameter at one `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Graded {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl GradingParams {
    pub fn new(p: u32, m: usize) -> Result<Self> {
        if !(2..=MAX_P).contains(&p) {
            return Err(Error::Domain(format!("grading exponent p = {p} not in 2..={MAX_P}")));
        }
        if m == 0 {
            return Err(Error::Domain("corner count must be at least 1".into()));
        }
        Ok(Self { p, m })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Panel index and local variable `m t - 2π k` in `[0, 2π]`.
    fn panel(&self, t: f64) -> (usize, f64) {
        let m = self.m as f64;
        let k = ((t * m / TWO_PI).floor().max(0.0) as usize).min(self.m - 1);
        (k, m * t - TWO_PI * k as f64)
    }

    /// `delta`, `delta'` and `delta''` at `t`, without the domain check.
    pub fn eval(&self, t: f64) -> Graded {
        let (k, tau) = self.panel(t);
        let m = self.m as f64;
        let w = kress_w_parts(tau.clamp(0.0, TWO_PI), self.p);
        Graded { value: (w.value + TWO_PI * k as f64) / m, d1: w.d1, d2: m * w.d2 }
    }

    /// Solves `delta(t) = s` for `t`.
    pub fn invert(&self, s: f64) -> Result<f64> {
        check_period(s, "s")?;
        let m = self.m as f64;
        let k = ((s * m / TWO_PI).floor().max(0.0) as usize).min(self.m - 1);
        let target = m * s - TWO_PI * k as f64;
        if target <= 0.0 {
            return Ok(TWO_PI * k as f64 / m);
        }
        if target >= TWO_PI {
            return Ok(TWO_PI * (k + 1) as f64 / m);
        }
        // w is increasing with a flat start and end; bisection keeps Newton honest.
        let (mut lo, mut hi) = (0.0_f64, TWO_PI);
        let mut tau = target;
        for _ in 0..200 {
            let w = kress_w_parts(tau, self.p);
            let f = w.value - target;
            if f == 0.0 {
                break;
            }
            if f > 0.0 {
                hi = tau;
            } else {
                lo = tau;
            }
            let newton = tau - f / w.d1;
            tau = if w.d1 > 0.0 && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
            if (hi - lo) < 4.0 * f64::EPSILON * TWO_PI {
                break;
            }
        }
        Ok((tau + TWO_PI * k as f64) / m)
    }
}

fn check_period(t: f64, name: &str) -> Result<()> {
    if !(0.0..=TWO_PI).contains(&t) {
        return Err(Error::Domain(format!("{name} = {t} outside [0, 2π]")));
    }
    Ok(())
}

/// Cubic `v(t)` together with its first two derivatives.
fn v_parts(t: f64, p: f64) -> (f64, f64, f64) {
    let a = 1.0 / p - 0.5;
    let x = (PI - t) / PI;
    let v = a * x * x * x + (t - PI) / (p * PI) + 0.5;
    let dv = -3.0 * a * x * x / PI + 1.0 / (p * PI);
    let ddv = 6.0 * a * x / (PI * PI);
    (v, dv, ddv)
}

fn kress_w_parts(t: f64, p: u32) -> Graded {
    let pf = p as f64;
    let (v1, dv1, ddv1) = v_parts(t, pf);
    let (v2, dv2, ddv2) = v_parts(TWO_PI - t, pf);
    let v1 = v1.max(0.0);
    let v2 = v2.max(0.0);

    let a = v1.powi(p as i32);
    let b = v2.powi(p as i32);
    let pm1 = v1.powi(p as i32 - 1);
    let pm1b = v2.powi(p as i32 - 1);
    let pm2 = v1.powi(p as i32 - 2);
    let pm2b = v2.powi(p as i32 - 2);

    let da = pf * pm1 * dv1;
    let db = -pf * pm1b * dv2;
    let dda = pf * (pf - 1.0) * pm2 * dv1 * dv1 + pf * pm1 * ddv1;
    let ddb = pf * (pf - 1.0) * pm2b * dv2 * dv2 + pf * pm1b * ddv2;

    let s = a + b;
    let num = da * b - a * db;
    Graded {
        value: TWO_PI * a / s,
        d1: TWO_PI * num / (s * s),
        d2: TWO_PI * ((dda * b - a * ddb) * s - 2.0 * num * (da + db)) / (s * s * s),
    }
}

/// The cubic `v(t) = (1/p - 1/2)((π - t)/π)^3 + (t - π)/(pπ) + 1/2`.
pub fn kress_v(t: f64, p: u32) -> Result<f64> {
    check_period(t, "t")?;
    Ok(v_parts(t, p as f64).0)
}

/// Kress's sigmoid `w(t) = 2π v(t)^p / (v(t)^p + v(2π - t)^p)`.
pub fn kress_w(t: f64, p: u32) -> Result<f64> {
    check_period(t, "t")?;
    Ok(kress_w_parts(t, p).value)
}

/// The graded parameter `delta(t)` for `m` corners.
pub fn delta(t: f64, m: usize, p: u32) -> Result<f64> {
    check_period(t, "t")?;
    Ok(GradingParams::new(p, m)?.eval(t).value)
}

/// Analytic derivative of [`delta`].
pub fn delta_prime(t: f64, m: usize, p: u32) -> Result<f64> {
    check_period(t, "t")?;
    Ok(GradingParams::new(p, m)?.eval(t).d1)
}
