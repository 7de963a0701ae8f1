//! Complete elliptic integrals, the Grötzsch modulus `μ`, digamma, and the
//! exact modulus of a quadrilateral on the unit disk.
//!
//! Elliptic integrals use the modulus convention: `K(r) = ∫₀¹ dx/√((1-x²)(1-r²x²))`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `K, E` at `r` together with the complementary values at `r' = √(1-r²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticPair {
    pub r: f64,
    pub k: f64,
    pub e: f64,
    pub kp: f64,
    pub ep: f64,
}

impl EllipticPair {
    pub fn new(r: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&r) {
            return Err(Error::Domain(format!("elliptic modulus {r} not in [0, 1)")));
        }
        if r == 0.0 {
            return Ok(Self { r, k: FRAC_PI_2, e: FRAC_PI_2, kp: f64::INFINITY, ep: 1.0 });
        }
        let rp = complement(r);
        let (k, e, kp, ep) = ke_both(r, rp);
        Ok(Self { r, k, e, kp, ep })
    }
}

/// `√(1 - r²)` without cancellation near `r = 1`.
pub fn complement(r: f64) -> f64 {
    ((1.0 - r) * (1.0 + r)).sqrt()
}

fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
        if (a - b).abs() <= 1e-16 * a {
            break;
        }
    }
    0.5 * (a + b)
}

/// `K(r)` and `Σ = 1 - E(r)/K(r)` by the arithmetic-geometric mean, given
/// `r' = √(1-r²) > 0`. `Σ` is a sum of positive terms, so `K - E = KΣ`
/// carries full relative accuracy.
fn agm_k_sigma(r: f64, rp: f64) -> (f64, f64) {
    let (mut a, mut b) = (1.0_f64, rp);
    let mut sum = 0.5 * r * r;
    let mut pow = 0.5;
    for _ in 0..64 {
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        let c = 0.5 * (a - b);
        a = an;
        b = bn;
        pow *= 2.0;
        sum += pow * c * c;
        if c.abs() <= 1e-17 * a {
            break;
        }
    }
    (PI / (2.0 * a), sum)
}

/// `K(r), E(r), K(r'), E(r')`. For the larger of `r, r'` the second-kind
/// integral comes from Legendre's relation `EK' + E'K - KK' = π/2`, which
/// avoids the cancellation in `K(1 - Σ)` when `Σ` is close to 1.
fn ke_both(r: f64, rp: f64) -> (f64, f64, f64, f64) {
    let (k, sk) = agm_k_sigma(r, rp);
    let (kp, skp) = agm_k_sigma(rp, r);
    if r <= rp {
        let e = k * (1.0 - sk);
        let ep = (FRAC_PI_2 + kp * k * sk) / k;
        (k, e, kp, ep)
    } else {
        let ep = kp * (1.0 - skp);
        let e = (FRAC_PI_2 + k * kp * skp) / kp;
        (k, e, kp, ep)
    }
}

/// Complete elliptic integral of the first kind, `r ∈ [0, 1)`.
pub fn ellip_k(r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::Domain(format!("K(r) needs r in [0, 1), got {r}")));
    }
    Ok(PI / (2.0 * agm(1.0, complement(r))))
}

/// Complete elliptic integral of the second kind, `r ∈ [0, 1]`.
pub fn ellip_e(r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::Domain(format!("E(r) needs r in [0, 1], got {r}")));
    }
    if r == 1.0 {
        return Ok(1.0);
    }
    Ok(ke_both(r, complement(r)).1)
}

/// Grötzsch ring modulus `μ(r) = (π/2) K(r')/K(r)` for `r ∈ (0, 1)`.
pub fn mu(r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!("mu(r) needs r in (0, 1), got {r}")));
    }
    Ok(mu_with_complement(r, complement(r)))
}

/// `μ(r)` with the complementary modulus supplied, for callers that know
/// `r'` more accurately than `√(1-r²)` would give it.
pub fn mu_with_complement(r: f64, rp: f64) -> f64 {
    FRAC_PI_2 * agm(1.0, rp) / agm(1.0, r)
}

/// `dμ/d(log r) = -π² / (4 r'² K(r)²)`.
fn mu_log_slope(r: f64) -> f64 {
    let rp = complement(r);
    let k = PI / (2.0 * agm(1.0, rp));
    -PI * PI / (4.0 * rp * rp * k * k)
}

/// Inverse of [`mu`]: the `r ∈ (0, 1)` with `μ(r) = y`, `y > 0`.
///
/// For `y` below about `0.13` the root is closer to 1 than the spacing of
/// doubles; [`mu_inv_pair`] then still gives an accurate `r'`.
pub fn mu_inv(y: f64) -> Result<f64> {
    Ok(mu_inv_pair(y)?.0)
}

/// `(r, r')` with `μ(r) = y` and `r' = √(1-r²)`, each to full relative
/// accuracy.
pub fn mu_inv_pair(y: f64) -> Result<(f64, f64)> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::Domain(format!("mu_inv(y) needs finite y > 0, got {y}")));
    }
    if y < FRAC_PI_2 {
        // μ(r)μ(r') = π²/4 moves the root into the small-r regime.
        let rp = mu_inv_small(PI * PI / (4.0 * y));
        return Ok((complement(rp), rp));
    }
    let r = mu_inv_small(y);
    Ok((r, complement(r)))
}

/// Root for `y ≥ π/2`, solved in `u = log r` where
/// `log(1/r) < μ(r) < log(4/r)` brackets it.
fn mu_inv_small(y: f64) -> f64 {
    let mut lo = -y;
    let mut hi = (4.0_f64.ln() - y).min(-f64::EPSILON);
    let mut u = 4.0_f64.ln() - y - 0.25 * (-2.0 * y).exp();
    u = u.clamp(lo, hi);
    for _ in 0..100 {
        let r = u.exp();
        let f = mu_with_complement(r, complement(r)) - y;
        if f == 0.0 {
            return r;
        }
        // μ decreases in u
        if f > 0.0 {
            lo = u;
        } else {
            hi = u;
        }
        let step = f / mu_log_slope(r);
        let mut next = u - step;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - u).abs() <= 1e-16 * u.abs().max(1.0) {
            return next.exp();
        }
        u = next;
    }
    u.exp()
}

/// Digamma `Ψ(x) = Γ'(x)/Γ(x)` for `x > 0`.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("digamma needs finite x > 0, got {x}")));
    }
    let mut x = x;
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    // Bernoulli terms B_{2k}/(2k) for k = 1..8
    const C: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32760.0,
        1.0 / 12.0,
        -3617.0 / 8160.0,
    ];
    let inv2 = 1.0 / (x * x);
    let mut series = 0.0;
    let mut pow = inv2;
    for c in C {
        series += c * pow;
        pow *= inv2;
    }
    Ok(acc + x.ln() - 0.5 / x - series)
}

/// `ψ(κ) = 2(E(κ) - (1-κ)K(κ)) / (E'(κ) - κK'(κ))`, increasing on `(0, 1)`.
pub fn psi_ratio(kappa: f64) -> Result<f64> {
    if !(kappa > 0.0 && kappa < 1.0) {
        return Err(Error::Domain(format!("psi_ratio needs kappa in (0, 1), got {kappa}")));
    }
    let p = EllipticPair::new(kappa)?;
    Ok(2.0 * (p.e - (1.0 - kappa) * p.k) / (p.ep - kappa * p.kp))
}

/// Inverse of [`psi_ratio`] by bisection in `κ`.
pub fn psi_ratio_inv(s: f64) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::Domain(format!("psi_ratio_inv needs finite s > 0, got {s}")));
    }
    let (mut lo, mut hi) = (f64::EPSILON, 1.0 - f64::EPSILON);
    let (flo, fhi) = (psi_ratio(lo)?, psi_ratio(hi)?);
    if !(s > flo && s < fhi) {
        return Err(Error::Domain(format!("{s} outside the range ({flo:e}, {fhi:e}) of psi_ratio")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if psi_ratio(mid)? < s {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn distinct4(w: [Complex64; 4]) -> Result<()> {
    for i in 0..4 {
        for j in i + 1..4 {
            if (w[i] - w[j]).norm() == 0.0 {
                return Err(Error::Domain(format!("points {} and {} coincide", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

/// Absolute ratio `|w1-w3||w2-w4| / (|w1-w2||w3-w4|)`.
pub fn cross_ratio(w1: Complex64, w2: Complex64, w3: Complex64, w4: Complex64) -> Result<f64> {
    distinct4([w1, w2, w3, w4])?;
    Ok((w1 - w3).norm() * (w2 - w4).norm() / ((w1 - w2).norm() * (w3 - w4).norm()))
}

/// Modulus of the unit disk with four counterclockwise boundary points,
/// `(2/π) μ(1/√k)` with `k` the absolute ratio.
///
/// For concyclic points Ptolemy's identity gives `k = (a + b)/a` with
/// `a = |w1-w2||w3-w4|` and `b = |w1-w4||w2-w3|`, which yields `r` and `r'`
/// without cancellation.
pub fn disk_modulus(w1: Complex64, w2: Complex64, w3: Complex64, w4: Complex64) -> Result<f64> {
    let w = [w1, w2, w3, w4];
    distinct4(w)?;
    for (k, z) in w.iter().enumerate() {
        if (z.norm() - 1.0).abs() > 1e-8 {
            return Err(Error::NotOnBoundary(format!("point {} has modulus {}", k + 1, z.norm())));
        }
    }
    // Counterclockwise order: the angular gaps from w1 add up to one turn.
    let base = w1.arg();
    let rel: Vec<f64> = w.iter().map(|z| (z.arg() - base).rem_euclid(2.0 * PI)).collect();
    if !(rel[1] < rel[2] && rel[2] < rel[3]) {
        return Err(Error::MarkedOrder("disk points are not in counterclockwise order".into()));
    }
    let a = (w1 - w2).norm() * (w3 - w4).norm();
    let b = (w1 - w4).norm() * (w2 - w3).norm();
    let r = (a / (a + b)).sqrt();
    let rp = (b / (a + b)).sqrt();
    Ok(2.0 / PI * mu_with_complement(r, rp))
}
