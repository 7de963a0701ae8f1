//! Unrestarted GMRES for real, matrix-free operators.

use crate::error::{Error, Result};

/// Result of a successful GMRES solve.
#[derive(Debug, Clone)]
pub struct GmresOutcome {
    pub x: Vec<f64>,
    pub iterations: usize,
    /// Relative residual `‖b - A x‖ / ‖b‖` as tracked by the Givens rotations.
    pub residual: f64,
}

/// Residuals below this are at the level of rounding in the operator.
pub const ROUNDOFF_FLOOR: f64 = 64.0 * f64::EPSILON;

/// Iterations without a halving of the residual that count as stagnation.
const STALL_WINDOW: usize = 8;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Solves `A x = b` from a zero initial guess with modified Gram-Schmidt
/// Arnoldi and no restart.
///
/// `apply(x, y)` must write `A x` into `y`. A `tol` below what rounding in
/// `apply` allows is met as well as it can be: once the residual is under
/// [`ROUNDOFF_FLOOR`] and has stopped decreasing the solve counts as
/// converged.
pub fn gmres<F>(mut apply: F, b: &[f64], tol: f64, maxit: usize) -> Result<GmresOutcome>
where
    F: FnMut(&[f64], &mut [f64]),
{
    let n = b.len();
    let beta = norm(b);
    if beta == 0.0 {
        return Ok(GmresOutcome { x: vec![0.0; n], iterations: 0, residual: 0.0 });
    }
    if !beta.is_finite() {
        return Err(Error::NonFinite("GMRES right-hand side".into()));
    }

    let maxit = maxit.min(n).max(1);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(maxit + 1);
    basis.push(b.iter().map(|v| v / beta).collect());
    // Hessenberg columns, already rotated into upper-triangular form.
    let mut r: Vec<Vec<f64>> = Vec::with_capacity(maxit);
    let mut cs: Vec<f64> = Vec::with_capacity(maxit);
    let mut sn: Vec<f64> = Vec::with_capacity(maxit);
    let mut g = vec![0.0; maxit + 1];
    g[0] = beta;

    let mut w = vec![0.0; n];
    let mut residual = 1.0;
    let mut k = 0;
    let mut broke_down = false;
    let mut stalled = false;
    let mut history = Vec::with_capacity(maxit);
    while k < maxit {
        apply(&basis[k], &mut w);
        let mut h = vec![0.0; k + 2];
        for (i, v) in basis.iter().enumerate() {
            let hij = dot(&w, v);
            h[i] = hij;
            for (wj, vj) in w.iter_mut().zip(v) {
                *wj -= hij * vj;
            }
        }
        let hnext = norm(&w);
        h[k + 1] = hnext;
        if !hnext.is_finite() {
            return Err(Error::NonFinite("GMRES Krylov vector".into()));
        }

        for i in 0..k {
            let t = cs[i] * h[i] + sn[i] * h[i + 1];
            h[i + 1] = -sn[i] * h[i] + cs[i] * h[i + 1];
            h[i] = t;
        }
        let denom = h[k].hypot(h[k + 1]);
        let (c, s) = if denom == 0.0 { (1.0, 0.0) } else { (h[k] / denom, h[k + 1] / denom) };
        h[k] = denom;
        h[k + 1] = 0.0;
        g[k + 1] = -s * g[k];
        g[k] *= c;
        cs.push(c);
        sn.push(s);
        h.truncate(k + 1);
        r.push(h);
        k += 1;

        residual = g[k].abs() / beta;
        history.push(residual);
        if residual <= tol {
            break;
        }
        if residual <= ROUNDOFF_FLOOR && k > STALL_WINDOW && residual > 0.5 * history[k - 1 - STALL_WINDOW] {
            stalled = true;
            break;
        }
        if hnext <= f64::EPSILON * beta * 1e-3 {
            broke_down = true;
            break;
        }
        basis.push(w.iter().map(|v| v / hnext).collect());
    }

    // Back substitution on the rotated Hessenberg system.
    let mut y = vec![0.0; k];
    for i in (0..k).rev() {
        let mut acc = g[i];
        for j in i + 1..k {
            acc -= r[j][i] * y[j];
        }
        if r[i][i] == 0.0 {
            return Err(Error::Breakdown { iterations: k, residual });
        }
        y[i] = acc / r[i][i];
    }
    let mut x = vec![0.0; n];
    for (yi, v) in y.iter().zip(&basis) {
        for (xj, vj) in x.iter_mut().zip(v) {
            *xj += yi * vj;
        }
    }

    if residual <= tol || stalled {
        Ok(GmresOutcome { x, iterations: k, residual })
    } else if broke_down {
        Err(Error::Breakdown { iterations: k, residual })
    } else {
        Err(Error::NotConverged { iterations: k, residual })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_converges_in_one_iteration() {
        let b = vec![1.0, -2.0, 3.0, 0.5];
        let out = gmres(|x, y| y.copy_from_slice(x), &b, 1e-14, 10).unwrap();
        assert_eq!(out.iterations, 1);
        for (x, b) in out.x.iter().zip(&b) {
            assert!((x - b).abs() < 1e-15);
        }
    }

    #[test]
    fn diagonal_system() {
        let b = vec![1.0; 8];
        let out = gmres(
            |x, y| {
                for i in 0..8 {
                    y[i] = (i + 1) as f64 * x[i];
                }
            },
            &b,
            1e-15,
            8,
        )
        .unwrap();
        assert!(out.iterations <= 8);
        for (i, x) in out.x.iter().enumerate() {
            assert!((x - 1.0 / (i + 1) as f64).abs() < 1e-14, "{i}: {x}");
        }
    }

    #[test]
    fn zero_rhs() {
        let out = gmres(|x, y| y.copy_from_slice(x), &[0.0; 5], 1e-14, 10).unwrap();
        assert_eq!(out.iterations, 0);
        assert!(out.x.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn spd_matches_dense_solve() {
        // Tridiagonal SPD matrix; compared against the Thomas algorithm.
        let n = 40;
        let a = |x: &[f64], y: &mut [f64]| {
            for i in 0..n {
                let mut v = 4.0 * x[i];
                if i > 0 {
                    v -= x[i - 1];
                }
                if i + 1 < n {
                    v -= x[i + 1];
                }
                y[i] = v;
            }
        };
        let b: Vec<f64> = (0..n).map(|i| ((i * 7 % 11) as f64) - 5.0).collect();
        let out = gmres(a, &b, 1e-14, 100).unwrap();

        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        c[0] = -1.0 / 4.0;
        d[0] = b[0] / 4.0;
        for i in 1..n {
            let m = 4.0 + c[i - 1];
            c[i] = -1.0 / m;
            d[i] = (b[i] + d[i - 1]) / m;
        }
        let mut x = vec![0.0; n];
        x[n - 1] = d[n - 1];
        for i in (0..n - 1).rev() {
            x[i] = d[i] - c[i] * x[i + 1];
        }
        for (a, b) in out.x.iter().zip(&x) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn stagnation_at_roundoff_is_accepted() {
        // The operator adds noise near the rounding level, so the residual
        // cannot reach the requested 1e-17.
        let n = 50;
        let mut calls = 0u64;
        let b: Vec<f64> = (0..n).map(|i| (i as f64).sin() + 2.0).collect();
        let out = gmres(
            |x, y| {
                calls += 1;
                for i in 0..n {
                    let noise = 1e-15 * (((calls * 31 + i as u64 * 17) % 13) as f64 - 6.0) / 6.0;
                    y[i] = (2.0 + (i % 3) as f64) * x[i] + noise * x[(i + 1) % n];
                }
            },
            &b,
            1e-17,
            100,
        )
        .unwrap();
        assert!(out.residual <= ROUNDOFF_FLOOR);
        assert!(out.iterations < 100);
    }

    #[test]
    fn non_convergence_is_reported() {
        let b: Vec<f64> = (0..30).map(|i| 1.0 + i as f64).collect();
        let err = gmres(
            |x, y| {
                for i in 0..30 {
                    y[i] = (1.0 + i as f64 * i as f64) * x[i];
                }
            },
            &b,
            1e-15,
            3,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotConverged { iterations: 3, .. }));
    }
}
