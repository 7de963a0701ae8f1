//! Nyström discretization of the boundary integral equation with the
//! generalized Neumann kernel, and its GMRES solution.
//!
//! With `A(t) = η(t) - α` (bounded) or `A ≡ 1` (unbounded) the kernels are
//! the imaginary and real parts of
//!
//! ```text
//! (1/π) A(s)/A(t) · η'(t) / (η(t) - η(s)),
//! ```
//!
//! so one Cauchy-type sum `Σ_j x_j η'_j / A_j / (η_j - η_i)` serves both
//! operators. The trapezoidal rule is applied after subtracting `x_i / A_i`
//! from the density, which turns the singular Cauchy integrand into a
//! difference quotient. Its value at `t = s` brings in the derivative of `x`,
//! taken spectrally.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{BoundaryDiscretization, Orientation};
use crate::numerics::{gmres, trig_diff};

/// Default GMRES relative tolerance.
pub const DEFAULT_TOL: f64 = 0.5e-14;

/// Default GMRES iteration cap.
pub const DEFAULT_MAXIT: usize = 100;

/// Largest node count for which the `N` matrix is cached in memory by
/// [`MatvecStrategy::Auto`].
pub const AUTO_DENSE_LIMIT: usize = 4096;

/// Bounded domains carry an interior auxiliary point; unbounded ones are
/// the exterior of the curve and use `A ≡ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainKind {
    Bounded,
    Unbounded,
}

impl DomainKind {
    pub fn orientation(self) -> Orientation {
        match self {
            DomainKind::Bounded => Orientation::Counterclockwise,
            DomainKind::Unbounded => Orientation::Clockwise,
        }
    }
}

/// How the `N` operator is applied inside GMRES.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatvecStrategy {
    /// Dense cache up to [`AUTO_DENSE_LIMIT`] nodes, direct summation above.
    #[default]
    Auto,
    /// Recompute the kernel on every product: `O(n²)` time, `O(n)` memory.
    Direct,
    /// Assemble the `N` matrix once: `O(n²)` memory.
    Dense,
}

/// GMRES configuration for [`solve_bie`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub tol: f64,
    pub maxit: usize,
    pub strategy: MatvecStrategy,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, maxit: DEFAULT_MAXIT, strategy: MatvecStrategy::Auto }
    }
}

/// Discretized kernel data for one boundary and one choice of `A`.
#[derive(Debug, Clone)]
pub struct KernelSystem {
    disc: BoundaryDiscretization,
    kind: DomainKind,
    alpha: Option<Complex64>,
    a: Vec<Complex64>,
    /// `η'_j / A_j`.
    column: Vec<Complex64>,
    /// Diagonal entries of `N` and of `M` without its derivative term.
    diag_n: Vec<f64>,
    diag_m1: Vec<f64>,
}

/// Solution `ρ` and constant `h` of the boundary integral equation.
#[derive(Debug, Clone)]
pub struct BieSolution {
    pub rho: Vec<f64>,
    pub h: f64,
    /// Pointwise values of `(Mρ - (I - N)γ)/2`, whose mean is `h`.
    pub h_values: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
}

impl KernelSystem {
    /// Builds the system for a bounded domain with auxiliary point `alpha`
    /// or for an unbounded one (`alpha` ignored).
    pub fn new(disc: BoundaryDiscretization, kind: DomainKind, alpha: Option<Complex64>) -> Result<Self> {
        if disc.orientation() != kind.orientation() {
            return Err(Error::Domain(format!("{kind:?} domain needs a {:?} discretization", kind.orientation())));
        }
        let n = disc.n();
        let a: Vec<Complex64> = match kind {
            DomainKind::Bounded => {
                let alpha = alpha.ok_or_else(|| Error::BasePoint("bounded domain needs an auxiliary point".into()))?;
                disc.points().iter().map(|p| p - alpha).collect()
            }
            DomainKind::Unbounded => vec![Complex64::new(1.0, 0.0); n],
        };
        let scale = disc.points().iter().map(|p| p.norm()).fold(1.0, f64::max);
        if a.iter().any(|x| !(x.norm() > 1e-14 * scale) || !x.re.is_finite() || !x.im.is_finite()) {
            return Err(Error::BasePoint("auxiliary point lies on the boundary".into()));
        }
        let column: Vec<Complex64> = disc.weighted_derivs().iter().zip(&a).map(|(d, a)| d / a).collect();

        // Diagonals from singularity subtraction: x_i/A_i is taken out of
        // every row and its integral against the Cauchy kernel is known in
        // closed form (±πi at any boundary point reached from the smooth
        // part). This keeps the rows next to a corner as accurate as the rest.
        let weight = 2.0 / n as f64;
        let sign = kind.orientation().sign();
        let pts = disc.points();
        let derivs = disc.weighted_derivs();
        let (diag_n, diag_m1): (Vec<f64>, Vec<f64>) = (0..n)
            .into_par_iter()
            .map(|i| {
                let zi = pts[i];
                let mut t = Complex64::new(0.0, 0.0);
                for (pj, dj) in pts.iter().zip(derivs) {
                    // Strong grading can round nodes next to a corner onto
                    // the corner itself; such pairs are skipped everywhere.
                    if *pj != zi {
                        t += dj / (pj - zi);
                    }
                }
                let log_a = match kind {
                    DomainKind::Bounded => derivs[i] / a[i],
                    DomainKind::Unbounded => Complex64::new(0.0, 0.0),
                };
                (sign - weight * (t.im + log_a.im), -weight * (t.re + log_a.re))
            })
            .unzip();
        Ok(Self {
            disc,
            kind,
            alpha: if kind == DomainKind::Bounded { alpha } else { None },
            a,
            column,
            diag_n,
            diag_m1,
        })
    }

    pub fn disc(&self) -> &BoundaryDiscretization {
        &self.disc
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn alpha(&self) -> Option<Complex64> {
        self.alpha
    }

    pub fn a_values(&self) -> &[Complex64] {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.disc.n()
    }

    /// Quadrature weight `2π/n`.
    pub fn quadrature_weight(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.n() as f64
    }

    fn check_len(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n() {
            return Err(Error::LengthMismatch { expected: self.n(), got: x.len() });
        }
        Ok(())
    }

    /// `A_i Σ_{j≠i} x_j η'_j / A_j / (η_j - η_i)` for every row.
    fn cauchy_rows(&self, x: &[f64]) -> Vec<Complex64> {
        let pts = self.disc.points();
        let q: Vec<Complex64> = self.column.iter().zip(x).map(|(c, &x)| c * x).collect();
        (0..self.n())
            .into_par_iter()
            .map(|i| {
                let zi = pts[i];
                let mut re = 0.0;
                let mut im = 0.0;
                for (pj, qj) in pts.iter().zip(&q) {
                    if *pj == zi {
                        continue;
                    }
                    let d = pj - zi;
                    let inv = 1.0 / d.norm_sqr();
                    // q / d = q conj(d) / |d|^2
                    re += (qj.re * d.re + qj.im * d.im) * inv;
                    im += (qj.im * d.re - qj.re * d.im) * inv;
                }
                self.a[i] * Complex64::new(re, im)
            })
            .collect()
    }

    /// `y = N x` with trapezoidal weights.
    pub fn apply_n(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_len(x)?;
        Ok(self.apply_n_unchecked(x))
    }

    fn apply_n_unchecked(&self, x: &[f64]) -> Vec<f64> {
        let w = 2.0 / self.n() as f64;
        self.cauchy_rows(x).iter().zip(x).zip(&self.diag_n).map(|((c, xi), d)| w * c.im + d * xi).collect()
    }

    /// `y = M x`: punctured trapezoidal sum, `M_1` diagonal and the spectral
    /// completion of the conjugation operator.
    pub fn apply_m(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_len(x)?;
        let n = self.n();
        let w = 2.0 / n as f64;
        let dx = trig_diff(x)?;
        Ok(self
            .cauchy_rows(x)
            .iter()
            .zip(x)
            .zip(&self.diag_m1)
            .zip(&dx)
            .map(|(((c, xi), d), dxi)| w * c.re + d * xi + w * dxi)
            .collect())
    }

    /// The `N` matrix, row-major, including trapezoidal weights.
    pub fn assemble_n(&self) -> Vec<f64> {
        let n = self.n();
        let pts = self.disc.points();
        let w = 2.0 / n as f64;
        let mut mat = vec![0.0; n * n];
        mat.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
            let zi = pts[i];
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = if j == i {
                    self.diag_n[i]
                } else if pts[j] == zi {
                    0.0
                } else {
                    w * (self.a[i] * self.column[j] / (pts[j] - zi)).im
                };
            }
        });
        mat
    }
}

/// Applies `I - N` through a cached matrix or by direct summation.
enum NOperator<'a> {
    Direct(&'a KernelSystem),
    Dense { n: usize, mat: Vec<f64> },
}

impl NOperator<'_> {
    fn apply_i_minus_n(&self, x: &[f64], y: &mut [f64]) {
        match self {
            NOperator::Direct(sys) => {
                let nx = sys.apply_n_unchecked(x);
                for ((yi, xi), ni) in y.iter_mut().zip(x).zip(nx) {
                    *yi = xi - ni;
                }
            }
            NOperator::Dense { n, mat } => {
                y.par_iter_mut().zip(mat.par_chunks(*n)).enumerate().for_each(|(i, (yi, row))| {
                    let s: f64 = row.iter().zip(x).map(|(a, b)| a * b).sum();
                    *yi = x[i] - s;
                });
            }
        }
    }
}

/// Solves `(I - N) ρ = -M γ` and recovers `h = mean((M ρ - (I - N) γ)/2)`.
pub fn solve_bie(sys: &KernelSystem, gamma: &[f64], opts: &SolverOptions) -> Result<BieSolution> {
    sys.check_len(gamma)?;
    if !(opts.tol > 0.0 && opts.tol <= 1e-6) {
        return Err(Error::Domain(format!("GMRES tolerance {} not in (0, 1e-6]", opts.tol)));
    }
    if gamma.iter().any(|g| !g.is_finite()) {
        return Err(Error::NonFinite("right-hand side γ".into()));
    }
    let n = sys.n();
    let dense = match opts.strategy {
        MatvecStrategy::Dense => true,
        MatvecStrategy::Direct => false,
        MatvecStrategy::Auto => n <= AUTO_DENSE_LIMIT,
    };
    let op = if dense { NOperator::Dense { n, mat: sys.assemble_n() } } else { NOperator::Direct(sys) };

    let rhs: Vec<f64> = sys.apply_m(gamma)?.into_iter().map(|v| -v).collect();
    let out = gmres(|x, y| op.apply_i_minus_n(x, y), &rhs, opts.tol, opts.maxit)?;
    let rho = out.x;

    let m_rho = sys.apply_m(&rho)?;
    let mut i_minus_n_gamma = vec![0.0; n];
    op.apply_i_minus_n(gamma, &mut i_minus_n_gamma);
    let h_values: Vec<f64> = m_rho.iter().zip(&i_minus_n_gamma).map(|(a, b)| 0.5 * (a - b)).collect();
    let h = h_values.iter().sum::<f64>() / n as f64;
    if !h.is_finite() || rho.iter().any(|r| !r.is_finite()) {
        return Err(Error::NonFinite("integral equation solution".into()));
    }
    Ok(BieSolution { rho, h, h_values, iterations: out.iterations, residual: out.residual })
}
