//! Fixed-step implicit midpoint integrator.
//!
//! Implicit midpoint is symplectic for smooth Hamiltonians and preserves
//! quadratic invariants (such as pi.pi for constant fields) up to the solver
//! tolerance.  Each step solves
//!
//! ```text
//! z' = z + h f((z + z') / 2)
//! ```
//!
//! by Newton iteration with a finite-difference Jacobian of f.

use crate::classical::ClassicalError;
use nalgebra::{SMatrix, SVector};

/// Solver parameters for one flow.
#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    pub step: f64,
    pub n_steps: usize,
    /// Newton residual target (sup norm, relative to 1 + |z|).
    pub newton_tol: f64,
    pub max_newton_iter: usize,
}

impl SolverConfig {
    pub fn new(step: f64, n_steps: usize) -> Self {
        SolverConfig {
            step,
            n_steps,
            newton_tol: 1e-13,
            max_newton_iter: 50,
        }
    }
}

/// One implicit midpoint step for an autonomous vector field.
pub fn midpoint_step<const N: usize>(
    f: &dyn Fn(&SVector<f64, N>) -> SVector<f64, N>,
    z: &SVector<f64, N>,
    h: f64,
    cfg: &SolverConfig,
    step_index: usize,
) -> Result<SVector<f64, N>, ClassicalError> {
    // explicit Euler predictor
    let mut w = z + f(z) * h;
    let scale = 1.0 + z.amax();
    let mut residual = f64::INFINITY;
    for _ in 0..cfg.max_newton_iter {
        let mid = (z + w) * 0.5;
        let g = w - z - f(&mid) * h;
        residual = g.amax();
        if residual <= cfg.newton_tol * scale {
            return Ok(w);
        }
        // J_G = I - (h/2) Df(mid), Df by central differences
        let df = fd_jacobian(f, &mid);
        let jg = SMatrix::<f64, N, N>::identity() - df * (h / 2.0);
        let delta = solve_gauss(jg, -g).ok_or(ClassicalError::NonConvergence {
            step: step_index,
            residual,
        })?;
        w += delta;
    }
    // accept if the final iterate already meets the tolerance
    let mid = (z + w) * 0.5;
    let g = w - z - f(&mid) * h;
    if g.amax() <= cfg.newton_tol * scale {
        Ok(w)
    } else {
        Err(ClassicalError::NonConvergence {
            step: step_index,
            residual,
        })
    }
}

/// Gaussian elimination with partial pivoting for the small Newton systems.
fn solve_gauss<const N: usize>(
    mut a: SMatrix<f64, N, N>,
    mut b: SVector<f64, N>,
) -> Option<SVector<f64, N>> {
    for col in 0..N {
        let mut pivot = col;
        for row in (col + 1)..N {
            if a[(row, col)].abs() > a[(pivot, col)].abs() {
                pivot = row;
            }
        }
        if a[(pivot, col)] == 0.0 {
            return None;
        }
        if pivot != col {
            a.swap_rows(pivot, col);
            b.swap_rows(pivot, col);
        }
        let inv = 1.0 / a[(col, col)];
        for row in (col + 1)..N {
            let factor = a[(row, col)] * inv;
            if factor == 0.0 {
                continue;
            }
            for k in col..N {
                a[(row, k)] -= factor * a[(col, k)];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = SVector::<f64, N>::zeros();
    for col in (0..N).rev() {
        let mut s = b[col];
        for k in (col + 1)..N {
            s -= a[(col, k)] * x[k];
        }
        x[col] = s / a[(col, col)];
    }
    Some(x)
}

/// Central finite-difference Jacobian of an autonomous field.
pub fn fd_jacobian<const N: usize>(
    f: &dyn Fn(&SVector<f64, N>) -> SVector<f64, N>,
    z: &SVector<f64, N>,
) -> SMatrix<f64, N, N> {
    let mut j = SMatrix::<f64, N, N>::zeros();
    let eps = 1e-7 * (1.0 + z.amax());
    for col in 0..N {
        let mut zp = *z;
        let mut zm = *z;
        zp[col] += eps;
        zm[col] -= eps;
        let d = (f(&zp) - f(&zm)) / (2.0 * eps);
        j.set_column(col, &d);
    }
    j
}

/// Integrate n_steps of the flow, returning all states including the initial
/// one.
pub fn integrate<const N: usize>(
    f: &dyn Fn(&SVector<f64, N>) -> SVector<f64, N>,
    z0: SVector<f64, N>,
    cfg: &SolverConfig,
) -> Result<Vec<SVector<f64, N>>, ClassicalError> {
    let mut out = Vec::with_capacity(cfg.n_steps + 1);
    out.push(z0);
    let mut z = z0;
    for k in 0..cfg.n_steps {
        z = midpoint_step(f, &z, cfg.step, cfg, k)?;
        out.push(z);
    }
    Ok(out)
}
