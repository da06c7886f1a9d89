//! Two interacting particles: center-of-mass reduction, frame fixing, and
//! the reduced relative-motion flow.
//!
//! Canonical bookkeeping for masses m_a, m_b with m = m_a + m_b:
//!
//! ```text
//! p = p_a + p_b                x = (m_a x_a + m_b x_b) / m
//! r = x_a - x_b                q = (m_a p_b - m_b p_a) / m
//! mu = m_a m_b / m
//! ```
//!
//! and the Hamiltonian splits as
//! p_a.p_a/2m_a + p_b.p_b/2m_b = p.p/2m + q.q/2mu.
//!
//! For a spacelike initial separation (r.r > 0) a frame can be chosen with
//! r^0 = q^0 = 0: a Lorentz boost alone suffices when j.j > 0 with
//! j^{mu nu} = r^mu q^nu - r^nu q^mu; otherwise a boost plus a common energy
//! translation of both particles does it, provided the masses differ (the
//! translation shifts q^0 by delta (m_a - m_b)/m).  Those initial values then
//! stay zero along any flow with V = V(r.r), and the relative motion obeys
//! q^i = mu dr^i/ds, dq_i/ds = -dV/dr^i while x^0 grows as (p^0/m) s.

use crate::classical::integrate::{integrate, SolverConfig};
use crate::classical::{ClassicalError, FlowConfig, PhasePoint, TrajSample, Trajectory, TrajectoryMeta};
use crate::minkowski::{boost_matrix, dot, identity4, mat_apply, mat_mul, FourVec, Mat4};
use nalgebra::SVector;
use std::sync::Arc;

/// Pair of covariant particle states with their Newtonian masses.
#[derive(Debug, Clone, Copy)]
pub struct TwoBodyState {
    pub a: PhasePoint,
    pub b: PhasePoint,
    pub m_a: f64,
    pub m_b: f64,
}

impl TwoBodyState {
    pub fn validate(&self) -> Result<(), ClassicalError> {
        if self.m_a <= 0.0 || self.m_b <= 0.0 {
            return Err(ClassicalError::NonPositiveMass(self.m_a.min(self.m_b)));
        }
        Ok(())
    }
}

/// Center-of-mass / relative canonical variables.
#[derive(Debug, Clone, Copy)]
pub struct ReducedCoords {
    pub x: FourVec,
    pub p: FourVec,
    pub r: FourVec,
    pub q: FourVec,
    pub m: f64,
    pub mu_red: f64,
    pub m_a: f64,
    pub m_b: f64,
}

/// Forward reduction to (x, p, r, q, mu).
pub fn two_body_reduce(state: &TwoBodyState) -> ReducedCoords {
    let m = state.m_a + state.m_b;
    let mut x = [0.0; 4];
    let mut p = [0.0; 4];
    let mut r = [0.0; 4];
    let mut q = [0.0; 4];
    for mu in 0..4 {
        x[mu] = (state.m_a * state.a.x[mu] + state.m_b * state.b.x[mu]) / m;
        p[mu] = state.a.p[mu] + state.b.p[mu];
        r[mu] = state.a.x[mu] - state.b.x[mu];
        q[mu] = (state.m_a * state.b.p[mu] - state.m_b * state.a.p[mu]) / m;
    }
    ReducedCoords {
        x,
        p,
        r,
        q,
        m,
        mu_red: state.m_a * state.m_b / m,
        m_a: state.m_a,
        m_b: state.m_b,
    }
}

/// Inverse of [`two_body_reduce`].
pub fn two_body_restore(red: &ReducedCoords) -> TwoBodyState {
    let m = red.m;
    let mut a = PhasePoint {
        x: [0.0; 4],
        p: [0.0; 4],
    };
    let mut b = a;
    for mu in 0..4 {
        a.x[mu] = red.x[mu] + red.m_b / m * red.r[mu];
        b.x[mu] = red.x[mu] - red.m_a / m * red.r[mu];
        a.p[mu] = red.m_a / m * red.p[mu] - red.q[mu];
        b.p[mu] = red.m_b / m * red.p[mu] + red.q[mu];
    }
    TwoBodyState {
        a,
        b,
        m_a: red.m_a,
        m_b: red.m_b,
    }
}

/// Invariant j_{mu nu} j^{mu nu} = 2 [(r.r)(q.q) - (r.q)^2] for
/// j^{mu nu} = r^mu q^nu - r^nu q^mu.
pub fn j_squared(r: &FourVec, q: &FourVec) -> f64 {
    2.0 * (dot(r, r) * dot(q, q) - dot(r, q) * dot(r, q))
}

/// Frame-fixing outcome: the transformed state plus the applied Lorentz
/// transformation and common energy translation.
#[derive(Debug, Clone)]
pub struct FrameFix {
    pub state: TwoBodyState,
    pub lorentz: Mat4,
    /// Common shift applied to p_a^0 and p_b^0 (zero on the boost-only branch).
    pub energy_shift: f64,
    pub boost_only: bool,
    pub j2: f64,
    /// Achieved |r^0| and |q^0| after the transformation.
    pub residual: (f64, f64),
}

fn apply_lorentz(state: &TwoBodyState, lambda: &Mat4) -> TwoBodyState {
    TwoBodyState {
        a: PhasePoint {
            x: mat_apply(lambda, &state.a.x),
            p: mat_apply(lambda, &state.a.p),
        },
        b: PhasePoint {
            x: mat_apply(lambda, &state.b.x),
            p: mat_apply(lambda, &state.b.p),
        },
        m_a: state.m_a,
        m_b: state.m_b,
    }
}

/// Choose a frame with r^0 = 0 and q^0 = 0.
///
/// Requires spacelike separation r.r > 0.  Uses a Lorentz boost alone when
/// j.j > 0; otherwise a boost plus a common energy translation, which needs
/// m_a != m_b -- the exactly-equal-mass case is reported as infeasible.
pub fn frame_fix(state: &TwoBodyState) -> Result<FrameFix, ClassicalError> {
    state.validate()?;
    let red = two_body_reduce(state);
    let r2 = dot(&red.r, &red.r);
    if r2 <= 0.0 {
        return Err(ClassicalError::NonSpacelikeSeparation { r2 });
    }
    let j2 = j_squared(&red.r, &red.q);

    // first boost: along r_hat with beta = r^0/|r_vec| kills r^0
    let rs = [red.r[1], red.r[2], red.r[3]];
    let rnorm = (rs[0] * rs[0] + rs[1] * rs[1] + rs[2] * rs[2]).sqrt();
    let b1 = if red.r[0].abs() > 0.0 {
        let beta = red.r[0] / rnorm;
        boost_matrix([beta * rs[0] / rnorm, beta * rs[1] / rnorm, beta * rs[2] / rnorm])
    } else {
        identity4()
    };
    let mut fixed = apply_lorentz(state, &b1);
    let mut lambda = b1;
    let mut red1 = two_body_reduce(&fixed);

    let tol = 1e-12 * (1.0 + red1.q[0].abs() + red1.p[0].abs());
    let mut boost_only = true;
    let mut energy_shift = 0.0;
    if red1.q[0].abs() > tol {
        // decompose q_vec against the (now purely spatial) r_vec
        let rv = [red1.r[1], red1.r[2], red1.r[3]];
        let rv2 = rv.iter().map(|v| v * v).sum::<f64>();
        let qv = [red1.q[1], red1.q[2], red1.q[3]];
        let qr = qv[0] * rv[0] + qv[1] * rv[1] + qv[2] * rv[2];
        let qperp = [
            qv[0] - qr * rv[0] / rv2,
            qv[1] - qr * rv[1] / rv2,
            qv[2] - qr * rv[2] / rv2,
        ];
        let qperp_norm = qperp.iter().map(|v| v * v).sum::<f64>().sqrt();
        if j2 > 0.0 && qperp_norm > red1.q[0].abs() {
            // boost orthogonal to r keeps r^0 = 0 and zeroes q^0
            let beta = red1.q[0] / qperp_norm;
            let b2 = boost_matrix([
                beta * qperp[0] / qperp_norm,
                beta * qperp[1] / qperp_norm,
                beta * qperp[2] / qperp_norm,
            ]);
            fixed = apply_lorentz(&fixed, &b2);
            lambda = mat_mul(&b2, &lambda);
        } else {
            // common energy translation: q^0 shifts by delta (m_a - m_b)/m
            let dm = state.m_a - state.m_b;
            if dm.abs() <= f64::EPSILON * (state.m_a + state.m_b) {
                return Err(ClassicalError::EqualMassInfeasible { j2 });
            }
            let delta = -red1.q[0] * (state.m_a + state.m_b) / dm;
            fixed.a.p[0] += delta;
            fixed.b.p[0] += delta;
            boost_only = false;
            energy_shift = delta;
        }
        red1 = two_body_reduce(&fixed);
    }
    Ok(FrameFix {
        state: fixed,
        lorentz: lambda,
        energy_shift,
        boost_only,
        j2,
        residual: (red1.r[0].abs(), red1.q[0].abs()),
    })
}

/// Potential V as a function of the invariant rho = r.r.
#[derive(Clone)]
pub enum Potential {
    None,
    /// V = k rho / 2.
    Harmonic { k: f64 },
    /// Closure returning (V, dV/drho).
    Custom(Arc<dyn Fn(f64) -> (f64, f64) + Send + Sync>),
}

impl Potential {
    /// (V, dV/drho) at rho = r.r.
    pub fn eval(&self, rho: f64) -> (f64, f64) {
        match self {
            Potential::None => (0.0, 0.0),
            Potential::Harmonic { k } => (0.5 * k * rho, 0.5 * k),
            Potential::Custom(f) => f(rho),
        }
    }
}

impl std::fmt::Debug for Potential {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Potential::None => write!(f, "None"),
            Potential::Harmonic { k } => write!(f, "Harmonic {{ k: {k} }}"),
            Potential::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

/// Reduced evolution output: the free center-of-mass sector and the relative
/// sector (r, q), both sampled on the same s grid.
#[derive(Debug, Clone)]
pub struct TwoBodyTrajectory {
    /// Center-of-mass samples (x(s), p const).
    pub cm: Trajectory,
    /// Relative samples stored as PhasePoint { x: r, p: q }.
    pub rel: Trajectory,
    /// max_s |r^0(s)| and |q^0(s)|.
    pub time_component_drift: (f64, f64),
    /// max_s |p^0(s) - p^0(0)|.
    pub energy_drift: f64,
}

/// Integrate the reduced two-body flow from a frame-fixed state.
///
/// The relative pair obeys dr^mu/ds = q^mu/mu, dq^mu/ds = -2 V'(r.r) r^mu
/// (the covariant form of q^i = mu dr^i/ds, dq_i/ds = -dV/dr^i); the
/// total-momentum sector is free, so x^0(s) = x^0(0) + (p^0/m) s.
pub fn two_body_evolve(
    state: &TwoBodyState,
    potential: &Potential,
    cfg: &FlowConfig,
) -> Result<TwoBodyTrajectory, ClassicalError> {
    cfg.validate()?;
    state.validate()?;
    let red = two_body_reduce(state);
    let fixed_tol = 1e-10 * (1.0 + red.q[0].abs().max(red.r[0].abs()));
    if red.r[0].abs() > fixed_tol || red.q[0].abs() > fixed_tol {
        return Err(ClassicalError::NotFrameFixed {
            r0: red.r[0].abs(),
            q0: red.q[0].abs(),
        });
    }
    let mu = red.mu_red;
    let pot = potential.clone();
    let f = move |z: &SVector<f64, 8>| -> SVector<f64, 8> {
        let r = [z[0], z[1], z[2], z[3]];
        let q = [z[4], z[5], z[6], z[7]];
        let rho = dot(&r, &r);
        let (_, dv) = pot.eval(rho);
        let mut out = SVector::<f64, 8>::zeros();
        for muu in 0..4 {
            out[muu] = q[muu] / mu;
            out[4 + muu] = -2.0 * dv * r[muu];
        }
        out
    };
    let z0 = SVector::<f64, 8>::from_iterator(red.r.iter().chain(red.q.iter()).copied());
    let solver = SolverConfig {
        step: cfg.step,
        n_steps: cfg.n_steps,
        newton_tol: cfg.newton_tol,
        max_newton_iter: cfg.max_newton_iter,
    };
    let states = integrate(&f, z0, &solver)?;

    // surface potential failures loudly
    for (k, z) in states.iter().enumerate() {
        let r = [z[0], z[1], z[2], z[3]];
        let (v, dv) = potential.eval(dot(&r, &r));
        if !v.is_finite() || !dv.is_finite() {
            return Err(ClassicalError::PotentialFailure {
                s: k as f64 * cfg.step,
                value: v,
            });
        }
    }

    let mut rel_samples = Vec::with_capacity(states.len());
    let mut cm_samples = Vec::with_capacity(states.len());
    let mut r0_max: f64 = 0.0;
    let mut q0_max: f64 = 0.0;
    let h0 = {
        let q = red.q;
        dot(&q, &q) / (2.0 * mu) + potential.eval(dot(&red.r, &red.r)).0
    };
    let mut h_drift: f64 = 0.0;
    for (k, z) in states.iter().enumerate() {
        let s = k as f64 * cfg.step;
        let r = [z[0], z[1], z[2], z[3]];
        let q = [z[4], z[5], z[6], z[7]];
        r0_max = r0_max.max(r[0].abs());
        q0_max = q0_max.max(q[0].abs());
        let h = dot(&q, &q) / (2.0 * mu) + potential.eval(dot(&r, &r)).0;
        h_drift = h_drift.max((h - h0).abs());
        rel_samples.push(TrajSample {
            s,
            point: PhasePoint { x: r, p: q },
            tau: None,
        });
        let mut x = red.x;
        for muu in 0..4 {
            x[muu] += red.p[muu] / red.m * s;
        }
        cm_samples.push(TrajSample {
            s,
            point: PhasePoint { x, p: red.p },
            tau: None,
        });
    }
    let h_scale = h0.abs().max(1.0);
    let rel_meta = TrajectoryMeta {
        integrator: "implicit-midpoint".to_string(),
        step: cfg.step,
        pi2_rel_drift: h_drift / h_scale,
        h_rel_drift: h_drift / h_scale,
        p2_initial: dot(&red.q, &red.q),
        p2_final: {
            let z = states.last().unwrap();
            let q = [z[4], z[5], z[6], z[7]];
            dot(&q, &q)
        },
    };
    let cm_meta = TrajectoryMeta {
        integrator: "exact-free".to_string(),
        step: cfg.step,
        pi2_rel_drift: 0.0,
        h_rel_drift: 0.0,
        p2_initial: dot(&red.p, &red.p),
        p2_final: dot(&red.p, &red.p),
    };
    Ok(TwoBodyTrajectory {
        cm: Trajectory {
            samples: cm_samples,
            meta: cm_meta,
        },
        rel: Trajectory {
            samples: rel_samples,
            meta: rel_meta,
        },
        time_component_drift: (r0_max, q0_max),
        energy_drift: 0.0,
    })
}
