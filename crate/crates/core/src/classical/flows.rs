//! Single-particle covariant flows and the conventional H_t cross-check.
//!
//! The covariant Hamiltonian H_s = pi.pi/2m with pi^mu = p^mu - (e/c)A^mu
//! generates
//!
//! ```text
//! dx^mu/ds  = pi^mu / m
//! dpi_mu/ds = (e/mc) F_{mu nu} pi^nu
//! ```
//!
//! so pi.pi is conserved along the flow while p.p in general evolves.  The
//! same physics in the conventional picture uses H_t = c pi^0 + e A^0 with
//! pi^0 = sqrt(pi_i pi^i + m^2 c^2) on the (x^i, p^i) phase space, evolving
//! in coordinate time t = x^0/c.

use crate::classical::fields::EmField;
use crate::classical::integrate::{integrate, SolverConfig};
use crate::classical::{ClassicalError, PhasePoint, TrajSample, Trajectory, TrajectoryMeta};
use crate::minkowski::{dot, eta, FourVec};
use crate::Units;
use nalgebra::SVector;

/// Flow parameters shared by the covariant runs.
#[derive(Debug, Clone, Copy)]
pub struct FlowConfig {
    pub step: f64,
    pub n_steps: usize,
    pub newton_tol: f64,
    pub max_newton_iter: usize,
    pub units: Units,
}

impl FlowConfig {
    pub fn new(step: f64, n_steps: usize) -> Self {
        FlowConfig {
            step,
            n_steps,
            newton_tol: 1e-13,
            max_newton_iter: 50,
            units: Units::natural(),
        }
    }

    pub fn validate(&self) -> Result<(), ClassicalError> {
        if !(self.step.is_finite() && self.step != 0.0) {
            return Err(ClassicalError::NonPositiveStep(self.step));
        }
        Ok(())
    }

    fn solver(&self) -> SolverConfig {
        SolverConfig {
            step: self.step,
            n_steps: self.n_steps,
            newton_tol: self.newton_tol,
            max_newton_iter: self.max_newton_iter,
        }
    }
}

/// Kinetic four-vector pi^mu = p^mu - (e/c) A^mu(x).
pub fn pi_upper(point: &PhasePoint, field: &EmField, e_charge: f64, units: &Units) -> FourVec {
    let a = field.a_upper(&point.x);
    let mut pi = point.p;
    for mu in 0..4 {
        pi[mu] -= e_charge / units.c * a[mu];
    }
    pi
}

fn pack(point: &PhasePoint) -> SVector<f64, 8> {
    SVector::<f64, 8>::from_iterator(point.x.iter().chain(point.p.iter()).copied())
}

fn unpack(z: &SVector<f64, 8>) -> PhasePoint {
    PhasePoint {
        x: [z[0], z[1], z[2], z[3]],
        p: [z[4], z[5], z[6], z[7]],
    }
}

/// Covariant vector field of H_s = pi.pi/2m.
fn charged_field<'a>(
    field: &'a EmField,
    e_charge: f64,
    m: f64,
    units: Units,
) -> impl Fn(&SVector<f64, 8>) -> SVector<f64, 8> + 'a {
    move |z: &SVector<f64, 8>| {
        let pt = unpack(z);
        let pi = pi_upper(&pt, field, e_charge, &units);
        let grad = field.grad_a(&pt.x);
        let mut out = SVector::<f64, 8>::zeros();
        for mu in 0..4 {
            out[mu] = pi[mu] / m;
            // dp_mu/ds = (e/mc) pi^alpha d_mu A_alpha ; raise with eta
            let mut dp_lower = 0.0;
            for alpha in 0..4 {
                dp_lower += pi[alpha] * eta(alpha) * grad[mu][alpha];
            }
            out[4 + mu] = eta(mu) * e_charge / (m * units.c) * dp_lower;
        }
        out
    }
}

fn build_trajectory(
    states: &[SVector<f64, 8>],
    step: f64,
    field: &EmField,
    e_charge: f64,
    units: &Units,
    tau_rate: Option<f64>,
    integrator: &str,
) -> Trajectory {
    let mut samples = Vec::with_capacity(states.len());
    let pi0 = {
        let pt = unpack(&states[0]);
        let pi = pi_upper(&pt, field, e_charge, units);
        dot(&pi, &pi)
    };
    let h0 = pi0;
    let mut pi2_drift: f64 = 0.0;
    for (k, z) in states.iter().enumerate() {
        let s = k as f64 * step;
        let point = unpack(z);
        let pi = pi_upper(&point, field, e_charge, units);
        let pi2 = dot(&pi, &pi);
        pi2_drift = pi2_drift.max((pi2 - pi0).abs());
        samples.push(TrajSample {
            s,
            point,
            tau: tau_rate.map(|r| r * s),
        });
    }
    let scale = pi0.abs().max(1.0);
    let p2_initial = dot(&samples[0].point.p, &samples[0].point.p);
    let p2_final = {
        let p = &samples.last().unwrap().point.p;
        dot(p, p)
    };
    Trajectory {
        samples,
        meta: TrajectoryMeta {
            integrator: integrator.to_string(),
            step,
            pi2_rel_drift: pi2_drift / scale,
            h_rel_drift: pi2_drift / h0.abs().max(1.0),
            p2_initial,
            p2_final,
        },
    }
}

/// Integrate the Lorentz-force flow of H_s = pi.pi/2m.
///
/// pi.pi is conserved along the flow; p.p in general evolves (its initial and
/// final values are recorded in the trajectory metadata).
pub fn lorentz_force_flow(
    initial: PhasePoint,
    field: &EmField,
    e_charge: f64,
    m: f64,
    cfg: &FlowConfig,
) -> Result<Trajectory, ClassicalError> {
    cfg.validate()?;
    if m <= 0.0 || !m.is_finite() {
        return Err(ClassicalError::NonPositiveMass(m));
    }
    let f = charged_field(field, e_charge, m, cfg.units);
    let states = integrate(&f, pack(&initial), &cfg.solver())?;
    Ok(build_trajectory(
        &states,
        cfg.step,
        field,
        e_charge,
        &cfg.units,
        None,
        "implicit-midpoint",
    ))
}

/// Free flow with an accumulated proper-time column, d tau/ds = m_E/m.
///
/// Requires p.p = -m_E^2 c^2 as the fixed initial value; spacelike initial
/// momentum is rejected (tau undefined there).
pub fn free_flow_with_proper_time(
    initial: PhasePoint,
    m: f64,
    m_einstein: f64,
    cfg: &FlowConfig,
) -> Result<Trajectory, ClassicalError> {
    cfg.validate()?;
    if m <= 0.0 || m_einstein <= 0.0 {
        return Err(ClassicalError::NonPositiveMass(m.min(m_einstein)));
    }
    let c = cfg.units.c;
    let p2 = dot(&initial.p, &initial.p);
    if p2 > 0.0 {
        return Err(ClassicalError::SpacelikeMomentum { p2 });
    }
    let want = -m_einstein * m_einstein * c * c;
    if (p2 - want).abs() > 1e-9 * want.abs().max(1.0) {
        return Err(ClassicalError::OffShellInitial { p2, want });
    }
    let f = charged_field(&EmField::Free, 0.0, m, cfg.units);
    let states = integrate(&f, pack(&initial), &cfg.solver())?;
    Ok(build_trajectory(
        &states,
        cfg.step,
        &EmField::Free,
        0.0,
        &cfg.units,
        Some(m_einstein / m),
        "implicit-midpoint",
    ))
}

/// Conventional-picture sample: coordinate time, position, momentum.
#[derive(Debug, Clone, Copy)]
pub struct HtSample {
    pub t: f64,
    pub x: [f64; 3],
    pub p: [f64; 3],
}

/// Result of running the covariant and conventional pictures side by side.
#[derive(Debug)]
pub struct CrosscheckResult {
    pub covariant: Trajectory,
    pub conventional: Vec<HtSample>,
    /// Max |x_cov(t) - x_Ht(t)| over the compared time range.
    pub max_spatial_deviation: f64,
}

/// Integrate H_t = c pi^0 + e A^0 on (x^i, p^i) and compare against the
/// reparameterized covariant trajectory.
///
/// The two pictures obey exactly the same equations of motion, so the
/// deviation must shrink at the integrator order as the step is refined.
pub fn conventional_ht_crosscheck(
    initial: PhasePoint,
    field: &EmField,
    e_charge: f64,
    m: f64,
    cfg: &FlowConfig,
) -> Result<CrosscheckResult, ClassicalError> {
    cfg.validate()?;
    let units = cfg.units;
    let c = units.c;
    let pi_init = pi_upper(&initial, field, e_charge, &units);
    if pi_init[0] <= 0.0 {
        return Err(ClassicalError::EnergyAbort {
            step: 0,
            pi0: pi_init[0],
        });
    }

    let covariant = lorentz_force_flow(initial, field, e_charge, m, cfg)?;
    let t0 = covariant.samples.first().unwrap().point.x[0] / c;
    let t1 = covariant.samples.last().unwrap().point.x[0] / c;
    let n = cfg.n_steps;
    let dt = (t1 - t0) / n as f64;

    // conventional picture state: (x^1..3, p^1..3), time tracked externally
    let pi0_of = |z: &SVector<f64, 6>, t: f64| -> f64 {
        let x4 = [c * t, z[0], z[1], z[2]];
        let a = field.a_upper(&x4);
        let mut s = m * m * c * c;
        for i in 0..3 {
            let pii = z[3 + i] - e_charge / c * a[i + 1];
            s += pii * pii;
        }
        s.sqrt()
    };
    let mut z = SVector::<f64, 6>::from_iterator(
        initial.x[1..4].iter().chain(initial.p[1..4].iter()).copied(),
    );
    let mut conventional = Vec::with_capacity(n + 1);
    conventional.push(HtSample {
        t: t0,
        x: [z[0], z[1], z[2]],
        p: [z[3], z[4], z[5]],
    });
    let solver = SolverConfig {
        step: dt,
        n_steps: n,
        newton_tol: cfg.newton_tol,
        max_newton_iter: cfg.max_newton_iter,
    };
    for k in 0..n {
        let t_mid_base = t0 + k as f64 * dt;
        // non-autonomous in t through A(x^0): fold t into the field closure
        // at the midpoint time for the implicit midpoint rule
        let ft = |w: &SVector<f64, 6>, t: f64| -> SVector<f64, 6> {
            let x4 = [c * t, w[0], w[1], w[2]];
            let a = field.a_upper(&x4);
            let grad = field.grad_a(&x4);
            let mut pi = [0.0; 3];
            for i in 0..3 {
                pi[i] = w[3 + i] - e_charge / c * a[i + 1];
            }
            let pi0 = (m * m * c * c + pi.iter().map(|v| v * v).sum::<f64>()).sqrt();
            let mut out = SVector::<f64, 6>::zeros();
            for i in 0..3 {
                out[i] = c * pi[i] / pi0;
                // dp_i/dt = (e/pi0) pi^j d_i A^j - e d_i A^0
                let mut drive = 0.0;
                for j in 0..3 {
                    drive += pi[j] * grad[i + 1][j + 1];
                }
                out[3 + i] = e_charge * drive / pi0 - e_charge * grad[i + 1][0];
            }
            out
        };
        let t_mid = t_mid_base + 0.5 * dt;
        let f_frozen = move |w: &SVector<f64, 6>| ft(w, t_mid);
        z = crate::classical::integrate::midpoint_step(&f_frozen, &z, dt, &solver, k)?;
        let t_now = t0 + (k + 1) as f64 * dt;
        if pi0_of(&z, t_now) <= 0.0 {
            return Err(ClassicalError::EnergyAbort {
                step: k,
                pi0: pi0_of(&z, t_now),
            });
        }
        conventional.push(HtSample {
            t: t_now,
            x: [z[0], z[1], z[2]],
            p: [z[3], z[4], z[5]],
        });
    }

    // reparameterize the covariant trajectory by t = x^0/c and take the
    // worst spatial deviation at the conventional sample times
    let interp = CovariantInterpolator::new(&covariant, field, e_charge, m, &units);
    let mut worst: f64 = 0.0;
    for sample in &conventional {
        if let Some(xs) = interp.spatial_at_time(sample.t) {
            let d = (0..3)
                .map(|i| (xs[i] - sample.x[i]).powi(2))
                .sum::<f64>()
                .sqrt();
            worst = worst.max(d);
        }
    }
    Ok(CrosscheckResult {
        covariant,
        conventional,
        max_spatial_deviation: worst,
    })
}

/// Cubic Hermite interpolation of a covariant trajectory in s, with the
/// known dx/ds = pi/m used for the derivative data; x^0(s) is monotone for
/// pi^0 > 0, so t -> s inverts by bisection plus Newton on the cubic.
pub struct CovariantInterpolator {
    s: Vec<f64>,
    x: Vec<FourVec>,
    dx: Vec<FourVec>,
    c: f64,
}

impl CovariantInterpolator {
    pub fn new(
        traj: &Trajectory,
        field: &EmField,
        e_charge: f64,
        m: f64,
        units: &Units,
    ) -> Self {
        let mut s = Vec::with_capacity(traj.samples.len());
        let mut x = Vec::with_capacity(traj.samples.len());
        let mut dx = Vec::with_capacity(traj.samples.len());
        for smp in &traj.samples {
            s.push(smp.s);
            x.push(smp.point.x);
            let pi = pi_upper(&smp.point, field, e_charge, units);
            dx.push([pi[0] / m, pi[1] / m, pi[2] / m, pi[3] / m]);
        }
        CovariantInterpolator {
            s,
            x,
            dx,
            c: units.c,
        }
    }

    fn hermite(&self, k: usize, mu: usize, s: f64) -> (f64, f64) {
        let h = self.s[k + 1] - self.s[k];
        let u = (s - self.s[k]) / h;
        let (p0, p1) = (self.x[k][mu], self.x[k + 1][mu]);
        let (d0, d1) = (self.dx[k][mu] * h, self.dx[k + 1][mu] * h);
        let h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
        let h10 = u * (1.0 - u) * (1.0 - u);
        let h01 = u * u * (3.0 - 2.0 * u);
        let h11 = u * u * (u - 1.0);
        let val = h00 * p0 + h10 * d0 + h01 * p1 + h11 * d1;
        let dh00 = 6.0 * u * u - 6.0 * u;
        let dh10 = 3.0 * u * u - 4.0 * u + 1.0;
        let dh01 = -6.0 * u * u + 6.0 * u;
        let dh11 = 3.0 * u * u - 2.0 * u;
        let dval = (dh00 * p0 + dh10 * d0 + dh01 * p1 + dh11 * d1) / h;
        (val, dval)
    }

    /// Spatial position of the covariant trajectory at coordinate time t,
    /// or None when t lies outside the sampled range.
    pub fn spatial_at_time(&self, t: f64) -> Option<[f64; 3]> {
        let target = self.c * t;
        let x0_first = self.x.first()?[0];
        let x0_last = self.x.last()?[0];
        let eps = 1e-9 * (1.0 + x0_last.abs());
        if target < x0_first - eps || target > x0_last + eps {
            return None;
        }
        // locate the bracketing segment (x^0 monotone increasing)
        let mut lo = 0;
        let mut hi = self.x.len() - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.x[mid][0] <= target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // Newton on the cubic for s with x^0(s) = target
        let mut s = self.s[lo]
            + (self.s[lo + 1] - self.s[lo]) * (target - self.x[lo][0])
                / (self.x[lo + 1][0] - self.x[lo][0]).max(f64::MIN_POSITIVE);
        for _ in 0..30 {
            let (v, dv) = self.hermite(lo, 0, s);
            let err = v - target;
            if err.abs() < 1e-14 * (1.0 + target.abs()) {
                break;
            }
            s -= err / dv;
            s = s.clamp(self.s[lo], self.s[lo + 1]);
        }
        let mut out = [0.0; 3];
        for i in 0..3 {
            out[i] = self.hermite(lo, i + 1, s).0;
        }
        Some(out)
    }
}

/// Predicted d(p.p)/ds along the flow:
/// (2e/c) p^mu dA_mu/ds + (2e/mc) p^mu F_{mu nu} pi^nu.
pub fn p2_rate_prediction(
    point: &PhasePoint,
    field: &EmField,
    e_charge: f64,
    m: f64,
    units: &Units,
) -> f64 {
    let pi = pi_upper(point, field, e_charge, units);
    let grad = field.grad_a(&point.x);
    let f = field.f_lower(&point.x);
    let c = units.c;
    let mut da_term = 0.0; // p^mu dA_mu/ds, dA_mu/ds = d_nu A_mu pi^nu / m
    let mut f_term = 0.0; // p^mu F_{mu nu} pi^nu
    for mu in 0..4 {
        let mut da_mu = 0.0;
        for nu in 0..4 {
            da_mu += eta(mu) * grad[nu][mu] * pi[nu] / m;
            f_term += point.p[mu] * f[mu][nu] * pi[nu];
        }
        da_term += point.p[mu] * da_mu;
    }
    2.0 * e_charge / c * da_term + 2.0 * e_charge / (m * c) * f_term
}

/// Symplectic-form defect of one midpoint step in canonical coordinates
/// (x^mu, p_mu): max-abs of J^T Omega J - Omega with a finite-difference
/// Jacobian of the step map.
pub fn symplectic_defect(
    point: &PhasePoint,
    field: &EmField,
    e_charge: f64,
    m: f64,
    cfg: &FlowConfig,
) -> Result<f64, ClassicalError> {
    let f = charged_field(field, e_charge, m, cfg.units);
    let solver = SolverConfig {
        step: cfg.step,
        n_steps: 1,
        newton_tol: cfg.newton_tol.min(1e-14),
        max_newton_iter: cfg.max_newton_iter,
    };
    // canonical packing z = (x^mu, p_mu)
    let to_upper = |z: &SVector<f64, 8>| -> SVector<f64, 8> {
        let mut w = *z;
        w[4] = -z[4];
        w
    };
    let step_map = |z: &SVector<f64, 8>| -> Result<SVector<f64, 8>, ClassicalError> {
        let w = crate::classical::integrate::midpoint_step(&f, &to_upper(z), cfg.step, &solver, 0)?;
        Ok(to_upper(&w))
    };
    let mut z0 = pack(point);
    z0[4] = -z0[4]; // lower p_0
    let eps = 1e-6 * (1.0 + z0.amax());
    let mut jac = [[0.0f64; 8]; 8];
    for col in 0..8 {
        let mut zp = z0;
        let mut zm = z0;
        zp[col] += eps;
        zm[col] -= eps;
        let fp = step_map(&zp)?;
        let fm = step_map(&zm)?;
        for row in 0..8 {
            jac[row][col] = (fp[row] - fm[row]) / (2.0 * eps);
        }
    }
    // Omega = [[0, I],[-I, 0]] in (x, p_lower) ordering
    let omega = |i: usize, j: usize| -> f64 {
        if i < 4 && j == i + 4 {
            1.0
        } else if i >= 4 && j == i - 4 {
            -1.0
        } else {
            0.0
        }
    };
    let mut worst: f64 = 0.0;
    for a in 0..8 {
        for b in 0..8 {
            let mut s = 0.0;
            for i in 0..8 {
                for j in 0..8 {
                    s += jac[i][a] * omega(i, j) * jac[j][b];
                }
            }
            worst = worst.max((s - omega(a, b)).abs());
        }
    }
    Ok(worst)
}

/// Integrate n steps forward then n backward; returns the return distance.
pub fn reversibility_defect(
    initial: PhasePoint,
    field: &EmField,
    e_charge: f64,
    m: f64,
    cfg: &FlowConfig,
) -> Result<f64, ClassicalError> {
    let f = charged_field(field, e_charge, m, cfg.units);
    let fwd = integrate(&f, pack(&initial), &cfg.solver())?;
    let mut back_cfg = cfg.solver();
    back_cfg.step = -cfg.step;
    let back = integrate(&f, *fwd.last().unwrap(), &back_cfg)?;
    Ok((back.last().unwrap() - pack(&initial)).amax())
}
