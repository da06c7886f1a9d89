//! Covariant classical Hamiltonian flows in the evolution parameter s.
//!
//! The phase space is the full 8-dimensional (x^mu, p^mu) with no on-shell
//! constraint imposed on initial data; flows are generated by covariant
//! Hamiltonians such as H_s = pi.pi/2m.  The integrator is fixed-step
//! implicit midpoint with Newton iteration (see [`integrate`]).

pub mod fields;
pub mod flows;
pub mod integrate;
pub mod twobody;

pub use fields::EmField;
pub use flows::{
    conventional_ht_crosscheck, free_flow_with_proper_time, lorentz_force_flow, p2_rate_prediction,
    pi_upper, reversibility_defect, symplectic_defect, CrosscheckResult, FlowConfig, HtSample,
};
pub use twobody::{
    frame_fix, two_body_evolve, two_body_reduce, two_body_restore, FrameFix, Potential,
    ReducedCoords, TwoBodyState, TwoBodyTrajectory,
};

use crate::minkowski::FourVec;
use thiserror::Error;

/// Covariant classical state: position and canonical momentum four-vectors
/// (both upper-index).  No on-shell constraint is intrinsic to the type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub x: FourVec,
    pub p: FourVec,
}

/// One trajectory sample; tau is filled only by flows that track proper time.
#[derive(Debug, Clone, Copy)]
pub struct TrajSample {
    pub s: f64,
    pub point: PhasePoint,
    pub tau: Option<f64>,
}

/// Integrator provenance and invariant-drift summary.
#[derive(Debug, Clone)]
pub struct TrajectoryMeta {
    pub integrator: String,
    pub step: f64,
    /// max_s |pi.pi(s) - pi.pi(0)| / max(|pi.pi(0)|, 1).
    pub pi2_rel_drift: f64,
    /// Relative drift of the Hamiltonian value along the flow.
    pub h_rel_drift: f64,
    pub p2_initial: f64,
    pub p2_final: f64,
}

/// Ordered s-history of a phase point.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub samples: Vec<TrajSample>,
    pub meta: TrajectoryMeta,
}

impl Trajectory {
    pub fn last_point(&self) -> &PhasePoint {
        &self.samples.last().expect("non-empty trajectory").point
    }
}

#[derive(Debug, Error)]
pub enum ClassicalError {
    #[error("implicit solve failed to converge at step {step} (residual {residual:.3e})")]
    NonConvergence { step: usize, residual: f64 },
    #[error("initial momentum is spacelike (p.p = {p2:.6e} > 0); proper time undefined")]
    SpacelikeMomentum { p2: f64 },
    #[error("initial p.p = {p2:.6e} inconsistent with -m_E^2 c^2 = {want:.6e}")]
    OffShellInitial { p2: f64, want: f64 },
    #[error("pi^0 = {pi0:.6e} reached non-positive values at step {step}")]
    EnergyAbort { step: usize, pi0: f64 },
    #[error("spacetime separation not spacelike (r.r = {r2:.6e} <= 0)")]
    NonSpacelikeSeparation { r2: f64 },
    #[error("exactly equal masses with j.j = {j2:.6e} <= 0: frame fixing infeasible")]
    EqualMassInfeasible { j2: f64 },
    #[error("mass must be positive and finite, got {0}")]
    NonPositiveMass(f64),
    #[error("step must be a nonzero finite number, got {0}")]
    NonPositiveStep(f64),
    #[error("potential evaluation failed at s = {s} (value {value})")]
    PotentialFailure { s: f64, value: f64 },
    #[error("frame-fixed input required: |r0| = {r0:.3e}, |q0| = {q0:.3e}")]
    NotFrameFixed { r0: f64, q0: f64 },
}
