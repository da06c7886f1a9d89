//! Numerical laboratory for the H_R(1,3) relativity symmetry.
//!
//! H_R(1,3) is the Heisenberg-Weyl algebra H(1,3) (generators Y_mu, E_mu and
//! a central M) extended by the Lorentz rotations J'_{mu nu}, with metric
//! eta = diag{-1,+1,+1,+1}.  The crate provides
//!
//! * [`algebra`] -- exact (rational) structure constants, Jacobi checks, and
//!   the c-parameterized contraction family toward the Galilean / H_R(3)
//!   brackets;
//! * [`reps`] -- concrete operator representations: a truncated four-mode
//!   oscillator realization of the Heisenberg sector, finite-dimensional
//!   (s_L, s_R) spin sectors, their products, Casimir invariants and
//!   composite (two-particle) representations;
//! * [`classical`] -- covariant Hamiltonian flows in an evolution parameter s
//!   on the 8-dimensional phase space (x^mu, p^mu): free motion, charged
//!   particle in an electromagnetic field, and the two-body reduction with
//!   frame fixing;
//! * [`quantum`] -- split-step spectral evolution of wavefunctions psi(x^mu)
//!   in s, Klein-Gordon-form stationary residuals, and the demonstration that
//!   position-operator actions spread P.P;
//! * [`field`] -- the zero-Newtonian-mass Fock construction: a discretized
//!   momentum lattice, bosonic ladder algebra, invariant normalization, and
//!   the scalar field operator on a truncated Fock space.
//!
//! Conventions: natural units hbar = c = 1 by default, with both kept as
//! explicit parameters ([`Units`]) so that contraction studies can vary c.

pub mod algebra;
pub mod classical;
pub mod field;
pub mod linop;
pub mod minkowski;
pub mod quantum;
pub mod reps;

/// Physical unit constants injected at evaluation time.
///
/// The algebra layer works with exact rationals and keeps `i*hbar*c` symbolic;
/// everything numerical receives its `hbar` and `c` from here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Units {
    pub hbar: f64,
    pub c: f64,
}

impl Default for Units {
    fn default() -> Self {
        Units { hbar: 1.0, c: 1.0 }
    }
}

impl Units {
    pub fn natural() -> Self {
        Self::default()
    }

    pub fn with_c(c: f64) -> Self {
        Units { hbar: 1.0, c }
    }
}
