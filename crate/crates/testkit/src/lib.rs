//! Independent numerical oracles for the hr13 test suites.
//!
//! Everything here is deliberately written against plain arrays and maps,
//! with no dependency on the implementation crates it is used to check:
//! closed-form constant-field motion through a matrix exponential,
//! untruncated ladder algebra on occupation dictionaries, lattice mode sums,
//! and dense-quadrature statistics of Gaussian wavepackets.

pub mod constant_field;
pub mod expm;
pub mod gauss1d;
pub mod modesum;
pub mod osc;
